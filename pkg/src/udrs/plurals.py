"""Monotonic collective/distributive disambiguation of plural NPs.

An underspecified plural holds a weak subordination between its
distinguished labels.  Disambiguation only ever adds: the collective
reading strengthens the weak relation to identity, the distributive
reading adds a distribution duplex whose restrictor introduces a fresh
individual that is a member of the group.  Either way the delayed argument
slot of the verb is then resolved.

What counts as "enough information" is a pluggable rule registry: lexical
directives, user overrides and continuation rules. Genuine pragmatic
inference is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    DISTRIBUTION, GROUP, ArgSlot, Condition, DiscourseReferent, Label,
    Membership, Predicate, Quantifier, ReferentIntro, SubordConstraint, UDRS,
    UDRSError, closure, fresh_label, fresh_referent, identity, make_udrs,
    strict,
)
from .delay import PendingKey, PendingRegistry

COLLECTIVE = "collective"
DISTRIBUTIVE = "distributive"
UNKNOWN = "unknown"


class NotPlural(UDRSError):
    pass


class AlreadyDisambiguated(UDRSError):
    pass


@dataclass(frozen=True)
class PluralTarget:
    l_max: Label
    l_min: Label
    group: DiscourseReferent


@dataclass(frozen=True)
class ReadingDecision:
    target: PluralTarget
    verdict: str  # COLLECTIVE | DISTRIBUTIVE | UNKNOWN


def target_for(u: UDRS, l_max: Label, l_min: Label) -> PluralTarget:
    intro = u.find_intro(l_max)
    if intro is None or intro.dref.sort != GROUP:
        raise NotPlural(f"no group referent introduced at {l_max}")
    return PluralTarget(l_max, l_min, intro.dref)


def _check_target(u: UDRS, target: PluralTarget) -> None:
    intro = u.find_intro(target.l_max)
    if intro is None or intro.dref.sort != GROUP:
        raise NotPlural(f"no group referent introduced at {target.l_max}")
    c = closure(u.subord)
    if c.identical(target.l_max, target.l_min) or c.strictly(target.l_max, target.l_min):
        raise AlreadyDisambiguated(f"{target.l_max}/{target.l_min} already classified")
    if not c.weakly(target.l_max, target.l_min):
        raise NotPlural(f"no weak subordination between {target.l_max} and {target.l_min}")


def _resolve(registry: Optional[PendingRegistry], target: PluralTarget,
             dref: DiscourseReferent) -> None:
    if registry is None:
        return
    key = registry.lookup(target.l_max, target.l_min)
    if key is not None:
        registry.resolve_pending(key, dref)


def pl_dis_collective(u: UDRS, target: PluralTarget,
                      registry: Optional[PendingRegistry] = None) -> UDRS:
    """Strengthen the plural's weak subordination to identity."""
    _check_target(u, target)
    out = make_udrs(u.ls, u.subord | {identity(target.l_max, target.l_min)}, u.conds)
    _resolve(registry, target, target.group)
    return out


def pl_dis_distributive(u: UDRS, target: PluralTarget,
                        registry: Optional[PendingRegistry] = None) -> UDRS:
    """Add a distribution duplex quantifying over members of the group.

    The added strict subordination turns the NP scope bearing, which also
    activates any conditional ceiling constraint waiting on it.
    """
    _check_target(u, target)
    l11 = fresh_label()
    x = fresh_referent()
    added: list[Condition] = [
        Quantifier(target.l_max, DISTRIBUTION, l11, target.l_min),
        ReferentIntro(l11, x),
        Membership(l11, ArgSlot(x), ArgSlot(target.group)),
    ]
    out = make_udrs(
        u.ls,
        u.subord | {strict(target.l_max, l11), strict(target.l_max, target.l_min)},
        u.conds | set(added))
    _resolve(registry, target, x)
    return out


def pl_dis_trivial(u: UDRS) -> UDRS:
    return u


# --- Knowledge interface -------------------------------------------------------

class KnowledgeRules:
    """Rule registry deciding when a plural reading is forced.

    Sources, in priority order: explicit per-NP overrides (CLI), subject
    rules keyed by verb relation (lexical directives like "gathered"), and
    continuation rules that fire once a predicate appears anywhere in the
    accumulated discourse.
    """

    def __init__(self):
        self.subject_rules: dict[str, str] = {}
        self.continuation_rules: dict[str, str] = {}
        self.overrides: dict[tuple[Label, Label], str] = {}

    def add_subject_rules(self, rels, verdict: str) -> None:
        for rel in rels:
            self.subject_rules.setdefault(rel, verdict)

    def set_override(self, target: PluralTarget, verdict: str) -> None:
        self.overrides[(target.l_max, target.l_min)] = verdict

    @classmethod
    def from_file(cls, path: str) -> "KnowledgeRules":
        rules = cls()
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                fields = line.split()
                if (len(fields) == 4 and fields[0] == "verb"
                        and fields[2] == "subject"
                        and fields[3] in (COLLECTIVE, DISTRIBUTIVE)):
                    rules.subject_rules[fields[1]] = fields[3]
                elif (len(fields) == 3 and fields[0] == "continuation"
                        and fields[2] in (COLLECTIVE, DISTRIBUTIVE)):
                    rules.continuation_rules[fields[1]] = fields[2]
                else:
                    raise UDRSError(f"{path}:{lineno}: cannot parse rule {line!r}")
        return rules


def decide(context: UDRS, target: PluralTarget,
           rules: Optional[KnowledgeRules] = None) -> ReadingDecision:
    """Consult the configured knowledge sources; default to UNKNOWN."""
    if rules is None:
        return ReadingDecision(target, UNKNOWN)
    override = rules.overrides.get((target.l_max, target.l_min))
    if override:
        return ReadingDecision(target, override)
    key = PendingKey(target.l_max, target.l_min)
    rels_present = set()
    for cond in context.conds:
        if not isinstance(cond, Predicate):
            continue
        rels_present.add(cond.rel)
        verdict = rules.subject_rules.get(cond.rel)
        if (verdict and cond.args and not cond.args[0].is_resolved
                and cond.args[0].pending_key == key):
            return ReadingDecision(target, verdict)
    for rel, verdict in sorted(rules.continuation_rules.items()):
        if rel in rels_present:
            return ReadingDecision(target, verdict)
    return ReadingDecision(target, UNKNOWN)


def apply_pending_decisions(
        u: UDRS, registry: PendingRegistry, rules: Optional[KnowledgeRules],
) -> tuple[UDRS, set[SubordConstraint], set[Condition]]:
    """Disambiguate every pending plural the knowledge source can decide.

    Returns the (possibly unchanged) UDRS plus the constraint and condition
    deltas, for tracing and monotonicity checks.
    """
    constraint_delta: set[SubordConstraint] = set()
    cond_delta: set[Condition] = set()
    progress = True
    while progress:
        progress = False
        for key in registry.unresolved():
            try:
                target = target_for(u, key.np_l_max, key.np_l_min)
            except NotPlural:
                continue  # slot pending on something this UDRS does not contain
            decision = decide(u, target, rules)
            if decision.verdict == UNKNOWN:
                continue
            before = u
            if decision.verdict == COLLECTIVE:
                u = pl_dis_collective(u, target, registry)
            else:
                u = pl_dis_distributive(u, target, registry)
            constraint_delta |= u.subord - before.subord
            cond_delta |= u.conds - before.conds
            progress = True
    return u, constraint_delta, cond_delta
