"""Construction combinators: fold a derivation tree into a root sign.

Every combination unions the daughters' conditions and constraints and may
add a bounded delta: one weak constraint tying the verb label below the
argument's minimal label (the closed-formula step), and for scope-bearing
or potentially scope-bearing arguments one conditional constraint capping
them at the clause's ceiling label.  Everything is add-only; nothing is ever
rewritten or removed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .core import (
    Condition, Label, LS, Predicate, SubordConstraint, UDRS, UDRSError,
    check_udrs, conditional, identity, make_udrs, merge, top_label, weak,
)
from .delay import PendingKey, PendingRegistry
from .grammar import (
    COORD, FUNCTIONAL, HEAD_COMP, HEAD_SUBJ, LEXICAL, SILENT, DerivationNode,
)
from .lexicon import (
    COMP, PLURAL, QUANT, Lexicon, Sign, SubcatSlot, entry_complementizer,
    entry_noun,
)
from . import plurals


class SubcatMismatch(UDRSError):
    pass


class SemanticsError(UDRSError):
    pass


@dataclass
class Derivation:
    """Shared state of one derivation: top label, pending slots, knowledge."""

    lexicon: Lexicon
    top: Label
    registry: PendingRegistry
    rules: "plurals.KnowledgeRules"

    @classmethod
    def new(cls, lexicon: Optional[Lexicon] = None,
            rules: Optional["plurals.KnowledgeRules"] = None) -> "Derivation":
        lexicon = lexicon or Lexicon.default()
        rules = rules or plurals.KnowledgeRules()
        rules.add_subject_rules(lexicon.collective_only_rels(), plurals.COLLECTIVE)
        return cls(lexicon, top_label(), PendingRegistry(), rules)


@dataclass
class CombinatorResult:
    sign: Sign
    introduced_constraints: frozenset[SubordConstraint]
    introduced_conditions: frozenset[Condition] = frozenset()


def _saturate(slot: SubcatSlot, arg: UDRS) -> None:
    slot.saturated_with = arg


def _result_cat(head: Sign) -> str:
    if head.cat == "det":
        return "np"
    if head.cat == "v" and head.next_comp_slot() is None:
        return "vp"
    return head.cat


def _combine_argument(head: Sign, comp: Sign, slot: SubcatSlot,
                      ctx: Derivation) -> CombinatorResult:
    """Clauses I-V plus argument-slot linking, for one NP argument."""
    if comp.cat != "np" or not comp.saturated:
        raise SubcatMismatch(f"expected saturated NP, got {comp.cat}")
    if slot.agr and comp.agr and slot.agr != comp.agr:
        raise SubcatMismatch(f"agreement mismatch: {slot.agr} vs {comp.agr}")

    subord, conds = merge(head.udrs, comp.udrs)          # I, II
    ls = head.udrs.ls                                    # III
    delta: list[SubordConstraint] = [
        weak(comp.udrs.ls.l_min, head.udrs.ls.l_min)]    # IV: verb below arg min
    if comp.head_type in (QUANT, PLURAL):                # V: conditional ceiling
        delta.append(conditional(comp.udrs.ls.l_max, comp.udrs.ls.l_min,
                                 head.udrs.ls.l_max, comp.udrs.ls.l_max))
    u = make_udrs(ls, subord | set(delta), conds)

    _saturate(slot, comp.udrs)
    outcome = ctx.registry.link(slot.arg, comp.udrs)     # dref_res attempt

    cond_delta: frozenset[Condition] = frozenset()
    if (isinstance(outcome, PendingKey) and head.collective_subject
            and slot.role == "subj"):
        # lexical directive (e.g. "gathered"): the subject must be collective
        target = plurals.target_for(u, outcome.np_l_max, outcome.np_l_min)
        before = u
        u = plurals.pl_dis_collective(u, target, ctx.registry)
        delta.extend(u.subord - before.subord)

    sign = replace(head, cat=_result_cat(head), udrs=u)
    return CombinatorResult(sign, frozenset(delta), cond_delta)


def combine_head_comp(head: Sign, comp: Sign, ctx: Derivation) -> CombinatorResult:
    """Saturate the head's next complement slot with comp.

    Determiner-noun combination only links the noun's predicate into the
    determiner's structure; verb-argument combination applies the full
    clause set; clausal complements contribute the cross-clause cap that
    keeps embedded material below the matrix verb.
    """
    slot = head.next_comp_slot()
    if slot is None:
        raise SubcatMismatch(f"{head.cat} sign has no open complement slot")

    if slot.expects == "noun":
        return _combine_det_noun(head, comp, slot)

    if slot.expects == "clause":
        if comp.cat != "cs":
            raise SubcatMismatch(f"expected complementizer clause, got {comp.cat}")
        subord, conds = merge(head.udrs, comp.udrs)
        cap = weak(head.udrs.ls.l_min, comp.udrs.ls.l_max)
        u = make_udrs(head.udrs.ls, subord | {cap}, conds)
        _saturate(slot, comp.udrs)
        return CombinatorResult(replace(head, cat=_result_cat(head), udrs=u),
                                frozenset([cap]))

    return _combine_argument(head, comp, slot, ctx)


def _combine_det_noun(det: Sign, noun: Sign, slot: SubcatSlot) -> CombinatorResult:
    if noun.cat != "n":
        raise SubcatMismatch(f"determiner expects a noun, got {noun.cat}")
    if slot.agr and noun.agr and slot.agr != noun.agr:
        raise SubcatMismatch(f"agreement mismatch: {slot.agr} det, {noun.agr} noun")
    noun = bind_noun(noun, slot)
    subord, conds = merge(det.udrs, noun.udrs)
    u = make_udrs(det.udrs.ls, subord, conds)
    _saturate(slot, noun.udrs)
    return CombinatorResult(replace(det, cat="np", udrs=u), frozenset())


def bind_noun(noun: Sign, slot: SubcatSlot) -> Sign:
    """Coindex the noun's predicate with the determiner's label and referent."""
    pred = next(c for c in noun.udrs.conds if isinstance(c, Predicate))
    if pred.label == slot.bind_label:
        return noun  # already instantiated against this determiner
    bound = entry_noun(pred.rel, noun.word, noun.agr or "sg",
                       label=slot.bind_label, dref=slot.bind_dref)
    return bound


def combine_head_subj(head: Sign, subj: Sign, ctx: Derivation) -> CombinatorResult:
    """Same clauses as complement combination, on the nominative slot."""
    slot = head.subj_slot()
    if slot is None:
        raise SubcatMismatch(f"{head.cat} sign has no open subject slot")
    result = _combine_argument(head, subj, slot, ctx)
    result.sign.cat = "s"
    return result


def combine_functional(func: Sign, comp: Sign, ctx: Derivation) -> CombinatorResult:
    """Functional head: adopt the complement's distinguished labels.

    The complement clause's maximal label becomes the scope ceiling: the
    root silent complementizer identifies it with the discourse top and
    closes the sign (every mentioned label goes below top); "that" keeps it
    as a fresh embedded ceiling for the matrix verb to cap.
    """
    if func.head_type != COMP:
        raise SubcatMismatch(f"functional head expected, got {func.head_type}")
    if comp.cat != "s":
        raise SubcatMismatch(f"complementizer expects a finite clause, got {comp.cat}")
    slot = func.next_comp_slot()
    ceiling = comp.udrs.ls.l_max
    subord = set(comp.udrs.subord)
    delta = [weak(ceiling, comp.udrs.ls.l_min)]  # ceiling bounds the clause's min
    is_root = func.word is None
    if is_root:
        delta.append(identity(ceiling, ctx.top))
        mentioned = comp.udrs.labels() | {ceiling}
        for l in sorted(mentioned, key=lambda l: l.uid):
            if not l.is_top:
                delta.append(weak(ctx.top, l))
    u = make_udrs(comp.udrs.ls, subord | set(delta), comp.udrs.conds)
    _saturate(slot, comp.udrs)
    sign = replace(func, cat="s" if is_root else "cs", udrs=u)
    return CombinatorResult(sign, frozenset(delta))


def combine_head_filler(head: Sign, filler: Sign) -> CombinatorResult:
    """Head-filler combination: inherit everything from the head daughter only.

    Declared for completeness; the fragment grammar contains no fillers, so
    nothing reaches this combinator.
    """
    return CombinatorResult(replace(head), frozenset())


def combine_coord(left: Sign, right: Sign, ctx: Derivation) -> CombinatorResult:
    """Discourse sequencing, the designated site for plural disambiguation."""
    subord, conds = merge(left.udrs, right.udrs)
    delta: set[SubordConstraint] = set()
    for s in (left, right):
        l_max = s.udrs.ls.l_max
        if not l_max.is_top:
            delta.add(weak(ctx.top, l_max))
    u = make_udrs(LS(ctx.top, ctx.top), subord | delta, conds)
    u, c_delta, cond_delta = plurals.apply_pending_decisions(u, ctx.registry, ctx.rules)
    sign = Sign("disc", "coord", (), u)
    return CombinatorResult(sign, frozenset(delta | c_delta), frozenset(cond_delta))


def empty_discourse(ctx: Derivation) -> Sign:
    return Sign("disc", "coord", (), make_udrs(LS(ctx.top, ctx.top)))


def interpret(tree: DerivationNode, ctx: Optional[Derivation] = None) -> Sign:
    """Interpret a derivation bottom-up into its root sign.

    Fills each node's sign and introduced-constraint fields; validates the
    result's semilattice invariants.
    """
    if ctx is None:
        ctx = Derivation.new()
    sign = _interpret(tree, ctx)
    violations = check_udrs(sign.udrs)
    if violations:
        raise SemanticsError("; ".join(v.detail for v in violations))
    return sign


def _interpret(node: DerivationNode, ctx: Derivation) -> Sign:
    if node.construction == LEXICAL:
        if node.word == SILENT:
            node.sign = entry_complementizer(None)
        else:
            node.sign = ctx.lexicon.sign(node.word)
        return node.sign

    head = _interpret(node.head, ctx)

    if node.construction == HEAD_COMP:
        slot = head.next_comp_slot()
        if (slot is not None and slot.expects == "noun"
                and node.nonhead.construction == LEXICAL):
            # instantiate the noun against the determiner's coindexation
            entry = ctx.lexicon.entry(node.nonhead.word)
            node.nonhead.sign = entry_noun(
                entry.rel, entry.word, "pl" if entry.plural else "sg",
                label=slot.bind_label, dref=slot.bind_dref)
            comp = node.nonhead.sign
        else:
            comp = _interpret(node.nonhead, ctx)
        result = combine_head_comp(head, comp, ctx)
    elif node.construction == HEAD_SUBJ:
        subj = _interpret(node.nonhead, ctx)
        result = combine_head_subj(head, subj, ctx)
    elif node.construction == FUNCTIONAL:
        comp = _interpret(node.nonhead, ctx)
        result = combine_functional(head, comp, ctx)
    elif node.construction == COORD:
        right = _interpret(node.nonhead, ctx)
        result = combine_coord(head, right, ctx)
    else:
        raise SemanticsError(f"unknown construction {node.construction!r}")

    node.sign = result.sign
    node.introduced = tuple(result.introduced_constraints)
    return result.sign
