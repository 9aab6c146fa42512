"""Enumerate the fully scoped DRSs consistent with a UDRS.

Every duplex condition contributes a restrictor box and a scope box; a
reading assigns each label a position in the resulting box tree such that
every subordination constraint holds geometrically: weak means inside or
equal, strict means properly inside, identity means the same box.
Conditional constraints are evaluated per candidate: a candidate that
realizes the antecedent's strict relation must also satisfy the consequent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .core import (
    CONDITIONAL, IDENTITY, STRICT, WEAK, ArgSlot, Condition, CycleError,
    DiscourseReferent, Label, Membership, Predicate, Quantifier,
    ReferentIntro, SubordConstraint, UDRS, UDRSError, closure,
    condition_slots, make_udrs,
)
from .delay import PendingRegistry
from . import plurals

TOP_BOX = ("top",)

_REL_DISPLAY = {"distribution": "dist"}


class UnresolvedSlot(UDRSError):
    pass


class InconsistentConstraints(UDRSError):
    pass


@dataclass(frozen=True)
class DRS:
    """One box: a universe of referents plus ground and duplex conditions."""

    referents: frozenset[DiscourseReferent]
    predicates: frozenset[tuple[str, tuple[DiscourseReferent, ...]]]
    memberships: frozenset[tuple[DiscourseReferent, DiscourseReferent]]
    duplexes: frozenset["DuplexCondition"]


@dataclass(frozen=True)
class DuplexCondition:
    rel: str
    res: DRS
    scope: DRS


@dataclass
class Scoping:
    """A placement of every label class into a box position."""

    placement: dict[Label, tuple]
    parents: dict[tuple, Optional[tuple]]

    def position(self, l: Label) -> tuple:
        return self.placement[l]

    def inside_or_equal(self, inner: tuple, outer: tuple) -> bool:
        p: Optional[tuple] = inner
        while p is not None:
            if p == outer:
                return True
            p = self.parents.get(p)
        return False

    def satisfies(self, c: SubordConstraint) -> bool:
        """Check one constraint geometrically against this placement."""
        if c.kind == CONDITIONAL:
            a, b = c.antecedent
            pa, pb = self.placement[a], self.placement[b]
            realized = pa != pb and self.inside_or_equal(pb, pa)
            if not realized:
                return True
            return self.inside_or_equal(self.placement[c.right], self.placement[c.left])
        pl, pr = self.placement[c.left], self.placement[c.right]
        if c.kind == IDENTITY:
            return pl == pr
        if c.kind == STRICT:
            return pl != pr and self.inside_or_equal(pr, pl)
        return self.inside_or_equal(pr, pl)  # WEAK


def _clone_for_expansion(u: UDRS) -> tuple[UDRS, PendingRegistry]:
    """Copy a UDRS with fresh argument-slot cells and a scratch registry."""
    registry = PendingRegistry()
    new_conds = []
    for cond in u.conds:
        if isinstance(cond, Predicate):
            cond = Predicate(cond.label, cond.rel, tuple(_copy_slot(a) for a in cond.args))
        elif isinstance(cond, Membership):
            cond = Membership(cond.label, _copy_slot(cond.element), _copy_slot(cond.group))
        new_conds.append(cond)
    clone = make_udrs(u.ls, u.subord, new_conds)
    for cond in new_conds:
        for slot in condition_slots(cond):
            if not slot.is_resolved and slot.pending_key is not None:
                registry.adopt(slot)
    return clone, registry


def _copy_slot(slot: ArgSlot) -> ArgSlot:
    new = ArgSlot(slot.referent)
    new.pending_key = slot.pending_key
    return new


def enumerate_scopings(u: UDRS) -> list[Scoping]:
    """All label placements consistent with the constraint set."""
    try:
        c = closure(u.subord)
    except CycleError as e:
        raise InconsistentConstraints(str(e)) from None

    mentioned = sorted(u.labels(), key=lambda l: l.uid)
    reps = {l: min(c.eq_class(l), key=lambda m: m.uid) for l in mentioned}
    duplexes = sorted((cond for cond in u.conds if isinstance(cond, Quantifier)),
                      key=lambda d: d.label.uid)

    positions: list[tuple] = [TOP_BOX]
    pinned: dict[Label, tuple] = {}
    for l in mentioned:
        if l.is_top:
            pinned[reps[l]] = TOP_BOX
    for d in duplexes:
        res_pos, scope_pos = ("res", d.label.uid), ("scope", d.label.uid)
        positions.extend((res_pos, scope_pos))
        for label, pos in ((d.res, res_pos), (d.scope, scope_pos)):
            r = reps[label]
            if pinned.get(r, pos) != pos:
                return []  # one class pinned to two distinct boxes
            pinned[r] = pos

    variables = []
    seen = set()
    duplex_reps = []
    for d in duplexes:
        r = reps[d.label]
        if r not in pinned and r not in seen:
            duplex_reps.append(r)
            seen.add(r)
    for l in mentioned:
        r = reps[l]
        if r not in pinned and r not in seen:
            variables.append(r)
            seen.add(r)

    constraints = list(u.subord)
    results: list[Scoping] = []
    assignment: dict[Label, tuple] = dict(pinned)

    def parents_for(assign: dict[Label, tuple]) -> Optional[dict]:
        parents: dict[tuple, Optional[tuple]] = {TOP_BOX: None}
        for d in duplexes:
            host = assign[reps[d.label]]
            parents[("res", d.label.uid)] = host
            parents[("scope", d.label.uid)] = host
        # every chain must reach the top box without looping
        for p in parents:
            chain = set()
            q: Optional[tuple] = p
            while q is not None:
                if q in chain:
                    return None
                chain.add(q)
                q = parents.get(q)
            if TOP_BOX not in chain:
                return None
        return parents

    def check(scoping: Scoping, assigned: set[Label]) -> bool:
        for c in constraints:
            labels = [c.left, c.right] + list(c.antecedent or ())
            if all(reps[l] in assigned for l in labels):
                full = Scoping({l: scoping.placement[reps[l]] for l in labels},
                               scoping.parents)
                if not full.satisfies(c):
                    return False
        return True

    def assign_rest(rest: list[Label], parents: dict) -> None:
        if not rest:
            placement = {l: assignment[reps[l]] for l in mentioned}
            results.append(Scoping(placement, dict(parents)))
            return
        var, tail = rest[0], rest[1:]
        for pos in positions:
            assignment[var] = pos
            partial = Scoping(assignment, parents)
            if check(partial, set(assignment)):
                assign_rest(tail, parents)
        del assignment[var]

    def assign_duplexes(rest: list[Label]) -> None:
        if not rest:
            parents = parents_for(assignment)
            if parents is None:
                return
            partial = Scoping(assignment, parents)
            if check(partial, set(assignment)):
                assign_rest(list(variables), parents)
            return
        var, tail = rest[0], rest[1:]
        for pos in positions:
            assignment[var] = pos
            assign_duplexes(tail)
        del assignment[var]

    assign_duplexes(list(duplex_reps))
    return results


def build_drs(u: UDRS, scoping: Scoping) -> DRS:
    """Materialize the box tree a scoping describes."""

    def box(pos: tuple) -> DRS:
        refs, preds, members, subs = set(), set(), set(), set()
        for cond in u.conds:
            if scoping.placement[cond.label] != pos:
                continue
            if isinstance(cond, ReferentIntro):
                refs.add(cond.dref)
            elif isinstance(cond, Predicate):
                preds.add((cond.rel, tuple(_ground(a) for a in cond.args)))
            elif isinstance(cond, Membership):
                members.add((_ground(cond.element), _ground(cond.group)))
            elif isinstance(cond, Quantifier):
                subs.add(DuplexCondition(
                    cond.rel,
                    box(("res", cond.label.uid)),
                    box(("scope", cond.label.uid))))
        return DRS(frozenset(refs), frozenset(preds), frozenset(members),
                   frozenset(subs))

    return box(TOP_BOX)


def _ground(slot: ArgSlot) -> DiscourseReferent:
    if not slot.is_resolved:
        raise UnresolvedSlot(f"argument slot {slot!r} is unresolved")
    return slot.referent


# --- Reading identity ----------------------------------------------------------

def _all_referents(d: DRS) -> set[DiscourseReferent]:
    out = set(d.referents)
    for rel, args in d.predicates:
        out.update(args)
    for e, g in d.memberships:
        out.update((e, g))
    for dup in d.duplexes:
        out |= _all_referents(dup.res) | _all_referents(dup.scope)
    return out


def _shape(d: DRS, naming: dict[DiscourseReferent, int]) -> tuple:
    return (
        tuple(sorted(naming[r] for r in d.referents)),
        tuple(sorted((rel, tuple(naming[a] for a in args))
                     for rel, args in d.predicates)),
        tuple(sorted((naming[e], naming[g]) for e, g in d.memberships)),
        tuple(sorted((dup.rel, _shape(dup.res, naming), _shape(dup.scope, naming))
                     for dup in d.duplexes)),
    )


def canonical_form(d: DRS) -> tuple:
    """Reading identity: minimal shape over all referent renamings."""
    refs = sorted(_all_referents(d), key=lambda r: r.uid)
    if not refs:
        return _shape(d, {})
    best = None
    for perm in itertools.permutations(range(len(refs))):
        naming = {r: perm[i] for i, r in enumerate(refs)}
        shape = _shape(d, naming)
        if best is None or shape < best:
            best = shape
    return best


def canonical_referent_names(d: DRS) -> dict[DiscourseReferent, str]:
    """Stable display names derived from the canonical renaming."""
    refs = sorted(_all_referents(d), key=lambda r: r.uid)
    if not refs:
        return {}
    best, best_perm = None, None
    for perm in itertools.permutations(range(len(refs))):
        naming = {r: perm[i] for i, r in enumerate(refs)}
        shape = _shape(d, naming)
        if best is None or shape < best:
            best, best_perm = shape, naming
    return {r: (f"X{i}" if r.sort == "group" else f"x{i}")
            for r, i in best_perm.items()}


# --- Public operations ----------------------------------------------------------

def enumerate_readings(u: UDRS, expand_pending: bool = False) -> list[DRS]:
    """Every fully scoped DRS the UDRS stands for.

    Pending argument slots are rejected unless expand_pending is set, in
    which case each undisambiguated plural branches into its collective and
    distributive readings.
    """
    pending = u.pending_slots()
    if pending:
        if not expand_pending:
            raise UnresolvedSlot(
                f"{len(pending)} unresolved argument slot(s); disambiguate first")
        return _expand_and_enumerate(u)
    readings: dict[tuple, DRS] = {}
    for scoping in enumerate_scopings(u):
        drs = build_drs(u, scoping)
        if check_binding(drs):
            continue  # unbound referent occurrences: not a licensed reading
        readings.setdefault(canonical_form(drs), drs)
    return list(readings.values())


def _expand_and_enumerate(u: UDRS) -> list[DRS]:
    probe, probe_registry = _clone_for_expansion(u)
    keys = probe_registry.unresolved()
    if not keys:
        raise UnresolvedSlot("pending slot carries no key; cannot expand")
    key = keys[0]
    readings: dict[tuple, DRS] = {}
    for branch in (plurals.pl_dis_collective, plurals.pl_dis_distributive):
        clone, registry = _clone_for_expansion(u)
        target = plurals.target_for(clone, key.np_l_max, key.np_l_min)
        branched = branch(clone, target, registry)
        for drs in enumerate_readings(branched, expand_pending=True):
            readings.setdefault(canonical_form(drs), drs)
    return list(readings.values())


def count_readings(u: UDRS, expand_pending: bool = False) -> int:
    return len(enumerate_readings(u, expand_pending))


def check_binding(d: DRS) -> list[str]:
    """Verify every referent occurrence is accessible from its box.

    Accessible means: declared in the same box, an ancestor box, or, for a
    duplex's scope, the duplex's restrictor.  Empty list means ok.
    """
    violations: list[str] = []

    def walk(box: DRS, accessible: frozenset[DiscourseReferent]) -> None:
        here = accessible | box.referents
        for rel, args in sorted(box.predicates,
                                key=lambda p: (p[0], [a.uid for a in p[1]])):
            for a in args:
                if a not in here:
                    violations.append(f"{rel}: referent {a} not accessible")
        for e, g in sorted(box.memberships, key=lambda m: (m[0].uid, m[1].uid)):
            for a in (e, g):
                if a not in here:
                    violations.append(f"membership: referent {a} not accessible")
        for dup in box.duplexes:
            walk(dup.res, here)
            walk(dup.scope, here | dup.res.referents)

    walk(d, frozenset())
    return violations


# --- Rendering -------------------------------------------------------------------

def _named_shape(d: DRS, names: dict[DiscourseReferent, str]) -> tuple:
    return (
        tuple(sorted(names[r] for r in d.referents)),
        tuple(sorted((rel, tuple(names[a] for a in args))
                     for rel, args in d.predicates)),
        tuple(sorted((names[e], names[g]) for e, g in d.memberships)),
        tuple(sorted((dup.rel, _named_shape(dup.res, names), _named_shape(dup.scope, names))
                     for dup in d.duplexes)),
    )


def render_drs(d: DRS) -> str:
    names = canonical_referent_names(d)
    return "\n".join(_box_lines(d, names))


def _box_lines(d: DRS, names: dict[DiscourseReferent, str]) -> list[str]:
    header = " ".join(sorted(names[r] for r in d.referents))
    body: list[list[str]] = []
    for rel, args in sorted(d.predicates, key=lambda p: (p[0], [names[a] for a in p[1]])):
        body.append([f"{rel}({', '.join(names[a] for a in args)})"])
    for e, g in sorted(d.memberships, key=lambda m: (names[m[0]], names[m[1]])):
        body.append([f"{names[e]} in {names[g]}"])
    for dup in sorted(d.duplexes, key=lambda x: (x.rel, _named_shape(x.res, names),
                                                 _named_shape(x.scope, names))):
        res_lines = _box_lines(dup.res, names)
        scope_lines = _box_lines(dup.scope, names)
        rel = _REL_DISPLAY.get(dup.rel, dup.rel)
        body.append(_join_duplex(res_lines, f"={rel}=>", scope_lines))

    width = max([len(header)] + [len(l) for block in body for l in block] + [1])
    top = "+" + "-" * (width + 2) + "+"
    out = [top, f"| {header.ljust(width)} |", "+" + "-" * (width + 2) + "+"]
    for block in body:
        for line in block:
            out.append(f"| {line.ljust(width)} |")
    out.append(top)
    return out


def _join_duplex(res: list[str], connector: str, scope: list[str]) -> list[str]:
    height = max(len(res), len(scope))
    res += [" " * len(res[0])] * (height - len(res))
    scope += [" " * len(scope[0])] * (height - len(scope))
    mid = height // 2
    lines = []
    for i in range(height):
        joint = connector if i == mid else " " * len(connector)
        lines.append(f"{res[i]} {joint} {scope[i]}")
    return lines


def drs_to_json(d: DRS) -> dict:
    names = canonical_referent_names(d)

    def box(b: DRS) -> dict:
        conds: list[dict] = []
        for rel, args in sorted(b.predicates, key=lambda p: (p[0], [names[a] for a in p[1]])):
            conds.append({"type": "pred", "rel": rel,
                          "args": [names[a] for a in args]})
        for e, g in sorted(b.memberships, key=lambda m: (names[m[0]], names[m[1]])):
            conds.append({"type": "member", "element": names[e], "group": names[g]})
        for dup in sorted(b.duplexes, key=lambda x: (x.rel, _named_shape(x.res, names),
                                                     _named_shape(x.scope, names))):
            conds.append({"type": "duplex", "rel": _REL_DISPLAY.get(dup.rel, dup.rel),
                          "res": box(dup.res), "scope": box(dup.scope)})
        return {"referents": sorted(names[r] for r in b.referents),
                "conditions": conds}

    return box(d)
