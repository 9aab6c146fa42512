"""Delayed argument-slot resolution (dref_res).

A verb cannot know which discourse referent fills an argument slot until the
argument NP's own subordination pattern classifies it: identity of its
distinguished labels means not scope bearing (take the referent at l_max),
strict subordination means scope bearing (take the restrictor referent), and
a weak-only pattern means the NP is an underspecified plural, so resolution
blocks until plural disambiguation supplies the referent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .core import (
    UDRS, ArgSlot, DiscourseReferent, Label, Quantifier, UDRSError, closure,
)


class MalformedNP(UDRSError):
    pass


class UnknownKey(UDRSError):
    pass


class ConflictingResolution(UDRSError):
    pass


@dataclass(frozen=True)
class PendingKey:
    np_l_max: Label
    np_l_min: Label

    def __repr__(self) -> str:
        return f"dref_res({self.np_l_max},{self.np_l_min})"


PENDING = "pending"


def dref_res(np_udrs: UDRS) -> Union[DiscourseReferent, str]:
    """Resolve an argument NP's UDRS to a referent, or return PENDING.

    Works on the NP's own local constraint set, which later combination
    steps never touch, so the outcome is stable by construction.
    """
    l_max, l_min = np_udrs.ls.l_max, np_udrs.ls.l_min
    c = closure(np_udrs.subord)
    if c.identical(l_max, l_min):
        # not scope bearing: referent introduced at the maximal label
        for label in c.eq_class(l_max):
            intro = np_udrs.find_intro(label)
            if intro is not None:
                return intro.dref
        raise MalformedNP(f"no referent introduced at {l_max}")
    if c.strictly(l_max, l_min):
        # scope bearing: referent sits in the quantifier's restrictor
        for cond in np_udrs.conds:
            if isinstance(cond, Quantifier) and c.identical(cond.label, l_max):
                intro = np_udrs.find_intro(cond.res)
                if intro is not None:
                    return intro.dref
                raise MalformedNP(f"no referent at restrictor {cond.res}")
        raise MalformedNP(f"strict NP without duplex at {l_max}")
    if c.weakly(l_max, l_min):
        return PENDING
    raise MalformedNP(f"no subordination pattern between {l_max} and {l_min}")


@dataclass
class _Entry:
    slot: ArgSlot
    resolved_to: Optional[DiscourseReferent] = None


class PendingRegistry:
    """Derivation-local store of argument slots awaiting a referent.

    Slots are registered when a verb entry is instantiated, keyed by the
    argument NP's distinguished labels once the slot is linked to its NP,
    and consumed when plural disambiguation calls resolve_pending.
    """

    def __init__(self):
        self._by_key: dict[PendingKey, _Entry] = {}
        self._order: list[PendingKey] = []

    def link(self, slot: ArgSlot, np_udrs: UDRS) -> Union[DiscourseReferent, PendingKey]:
        """Attach a slot to its argument NP and attempt resolution.

        Returns the referent if dref_res resolved the slot, otherwise the
        registered key the slot now waits on.
        """
        outcome = dref_res(np_udrs)
        if outcome is not PENDING:
            slot.referent = outcome
            return outcome
        key = PendingKey(np_udrs.ls.l_max, np_udrs.ls.l_min)
        if key in self._by_key and self._by_key[key].slot is not slot:
            raise ConflictingResolution(f"second slot registered for {key}")
        slot.pending_key = key
        if key not in self._by_key:
            self._by_key[key] = _Entry(slot)
            self._order.append(key)
        return key

    def adopt(self, slot: ArgSlot) -> None:
        """Register an already-keyed pending slot (e.g. from a parsed document)."""
        key = slot.pending_key
        if key is None:
            raise UnknownKey("slot carries no pending key")
        if key not in self._by_key:
            self._by_key[key] = _Entry(slot)
            self._order.append(key)

    def resolve_pending(self, key: PendingKey, dref: DiscourseReferent) -> None:
        entry = self._by_key.get(key)
        if entry is None:
            raise UnknownKey(str(key))
        if entry.resolved_to is not None:
            if entry.resolved_to == dref:
                return  # idempotent re-resolution
            raise ConflictingResolution(
                f"{key} already resolved to {entry.resolved_to}, got {dref}")
        entry.resolved_to = dref
        entry.slot.referent = dref

    def lookup(self, l_max: Label, l_min: Label) -> Optional[PendingKey]:
        key = PendingKey(l_max, l_min)
        return key if key in self._by_key else None

    def unresolved(self) -> list[PendingKey]:
        """Keys still waiting, in registration order."""
        return [k for k in self._order if self._by_key[k].resolved_to is None]

    def all_keys(self) -> list[PendingKey]:
        """Every key ever registered, in registration order."""
        return list(self._order)
