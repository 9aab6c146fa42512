"""Underspecified discourse representation structures for a small English
fragment: principle-based construction, monotonic plural disambiguation, and
brute-force enumeration of fully scoped readings."""

from .core import (
    CONDITIONAL, DISTRIBUTION, EVERY, GROUP, IDENTITY, INDIVIDUAL, STRICT,
    WEAK, ArgSlot, Condition, CycleError, DiscourseReferent, Label, LS,
    Membership, Predicate, Quantifier, ReferentIntro, SubordConstraint, UDRS,
    UDRSError, Violation, check_udrs, closure, conditional, fresh_label,
    fresh_referent, identity, make_udrs, merge, strict, top_label, weak,
)
from .delay import (
    ConflictingResolution, MalformedNP, PENDING, PendingKey, PendingRegistry,
    UnknownKey, dref_res,
)
from .lexicon import Lexicon, Sign, SubcatSlot, UnknownWord, np_pattern
from .grammar import (
    SEP, DerivationNode, ParseFailure, parse, tokenize, yield_tokens,
)
from .principles import (
    CombinatorResult, Derivation, SemanticsError, SubcatMismatch,
    combine_coord, combine_functional, combine_head_comp, combine_head_subj,
    interpret,
)
from .plurals import (
    COLLECTIVE, DISTRIBUTIVE, UNKNOWN, AlreadyDisambiguated, KnowledgeRules,
    NotPlural, PluralTarget, ReadingDecision, decide, pl_dis_collective,
    pl_dis_distributive, pl_dis_trivial, target_for,
)
from .readings import (
    DRS, DuplexCondition, InconsistentConstraints, Scoping, UnresolvedSlot,
    build_drs, canonical_form, check_binding, count_readings,
    enumerate_readings, enumerate_scopings, render_drs,
)
from .serialize import from_json, render_text, to_dot, to_json, to_json_str
from .cli import Session, build_session

__all__ = [name for name in dir() if not name.startswith("_")]
