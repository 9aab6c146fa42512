import random

import pytest

from udrs.core import (
    CycleError, LS, Predicate, ArgSlot, check_udrs, closure, conditional,
    fresh_label, fresh_referent, identity, make_udrs, merge, strict, top_label,
    weak,
)


def test_fresh_labels_distinct():
    a, b = fresh_label(), fresh_label()
    assert a != b


def test_fresh_labels_distinct_at_scale():
    labels = [fresh_label() for _ in range(1000)]
    assert len(set(labels)) == 1000


def test_fresh_label_is_not_top():
    assert not fresh_label().is_top
    assert top_label().is_top


def test_concurrent_derivations_never_collide_on_identifiers():
    import threading
    buckets = [[] for _ in range(8)]

    def work(bucket):
        bucket.extend(fresh_label() for _ in range(500))

    threads = [threading.Thread(target=work, args=(b,)) for b in buckets]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    all_labels = [l for b in buckets for l in b]
    assert len(set(all_labels)) == len(all_labels)


class TestClosure:
    def test_weak_transitivity(self):
        a, b, c = (fresh_label() for _ in range(3))
        derived = closure([weak(a, b), weak(b, c)])
        assert derived.weakly(a, c)
        assert not derived.strictly(a, c)

    def test_identity_substitution_composes_with_strict(self):
        a, b, c = (fresh_label() for _ in range(3))
        derived = closure([strict(a, b), identity(b, c)])
        assert derived.strictly(a, c)

    def test_strict_weak_composition_is_strict(self):
        a, b, c = (fresh_label() for _ in range(3))
        derived = closure([strict(a, b), weak(b, c)])
        assert derived.strictly(a, c)

    def test_conditional_fires_at_fixpoint(self):
        # {a > b, (a > b => t >= a)}: the antecedent holds, so t >= a joins
        a, b, t = fresh_label(), fresh_label(), fresh_label()
        derived = closure([strict(a, b), conditional(a, b, t, a)])
        assert derived.weakly(t, a)
        assert len(derived.activated) == 1

    def test_conditional_stays_inert_without_antecedent(self):
        a, b, t = fresh_label(), fresh_label(), fresh_label()
        derived = closure([weak(a, b), conditional(a, b, t, a)])
        assert not derived.weakly(t, a)
        assert derived.activated == []

    def test_chained_conditionals_iterate(self):
        # first activation derives the strict relation the second one waits on
        a, b, c, t = (fresh_label() for _ in range(4))
        derived = closure([
            strict(a, b),
            conditional(a, b, c, a),       # activates: c >= a
            strict(c, b),
            conditional(c, a, t, c),       # needs c > a: not derivable
        ])
        assert derived.weakly(c, a)
        assert not derived.weakly(t, c)

    def test_strict_cycle_raises(self):
        a, b = fresh_label(), fresh_label()
        with pytest.raises(CycleError):
            closure([strict(a, b), strict(b, a)])

    def test_strict_against_identity_raises(self):
        a, b = fresh_label(), fresh_label()
        with pytest.raises(CycleError):
            closure([strict(a, b), identity(a, b)])

    def test_reflexivity(self):
        a, b = fresh_label(), fresh_label()
        derived = closure([weak(a, b)])
        assert derived.weakly(a, a)
        assert derived.weakly(b, b)

    def test_idempotence(self):
        rng = random.Random(11)
        for _ in range(50):
            labels = [fresh_label() for _ in range(rng.randint(2, 6))]
            constraints = []
            for _ in range(rng.randint(1, 8)):
                kind = rng.choice("wwsi")
                a, b = rng.sample(labels, 2)
                ctor = {"w": weak, "s": strict, "i": identity}[kind]
                constraints.append(ctor(a, b))
            try:
                once = closure(constraints)
            except CycleError:
                continue
            twice = closure(once.to_constraints())
            assert set(once.relations()) == set(twice.relations())

    def test_identity_collapse_mirrors_relations(self):
        a, b, c, d = (fresh_label() for _ in range(4))
        derived = closure([identity(a, b), weak(c, a), strict(b, d)])
        # every relation mentioning a has the counterpart mentioning b
        assert derived.weakly(c, b) and derived.weakly(c, a)
        assert derived.strictly(a, d) and derived.strictly(b, d)


class TestCheckUdrs:
    def test_empty_with_top_is_ok(self):
        t = top_label()
        u = make_udrs(LS(t, t))
        assert check_udrs(u) == []

    def test_strict_cycle_reported_not_raised(self):
        a, b = fresh_label(), fresh_label()
        u = make_udrs(LS(a, b), [strict(a, b), strict(b, a)])
        violations = check_udrs(u)
        assert [v.kind for v in violations] == ["cycle"]

    def test_undominated_label_reported(self):
        t, a, b = top_label(), fresh_label(), fresh_label()
        u = make_udrs(LS(t, a), [weak(t, a), weak(b, a)])
        assert any(v.kind == "top" for v in check_udrs(u))

    def test_condition_label_outside_domain_reported(self):
        t, a, orphan = top_label(), fresh_label(), fresh_label()
        x = fresh_referent()
        u = make_udrs(LS(t, a), [weak(t, a)],
                      [Predicate(orphan, "p", (ArgSlot(x),))])
        assert any(v.kind == "orphan" for v in check_udrs(u))


class TestMerge:
    def test_empty_is_identity_element(self):
        t = top_label()
        a = fresh_label()
        x = fresh_referent()
        u = make_udrs(LS(t, a), [weak(t, a)], [Predicate(a, "p", (ArgSlot(x),))])
        empty = make_udrs(LS(t, t))
        subord, conds = merge(u, empty)
        assert subord == u.subord
        assert conds == u.conds

    def test_union_bounds(self):
        def mk():
            a, b = fresh_label(), fresh_label()
            return make_udrs(LS(a, b), [weak(a, b)],
                             [Predicate(b, "p", (ArgSlot(fresh_referent()),))])
        u1, u2 = mk(), mk()
        subord, conds = merge(u1, u2)
        assert len(conds) == len(u1.conds) + len(u2.conds)  # label-disjoint
        assert len(subord) <= len(u1.subord) + len(u2.subord)
        merged_self = merge(u1, u1)
        assert merged_self == (u1.subord, u1.conds)

    def test_merge_is_monotone(self):
        a, b = fresh_label(), fresh_label()
        u1 = make_udrs(LS(a, a), [weak(a, b)])
        u2 = make_udrs(LS(b, b), [strict(a, b)])
        subord, conds = merge(u1, u2)
        assert subord >= u1.subord and subord >= u2.subord
        assert conds >= u1.conds and conds >= u2.conds

    def test_merge_of_verb_and_quantifier_entries(self):
        from udrs.core import Quantifier, ReferentIntro
        from udrs.lexicon import Lexicon
        lex = Lexicon.default()
        verb, det = lex.sign("hired"), lex.sign("every")
        subord, conds = merge(verb.udrs, det.udrs)
        rels = {c.rel for c in conds if isinstance(c, Predicate)}
        assert "hire" in rels
        assert any(isinstance(c, Quantifier) for c in conds)
        assert any(isinstance(c, ReferentIntro) for c in conds)
        assert subord == det.udrs.subord  # the verb entry contributes none
