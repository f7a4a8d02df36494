import random

import pytest

from src.models.Formula_Model import BOT, And, Atom, Impl, Neg, Or
from src.models.Theory_Model import InsertionStep, Theory
from src.services.decision_service import derivable, is_derivable
from src.services.henkin_service import (
    build_canonical, canonical_worlds, certify, countermodel, has_disj, insert_code, insert_form, insertn,
    is_closed, prime_trace, prime_up_to, prime_within, primen, truth_lemma_check,
)
from src.services.proof_service import check, random_derivation
from src.services.semantics_service import ForcingEvaluator, validate_frame
from src.services.soundness_service import random_context
from src.services.syntax_service import (
    code_bound_for, encode, enumerate_formulas, fragment_of, offset_of_weight, parse, random_formula,
    subformulas,
)
from src.utils.errors import FragmentTooLargeError, PrimeExtensionPreconditionError

p0, p1, p2 = Atom(0), Atom(1), Atom(2)
LEM = Or(p0, Neg(p0))

HAND_PICKED = [
    LEM,
    Impl(Neg(Neg(p0)), p0),
    Impl(Impl(Impl(p0, p1), p0), p0),
    Impl(p0, Impl(p1, p0)),
    Impl(Impl(p0, p1), p1),
]


def theory(*formulas, goal=BOT):
    return Theory.of(formulas, goal)


class TestPrimePredicates:

    def test_empty_theory_is_closed(self):
        assert is_closed(theory(), fragment_of(p0))

    def test_missing_conjunct_is_not_closed(self):
        assert not is_closed(theory(And(p0, p1)), fragment_of(And(p0, p1)))

    def test_deductive_closure_is_closed(self):
        f = fragment_of(And(p0, p1), Or(p0, p2))
        t = theory(*(q for q in f if is_derivable({p0}, q)))
        assert is_closed(t, f)

    def test_has_disj(self):
        assert has_disj(theory(p0, Impl(p0, p1)))
        assert not has_disj(theory(Or(p0, p1)))
        assert has_disj(theory(Or(p0, p1), p0))

    def test_has_disj_relative_to_a_fragment(self):
        assert has_disj(theory(Or(p0, p1)), fragment_of(p2))

    def test_certificate(self):
        f = subformulas(LEM)
        cert = certify(theory(p0, LEM), f)
        assert cert.closed and cert.disj and cert.consistent
        assert cert.is_prime
        assert not certify(theory(p0, Neg(p0), LEM), f).consistent


class TestInsertions:

    def test_insert_form_prefers_the_left_disjunct(self):
        assert insert_form(theory(), p0, p1, p2).formulas == {p0}

    def test_insert_form_switches_when_the_left_disjunct_derives_r(self):
        assert insert_form(theory(), p0, p1, p0).formulas == {p1}

    def test_insert_form_matches_its_definition(self, rng):
        for _ in range(100):
            p, q, r = (random_formula(rng, 3, (0, 1)) for _ in range(3))
            t = theory(random_formula(rng, 3, (0, 1)))
            expected = q if is_derivable(t.formulas | {p}, r) else p
            assert insert_form(t, p, q, r).formulas == t.formulas | {expected}

    def test_insert_code_ignores_non_disjunctions(self):
        t = theory(And(p0, p1))
        assert insert_code(t, p2, encode(And(p0, p1))) == t
        assert insert_code(t, p2, encode(p0)) == t

    def test_insert_code_ignores_underivable_disjunctions(self):
        assert insert_code(theory(p2), p1, encode(Or(p0, p1))) == theory(p2)

    def test_insert_code_treats_a_derivable_disjunction(self):
        t = theory(Or(p0, p1), Neg(p0))
        assert insert_code(t, BOT, encode(Or(p0, p1))).formulas == t.formulas | {p1}

    def test_insertn_unfolds(self):
        t = theory(Or(p0, p1))
        assert insertn(t, p2, 0) == t
        for n in range(20, 30):
            assert insertn(t, p2, n + 1) == insert_code(insertn(t, p2, n), p2, n)

    def test_insertn_is_monotone(self, rng):
        for _ in range(20):
            t = theory(random_formula(rng, 5, (0, 1)))
            r = random_formula(rng, 3, (0, 1))
            previous = t
            for n in range(0, 120, 10):
                current = insertn(t, r, n)
                assert previous.issubset(current)
                previous = current


class TestPrimeExtension:

    def test_precondition(self):
        with pytest.raises(PrimeExtensionPreconditionError):
            prime_up_to(theory(p0), p0, 3, 100)

    def test_empty_theory(self):
        result = prime_up_to(theory(), p0, 3, 200)
        assert not is_derivable(result.formulas, p0)
        assert all(encode(q) < 200 for q in result.formulas)

    def test_disjunction_member_gets_a_disjunct(self):
        t = theory(Or(p0, p1), goal=p2)
        result = prime_up_to(t, p2, 3, encode(Or(p0, p1)) + 1)
        assert p0 in result
        assert p1 not in result

    def test_avoiding_the_left_disjunct(self):
        result = prime_up_to(theory(Or(p0, p1)), p0, 3, 30)
        assert p1 in result
        assert not is_derivable(result.formulas, p0)

    def test_bounded_disjunction_property(self):
        bound = 400
        t = theory(Or(Or(p0, p1), p2), Impl(p0, p2))
        result = prime_up_to(t, p2, 3, bound)
        assert t.issubset(result)
        assert not is_derivable(result.formulas, p2)
        for q in result.formulas:
            if isinstance(q, Or) and encode(q) < bound:
                assert q.lhs in result or q.rhs in result

    def test_stages_are_monotone(self):
        t = theory(Or(Or(p0, p1), p2))
        stages = [primen(t, p0, n, 60) for n in range(4)]
        assert stages[0] == t
        for smaller, larger in zip(stages, stages[1:]):
            assert smaller.issubset(larger)

    def test_one_more_stage_adds_nothing_at_the_fixpoint(self):
        t = theory(Or(p0, p1))
        result = prime_up_to(t, p0, 3, 30)
        assert primen(result, p0, 1, 30) == result

    def test_trace(self):
        t = theory(Or(p0, p1), goal=p0)
        events = list(prime_trace(t, p0, 2, code_bound_for([Or(p0, p1)])))
        assert events[0] == (0, t.formulas)
        assert events[-1][0] == 2
        steps = [e for e in events if isinstance(e, InsertionStep)]
        assert steps == [InsertionStep(stage=1, code=26, disjunction=Or(p0, p1), added=p1)]

    @pytest.mark.parametrize("t, r, bound", [
        (theory(Or(p0, p1)), p0, 60),
        (theory(Or(Or(p0, p1), p2), Impl(p0, p2)), p2, 400),
    ])
    def test_no_stage_derives_the_avoided_formula(self, t, r, bound):
        for k in range(4):
            assert not is_derivable(primen(t, r, k, bound).formulas, r)

    def test_derived_disjunction_with_the_avoided_formula_puts_the_other_side_in(self):
        bound = offset_of_weight(7)
        r = p0
        result = prime_up_to(theory(Or(p0, p1), Impl(p1, p2)), r, 3, bound)
        checked = 0
        for p in enumerate_formulas(5, (0, 1, 2)):
            if encode(Or(r, p)) < bound and is_derivable(result.formulas, Or(r, p)):
                assert p in result
                checked += 1
        assert checked > 0

    def test_insertions_into_a_stage_stay_inside_the_extension(self):
        t, bound = theory(Or(Or(p0, p1), p2)), 60
        result = prime_up_to(t, p0, 3, bound)
        for k in range(3):
            stage = primen(t, p0, k, bound)
            for i in (0, 10, 30, bound):
                assert insertn(stage, p0, i).issubset(result)

    def test_prime_within_gives_a_canonical_world(self):
        f = fragment_of(LEM, Impl(p0, p1))
        result = prime_within(theory(Impl(p0, p1), goal=LEM), LEM, f)
        assert certify(result, f).is_prime
        assert result.formulas in canonical_worlds(f)


class TestCanonicalModel:

    def test_two_formula_fragment(self):
        canonical = build_canonical(fragment_of(p0))
        assert set(canonical.labels.values()) == {frozenset(), frozenset({p0})}
        assert canonical.model.rel == frozenset({(0, 0), (0, 1), (1, 1)})

    def test_excluded_middle_fragment(self):
        canonical = build_canonical(subformulas(LEM))
        assert validate_frame(canonical.model).ok
        assert len(canonical.model.worlds) == 3
        evaluator = ForcingEvaluator(canonical.model)
        assert not evaluator.forces(0, LEM)
        assert canonical.labels[0] == frozenset()

    def test_worlds_are_prime(self):
        f = fragment_of(Impl(Impl(p0, p1), p0), Or(p0, p1))
        for label in build_canonical(f).labels.values():
            assert certify(Theory(formulas=label, goal=BOT), f).is_prime

    @pytest.mark.parametrize("formula", HAND_PICKED)
    def test_truth_lemma_hand_picked(self, formula):
        assert truth_lemma_check(build_canonical(subformulas(formula))).ok

    def test_truth_lemma_random(self):
        rng = random.Random(3)
        for _ in range(15):
            f = subformulas(random_formula(rng, 7, (0, 1)))
            if len(f) <= 10:
                assert truth_lemma_check(build_canonical(f)).ok

    def test_fragment_bound(self):
        chain = p0
        for i in range(1, 8):
            chain = Impl(Atom(i), chain)
        with pytest.raises(FragmentTooLargeError):
            build_canonical(subformulas(chain))
        with pytest.raises(FragmentTooLargeError):
            countermodel(frozenset(), chain)


class TestCountermodel:

    def test_excluded_middle(self):
        model, world = countermodel(frozenset(), LEM)
        evaluator = ForcingEvaluator(model)
        assert not evaluator.forces(world, LEM)

    def test_axiom_gives_none(self):
        assert countermodel({p0}, p0) is None

    def test_implication_in_context(self):
        ctx = frozenset({Impl(p0, p1)})
        model, world = countermodel(ctx, p1)
        evaluator = ForcingEvaluator(model)
        assert evaluator.forces_ctx(world, ctx)
        assert not evaluator.forces(world, p1)

    def test_agrees_with_the_oracle_on_small_formulas(self):
        for p in enumerate_formulas(3, (0, 1)):
            found = countermodel(frozenset(), p)
            assert (found is None) == derivable(frozenset(), p).provable
            if found is not None:
                model, world = found
                assert validate_frame(model).ok
                assert not ForcingEvaluator(model).forces(world, p)

    def test_agrees_with_the_oracle_under_hypotheses(self):
        for text, goal in [("p0 | p1, ~p0", "p1"), ("~~p0", "p0"), ("p0 -> p1, p1 -> p0", "p0 | p1")]:
            ctx = frozenset(parse(part) for part in text.split(","))
            p = parse(goal)
            assert (countermodel(ctx, p) is None) == derivable(ctx, p).provable

    @pytest.mark.slow
    def test_accepted_derivations_have_no_countermodel(self):
        checked = 0
        for seed in range(300):
            ctx = random_context(seed, (0, 1))
            d, p = random_derivation(ctx, 2, seed, atoms=(0, 1))
            if len(fragment_of(*ctx, p)) > 10:
                continue
            assert check(d, ctx, p).accepted
            assert countermodel(ctx, p) is None
            checked += 1
        assert checked >= 10
