"""Finite-model semantics tests: evaluation, audits, oracles, model files."""

import os
import random

import pytest

from mlunify.encoding import phi_of_subst
from mlunify.errors import CarrierTooLarge, NoInjectiveInterpretation, UnassignedVariable
from mlunify.patterns import (
    And,
    App,
    Exists,
    Not,
    Sort,
    Var,
    Variable,
    bottom,
    defined,
    equal,
    member,
    or_,
    top,
)
from mlunify.semantics import (
    FiniteModel,
    audit_definedness,
    audit_functional,
    audit_injective,
    audit_no_confusion_different,
    audit_no_confusion_same,
    audit_no_junk,
    dump_model,
    equivalence_holds,
    eval_pattern,
    implication_holds,
    load_model,
    occurs_check_countermodel,
    random_injective_model,
    satisfies,
    semantic_equivalences_hold,
    subst_constraint_equiv_holds,
)
from mlunify.substitution import Substitution
from mlunify.syntax import parse_pattern, parse_signature
from mlunify.unification import Failed, Rule, Solved, unify
from conftest import SMALL_CARRIERS, random_unifiable_pair

NAT_MODEL_SIG = parse_signature(
    "sort Nat\n"
    "symbol o : -> Nat [functional]\n"
    "symbol succ : Nat -> Nat [functional]\n"
)


def tiny_nat_model(n: int = 3) -> FiniteModel:
    """Naturals modulo n with zero and successor."""
    carrier = tuple(str(i) for i in range(n))
    interp = {
        "o": {(): frozenset({"0"})},
        "succ": {
            (str(i),): frozenset({str((i + 1) % n)}) for i in range(n)
        },
    }
    return FiniteModel(NAT_MODEL_SIG, {Sort("Nat"): carrier}, interp)


class TestEvaluation:
    def test_ground_term(self):
        m = tiny_nat_model()
        phi = parse_pattern("succ(succ(o))", NAT_MODEL_SIG)
        assert eval_pattern(m, {}, phi) == frozenset({"2"})

    def test_variable_and_conjunction(self):
        m = tiny_nat_model()
        x = Variable("x", Sort("Nat"))
        phi = And(Var(x), App("succ", (App("o", ()),)))
        assert eval_pattern(m, {x: "1"}, phi) == frozenset({"1"})
        assert eval_pattern(m, {x: "2"}, phi) == frozenset()

    def test_negation_and_top_bottom(self):
        m = tiny_nat_model()
        nat = Sort("Nat")
        assert eval_pattern(m, {}, top(nat)) == frozenset({"0", "1", "2"})
        assert eval_pattern(m, {}, bottom(nat)) == frozenset()
        assert eval_pattern(m, {}, Not(App("o", ()))) == frozenset({"1", "2"})

    def test_exists(self):
        m = tiny_nat_model()
        x = Variable("x", Sort("Nat"))
        phi = Exists(x, App("succ", (Var(x),)))
        assert eval_pattern(m, {}, phi) == frozenset({"0", "1", "2"})

    def test_definedness_and_membership(self):
        m = tiny_nat_model()
        nat = Sort("Nat")
        o = App("o", ())
        assert eval_pattern(m, {}, defined(o, nat, nat)) == frozenset(
            {"0", "1", "2"}
        )
        assert eval_pattern(m, {}, defined(bottom(nat), nat, nat)) == frozenset()
        x = Variable("x", nat)
        assert eval_pattern(m, {x: "0"}, member(Var(x), o, nat, nat)) == frozenset(
            {"0", "1", "2"}
        )
        assert eval_pattern(m, {x: "1"}, member(Var(x), o, nat, nat)) == frozenset()

    def test_equality_is_two_valued(self):
        m = tiny_nat_model()
        nat = Sort("Nat")
        o = App("o", ())
        so = App("succ", (o,))
        assert eval_pattern(m, {}, equal(o, o, nat, nat)) == frozenset(
            {"0", "1", "2"}
        )
        assert eval_pattern(m, {}, equal(o, so, nat, nat)) == frozenset()

    def test_unassigned_variable_raises(self):
        m = tiny_nat_model()
        with pytest.raises(UnassignedVariable):
            eval_pattern(m, {}, Var(Variable("x", Sort("Nat"))))


class TestSatisfaction:
    def test_validity_example(self):
        # Every element is zero or a successor in the modular model.
        m = tiny_nat_model()
        x = Variable("x", Sort("Nat"))
        phi = or_(App("o", ()), Exists(x, App("succ", (Var(x),))))
        assert satisfies(m, phi)

    def test_non_validity(self):
        m = tiny_nat_model()
        assert not satisfies(m, App("o", ()))

    def test_budget_enforced(self):
        m = tiny_nat_model()
        x = Variable("x", Sort("Nat"))
        phi = And(Var(x), Var(x))
        os.environ["MLUNIFY_BUDGET"] = "1"
        try:
            with pytest.raises(CarrierTooLarge):
                satisfies(m, phi)
        finally:
            del os.environ["MLUNIFY_BUDGET"]


class TestCountermodel:
    def test_occurs_check_incompleteness(self):
        m = occurs_check_countermodel()
        sig = m.sig
        s = Sort("s")
        x = Variable("x", s)
        phi = And(Var(x), App("f", (Var(x),)))
        assert eval_pattern(m, {x: "a"}, phi) == frozenset({"a"})
        out = unify(Var(x), App("f", (Var(x),)), sig)
        assert isinstance(out, Failed) and out.reason == Rule.OCCURS_CHECK

    def test_countermodel_audits(self):
        m = occurs_check_countermodel()
        assert audit_functional(m)
        assert audit_injective(m)
        assert audit_definedness(m)
        assert audit_no_junk(m, Sort("s"))
        assert audit_no_confusion_different(m)
        assert audit_no_confusion_same(m)


class TestRandomModels:
    def test_audits_pass(self, small_sig):
        for seed in range(5):
            m = random_injective_model(
                small_sig, 3, seed, carrier_sizes=SMALL_CARRIERS
            )
            assert audit_functional(m)
            assert audit_injective(m)
            assert audit_definedness(m)

    def test_seed_determinism(self, small_sig):
        a = random_injective_model(small_sig, 3, 42, carrier_sizes=SMALL_CARRIERS)
        b = random_injective_model(small_sig, 3, 42, carrier_sizes=SMALL_CARRIERS)
        assert dump_model(a) == dump_model(b)

    def test_infeasible_injectivity_rejected(self, nat_sig):
        # f is ternary injective: 8 argument tuples cannot inject into 2.
        with pytest.raises(NoInjectiveInterpretation):
            random_injective_model(nat_sig, 2, 0)


class TestOracles:
    def test_soundness_equivalences_on_worked_example(self, nat_sig, worked_pair):
        # The ternary injective symbol forces a one-element carrier (n^3
        # argument tuples cannot inject into n elements otherwise).
        t1, t2 = worked_pair
        out = unify(t1, t2, nat_sig)
        assert isinstance(out, Solved)
        m = random_injective_model(nat_sig, 1, 1)
        assert semantic_equivalences_hold(m, t1, t2, out.mgu)

    def test_soundness_equivalences_nontrivial_carriers(self, small_sig):
        rng = random.Random(12)
        for _ in range(10):
            t1, t2 = random_unifiable_pair(rng)
            out = unify(t1, t2, small_sig)
            assert isinstance(out, Solved)
            m = random_injective_model(
                small_sig, 3, 6, carrier_sizes=SMALL_CARRIERS
            )
            assert semantic_equivalences_hold(m, t1, t2, out.mgu)

    def test_subst_constraint_equivalence(self, small_sig):
        rng = random.Random(11)
        t1, t2 = random_unifiable_pair(rng)
        out = unify(t1, t2, small_sig)
        m = random_injective_model(small_sig, 3, 2, carrier_sizes=SMALL_CARRIERS)
        assert subst_constraint_equiv_holds(m, t1, out.mgu)

    def test_constraint_implies_equality(self, small_sig):
        rng = random.Random(13)
        t1, t2 = random_unifiable_pair(rng)
        out = unify(t1, t2, small_sig)
        assert isinstance(out, Solved)
        m = random_injective_model(small_sig, 3, 3, carrier_sizes=SMALL_CARRIERS)
        t_sort = Sort("T")
        phi = phi_of_subst(out.mgu, small_sig, t_sort).pattern
        assert implication_holds(m, phi, equal(t1, t2, t_sort, t_sort))

    def test_equivalence_fails_for_wrong_subst(self, small_sig):
        t_sort = Sort("T")
        t1 = parse_pattern("g(v0:T)", small_sig)
        t2 = parse_pattern("g(w0:T)", small_sig)
        wrong = Substitution(
            {
                Variable("v0", t_sort): App("a", ()),
                Variable("w0", t_sort): App("b", ()),
            }
        )
        m = random_injective_model(small_sig, 3, 4, carrier_sizes=SMALL_CARRIERS)
        assert not semantic_equivalences_hold(m, t1, t2, wrong)


class TestModelFiles:
    def test_round_trip(self, small_sig):
        m = random_injective_model(small_sig, 3, 5, carrier_sizes=SMALL_CARRIERS)
        text = dump_model(m)
        again = load_model(text, small_sig)
        assert dump_model(again) == text

    def test_missing_interpretation_rejected(self):
        sig = parse_signature("sort S\nsymbol k : -> S [functional]\n")
        from mlunify.errors import ModelFormatError

        with pytest.raises(ModelFormatError):
            load_model("carrier S = {e0}\n", sig)
