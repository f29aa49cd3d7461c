"""Acceptance suite: one test per criterion, one pass/fail line each.

The pass/fail lines are collected in RESULTS and echoed by the
pytest_terminal_summary hook in conftest.py so they appear in the run log.
"""

import functools
import random
import time

from mlunify.checking import CheckerConfig, verify
from mlunify.encoding import generate_axioms, phi_of_problem, phi_of_subst
from mlunify.patterns import And, App, Sort, Var, Variable, equal, free_vars, sort_of
from mlunify.proofs import gen_stage1, gen_stage2
from mlunify.semantics import (
    audit_no_confusion_different,
    audit_no_confusion_same,
    audit_no_junk,
    eval_pattern,
    implication_holds,
    occurs_check_countermodel,
    random_injective_model,
    semantic_equivalences_hold,
    subst_constraint_equiv_holds,
)
from mlunify.substitution import Substitution, apply_subst, compose
from mlunify.syntax import parse_pattern, parse_signature
from mlunify.unification import (
    Failed,
    Rule,
    Solved,
    UnificationProblem,
    run,
    unifiers_preserved,
    unify,
)
from conftest import (
    SMALL_CARRIERS,
    mutate_certificate,
    random_term,
    random_unifiable_pair,
)

T = Sort("T")

RESULTS: list[str] = []


def criterion(number, description):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            start = time.monotonic()
            try:
                fn(*args, **kwargs)
            except BaseException:
                RESULTS.append(f"ACCEPTANCE {number}: FAIL - {description}")
                raise
            elapsed = time.monotonic() - start
            RESULTS.append(
                f"ACCEPTANCE {number}: PASS - {description} ({elapsed:.1f}s)"
            )

        return wrapper

    return decorate


@criterion(1, "worked example: exact mgu and rule trace")
def test_criterion_1_worked_example(nat_sig, worked_pair):
    start = time.monotonic()
    t1, t2 = worked_pair
    out = unify(t1, t2, nat_sig)
    assert isinstance(out, Solved)
    nat = Sort("Nat")
    assert out.mgu == Substitution(
        {
            Variable("x", nat): parse_pattern("g(one)", nat_sig),
            Variable("y", nat): parse_pattern("one", nat_sig),
            Variable("z", nat): parse_pattern("g(g(one))", nat_sig),
        }
    )
    assert [s.rule for s in out.trace] == [
        Rule.DECOMPOSITION,
        Rule.DECOMPOSITION,
        Rule.DECOMPOSITION,
        Rule.ORIENT,
        Rule.ELIMINATION,
        Rule.ELIMINATION,
    ]
    assert time.monotonic() - start < 1.0


@criterion(2, "two-binding example: exact mgu and rule trace")
def test_criterion_2_two_binding_example():
    sig = parse_signature(
        "sort S\n"
        "symbol cc : -> S [functional]\n"
        "symbol gg : S S -> S [functional]\n"
        "symbol ff : S S -> S [functional]\n"
    )
    t1 = parse_pattern("ff(gg(x, cc), y)", sig)
    t2 = parse_pattern("ff(z, y')", sig)
    out = unify(t1, t2, sig)
    assert isinstance(out, Solved)
    s = Sort("S")
    assert out.mgu == Substitution(
        {
            Variable("z", s): parse_pattern("gg(x, cc)", sig),
            Variable("y", s): Var(Variable("y'", s)),
        }
    )
    assert [st.rule for st in out.trace] == [Rule.DECOMPOSITION, Rule.ORIENT]


@criterion(3, "soundness equivalences on 200 random pairs x 20 models")
def test_criterion_3_equivalence_oracle(small_sig):
    rng = random.Random(2024)
    checked = 0
    for pair_index in range(200):
        t1, t2 = random_unifiable_pair(rng, depth=4, max_vars=3)
        out = unify(t1, t2, small_sig)
        assert isinstance(out, Solved)
        for model_index in range(20):
            m = random_injective_model(
                small_sig, 3, 1000 * pair_index + model_index,
                carrier_sizes=SMALL_CARRIERS,
            )
            assert semantic_equivalences_hold(m, t1, t2, out.mgu)
            checked += 1
    assert checked == 4000


@criterion(4, "substitution/trace/constraint lemmas on 200 instances each")
def test_criterion_4_lemma_suite(small_sig):
    rng = random.Random(4094)
    # Substitution lemma: t.sigma /\ phi-sigma is equivalent to t /\ phi-sigma.
    for i in range(200):
        t, _ = random_unifiable_pair(rng, depth=3, max_vars=2)
        bindings = {}
        for v in list(free_vars(t))[:2]:
            if rng.random() < 0.8:
                bindings[v] = random_term(rng, 2, "s") if v.sort == T else App("u", ())
        sigma = Substitution(
            {v: b for v, b in bindings.items() if v not in free_vars(b)}
        )
        m = random_injective_model(
            small_sig, 3, 7000 + i, carrier_sizes=SMALL_CARRIERS
        )
        assert subst_constraint_equiv_holds(m, t, sigma)
    # Trace lemma: each rule application keeps the constraint implication.
    count = 0
    while count < 200:
        t1, t2 = random_unifiable_pair(rng, depth=3, max_vars=3)
        out = unify(t1, t2, small_sig)
        assert isinstance(out, Solved)
        if not out.trace:
            continue
        at = sort_of(t1, small_sig)
        m = random_injective_model(
            small_sig, 3, 8000 + count, carrier_sizes=SMALL_CARRIERS
        )
        problem = UnificationProblem(((t1, t2),))
        for trace_step in out.trace:
            before = phi_of_problem(problem, small_sig, at).pattern
            after = phi_of_problem(trace_step.result, small_sig, at).pattern
            assert implication_holds(m, before, after)
            problem = trace_step.result
            count += 1
            if count >= 200:
                break
    # Constraint lemma: the solved constraint forces the terms equal.
    for i in range(200):
        t1, t2 = random_unifiable_pair(rng, depth=3, max_vars=3)
        out = unify(t1, t2, small_sig)
        assert isinstance(out, Solved)
        at = sort_of(t1, small_sig)
        phi = phi_of_subst(out.mgu, small_sig, at).pattern
        m = random_injective_model(
            small_sig, 3, 9000 + i, carrier_sizes=SMALL_CARRIERS
        )
        assert implication_holds(m, phi, equal(t1, t2, at, at))


@criterion(5, "occurs-check incompleteness witness with model audits")
def test_criterion_5_incompleteness_witness():
    m = occurs_check_countermodel()
    s = Sort("s")
    x = Variable("x", s)
    phi = And(Var(x), App("f", (Var(x),)))
    assert eval_pattern(m, {x: "a"}, phi) == frozenset({"a"})
    out = unify(Var(x), App("f", (Var(x),)), m.sig)
    assert isinstance(out, Failed) and out.reason == Rule.OCCURS_CHECK
    assert audit_no_junk(m, s)
    assert audit_no_confusion_different(m)
    assert audit_no_confusion_same(m)


@criterion(6, "certificate round trip on worked example + 100 random pairs")
def test_criterion_6_certificate_round_trip(nat_sig, small_sig, worked_pair):
    start = time.monotonic()
    rng = random.Random(6006)
    cases = [(nat_sig, worked_pair)]
    for _ in range(100):
        cases.append((small_sig, random_unifiable_pair(rng, depth=4, max_vars=4)))
    configs = {}
    for sig, (t1, t2) in cases:
        out = unify(t1, t2, sig)
        assert isinstance(out, Solved)
        if id(sig) not in configs:
            axioms = generate_axioms(sig)
            configs[id(sig)] = (
                CheckerConfig(axioms, allow_derived=True),
                CheckerConfig(axioms, allow_derived=False),
            )
        with_derived, without_derived = configs[id(sig)]
        for expand in (False, True):
            c1 = gen_stage1(t1, t2, out, sig, expand=expand)
            c2 = gen_stage2(t1, t2, out.mgu, sig, expand=expand)
            config = without_derived if expand else with_derived
            for cert in (c1, c2):
                report = verify(cert, sig, config)
                assert report.ok, (report.failed_line, report.reason)
    assert time.monotonic() - start < 120


@criterion(7, "500 single-node certificate mutations all rejected")
def test_criterion_7_adversarial_mutations(nat_sig, small_sig, worked_pair):
    rng = random.Random(7007)
    certs = []
    t1, t2 = worked_pair
    out = unify(t1, t2, nat_sig)
    certs += [
        (nat_sig, gen_stage1(t1, t2, out, nat_sig)),
        (nat_sig, gen_stage2(t1, t2, out.mgu, nat_sig)),
        (nat_sig, gen_stage1(t1, t2, out, nat_sig, expand=True)),
        (nat_sig, gen_stage2(t1, t2, out.mgu, nat_sig, expand=True)),
    ]
    while len(certs) < 24:
        p1, p2 = random_unifiable_pair(rng, depth=3, max_vars=3)
        o = unify(p1, p2, small_sig)
        assert isinstance(o, Solved)
        certs.append((small_sig, gen_stage1(p1, p2, o, small_sig)))
        certs.append((small_sig, gen_stage2(p1, p2, o.mgu, small_sig)))
    configs = {
        id(nat_sig): CheckerConfig(generate_axioms(nat_sig)),
        id(small_sig): CheckerConfig(generate_axioms(small_sig)),
    }
    rejected = tried = 0
    while tried < 500:
        sig, cert = rng.choice(certs)
        mutated = mutate_certificate(rng, cert)
        if mutated is None:
            continue
        tried += 1
        if not verify(mutated, sig, configs[id(sig)]).ok:
            rejected += 1
    assert rejected == 500, f"{500 - rejected} false accepts"


@criterion(8, "termination, unifier correctness, idempotence on 1000 pairs")
def test_criterion_8_property_suite(small_sig):
    rng = random.Random(8008)
    solved_count = 0
    for i in range(1000):
        t1 = random_term(rng, 5, "v")
        t2 = random_term(rng, 5, "v")
        out = run(UnificationProblem(((t1, t2),)), budget=10_000)
        assert isinstance(out, (Solved, Failed))
        if isinstance(out, Solved):
            solved_count += 1
            sigma = out.mgu
            assert apply_subst(t1, sigma) == apply_subst(t2, sigma)
            assert compose(sigma, sigma) == sigma
            if i % 20 == 0 and out.trace:
                candidates = [sigma, Substitution({})]
                problem = UnificationProblem(((t1, t2),))
                for trace_step in out.trace:
                    assert unifiers_preserved(problem, trace_step, candidates)
                    problem = trace_step.result
    assert solved_count > 0
