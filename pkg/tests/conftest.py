"""Shared fixtures: the running-example signature and random term generators."""

from __future__ import annotations

import random

import pytest

from mlunify.patterns import App, Pattern, Sort, Var, Variable, free_vars
from mlunify.syntax import parse_pattern, parse_signature

NAT_SIG_TEXT = """\
sort Nat
symbol one : -> Nat [functional]
symbol c : -> Nat [functional]
symbol g : Nat -> Nat [functional, injective]
symbol f : Nat Nat Nat -> Nat [functional, injective]
symbol h : Nat Nat -> Nat [functional, injective]
"""

# A signature whose injectivity constraints are satisfiable on carriers of
# size <= 3: g needs |T| <= |T| and f2 needs |U| * |T| <= |T| with |U| = 1.
SMALL_SIG_TEXT = """\
sort T
sort U
symbol a : -> T [functional]
symbol b : -> T [functional]
symbol u : -> U [functional]
symbol g : T -> T [functional, injective]
symbol f2 : U T -> T [functional, injective]
"""

SMALL_CARRIERS = {Sort("T"): 3, Sort("U"): 1}


def pytest_terminal_summary(terminalreporter):
    """Echo the one-line acceptance criterion results after the run."""
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def nat_sig():
    return parse_signature(NAT_SIG_TEXT)


@pytest.fixture(scope="session")
def small_sig():
    return parse_signature(SMALL_SIG_TEXT)


@pytest.fixture(scope="session")
def worked_pair(nat_sig):
    t1 = parse_pattern("f(x, g(one), g(z))", nat_sig)
    t2 = parse_pattern("f(g(y), g(y), g(g(x)))", nat_sig)
    return t1, t2


def random_ground_term(rng: random.Random, depth: int) -> App:
    """A random closed term of sort T over the small signature."""
    if depth <= 0 or rng.random() < 0.3:
        return App(rng.choice(["a", "b"]), ())
    if rng.random() < 0.5:
        return App("g", (random_ground_term(rng, depth - 1),))
    return App("f2", (App("u", ()), random_ground_term(rng, depth - 1)))


def generalize(rng: random.Random, t: Pattern, prefix: str, rate: float) -> Pattern:
    """Replace random subterms of a ground term by variables.

    Equal subterms are replaced consistently (one variable per replaced
    shape), so the result still has `t` as an instance.
    """
    assignment: dict[Pattern, Variable] = {}

    def node_sort(node: Pattern) -> Sort:
        return Sort("U") if isinstance(node, App) and node.symbol == "u" else Sort("T")

    def walk(node: Pattern) -> Pattern:
        if node in assignment:
            return Var(assignment[node])
        if rng.random() < rate:
            v = Variable(f"{prefix}{len(assignment)}", node_sort(node))
            assignment[node] = v
            return Var(v)
        if isinstance(node, App) and node.args:
            return App(node.symbol, tuple(walk(a) for a in node.args))
        return node

    return walk(t)


def random_unifiable_pair(
    rng: random.Random, depth: int = 4, max_vars: int = 5
) -> tuple[Pattern, Pattern]:
    """Two generalizations of a common ground term, in disjoint variable
    namespaces, hence always unifiable."""
    while True:
        base = random_ground_term(rng, depth - 1)
        t1 = generalize(rng, base, "v", rate=0.25)
        t2 = generalize(rng, base, "w", rate=0.25)
        if len(free_vars(t1) | free_vars(t2)) <= max_vars:
            return t1, t2


def random_term(rng: random.Random, depth: int, prefix: str) -> Pattern:
    """A random open term of sort T (not necessarily unifiable with anything)."""
    roll = rng.random()
    if depth <= 0 or roll < 0.35:
        if roll < 0.2:
            return Var(Variable(f"{prefix}{rng.randrange(3)}", Sort("T")))
        return App(rng.choice(["a", "b"]), ())
    if roll < 0.7:
        return App("g", (random_term(rng, depth - 1, prefix),))
    return App("f2", (App("u", ()), random_term(rng, depth - 1, prefix)))


def mutate_pattern(rng: random.Random, phi: Pattern):
    """One random single-node edit: rename one variable occurrence to a fresh
    variable of the same sort.  Returns None when the pattern has no
    variables to rename."""
    from mlunify.patterns import all_var_names, fresh_variable, subst_in_pattern

    positions = []

    def walk(node, path):
        if isinstance(node, Var):
            positions.append((path, node))
            return
        for i, child in enumerate(getattr(node, "args", ()) or ()):
            walk(child, path + (i,))
        if hasattr(node, "arg"):
            walk(node.arg, path + (0,))
        if hasattr(node, "left"):
            walk(node.left, path + (0,))
            walk(node.right, path + (1,))
        if hasattr(node, "body"):
            walk(node.body, path + (0,))

    walk(phi, ())
    if not positions:
        return None
    path, var_node = rng.choice(positions)
    fresh = fresh_variable(var_node.var, all_var_names(phi))

    def rebuild(node, path):
        if not path:
            return Var(fresh)
        i, rest = path[0], path[1:]
        if isinstance(node, App):
            args = list(node.args)
            args[i] = rebuild(args[i], rest)
            return App(node.symbol, tuple(args))
        import mlunify.patterns as P

        if isinstance(node, P.Not):
            return P.Not(rebuild(node.arg, rest))
        if isinstance(node, P.And):
            if i == 0:
                return P.And(rebuild(node.left, rest), node.right)
            return P.And(node.left, rebuild(node.right, rest))
        if isinstance(node, P.Exists):
            return P.Exists(node.bound, rebuild(node.body, rest))
        raise AssertionError("unreachable")

    return rebuild(phi, path)


def mutate_certificate(rng: random.Random, cert):
    """A copy of the certificate with one non-tautology line's formula
    mutated at a single node; None when no line is mutable."""
    from mlunify.proofs import Certificate, ProofLine, Tautology

    candidates = [
        line
        for line in cert.lines
        if not isinstance(line.justification, Tautology)
        and mutate_pattern(random.Random(0), line.formula) is not None
    ]
    if not candidates:
        return None
    target = rng.choice(candidates)
    mutated = mutate_pattern(rng, target.formula)
    if mutated is None or mutated == target.formula:
        return None
    lines = tuple(
        ProofLine(l.index, mutated if l.index == target.index else l.formula, l.justification)
        for l in cert.lines
    )
    conclusion = lines[-1].formula
    return Certificate(cert.hypotheses, lines, conclusion, cert.mode)
