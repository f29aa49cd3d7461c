"""Rule-based syntactic unification with full rule traces.

The engine keeps equations in a stable ordered list and applies one rule per
step.  Rule selection is deterministic: the failure rules (symbol clash,
occurs check) are tried first on the leftmost eligible equation, then delete,
decomposition, orient and elimination, each on its leftmost eligible
equation.  Fixing the strategy makes traces and the certificates generated
from them reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import AlreadyFailed, SortMismatch
from .patterns import App, Pattern, Signature, Var, Variable, check_term_pattern, free_vars
from .substitution import Substitution, apply_subst
from .syntax import format_pattern


class Rule(Enum):
    DELETE = "delete"
    DECOMPOSITION = "decomposition"
    SYMBOL_CLASH = "symbol-clash"
    ORIENT = "orient"
    OCCURS_CHECK = "occurs-check"
    ELIMINATION = "elimination"


FAILURE_RULES = (Rule.SYMBOL_CLASH, Rule.OCCURS_CHECK)

Equation = tuple[Pattern, Pattern]


@dataclass(frozen=True)
class UnificationProblem:
    """An ordered multiset of term equations, or the failed problem."""

    equations: tuple[Equation, ...]
    failed: bool = False

    @staticmethod
    def bottom() -> "UnificationProblem":
        return UnificationProblem((), failed=True)

    @staticmethod
    def of(equations: list[Equation], sig: Signature) -> "UnificationProblem":
        for lhs, rhs in equations:
            if check_term_pattern(lhs, sig) != check_term_pattern(rhs, sig):
                raise SortMismatch(
                    f"equation sides have different sorts: "
                    f"{format_pattern(lhs)} and {format_pattern(rhs)}"
                )
        return UnificationProblem(tuple(equations))

    def __str__(self) -> str:
        if self.failed:
            return "bottom"
        inner = ", ".join(
            f"{format_pattern(l)} = {format_pattern(r)}" for l, r in self.equations
        )
        return "{" + inner + "}"


@dataclass(frozen=True)
class TraceStep:
    rule: Rule
    selected: Equation
    result: UnificationProblem


@dataclass(frozen=True)
class Solved:
    mgu: Substitution
    trace: tuple[TraceStep, ...]


@dataclass(frozen=True)
class Failed:
    reason: Rule  # SYMBOL_CLASH or OCCURS_CHECK
    witness: Equation
    trace: tuple[TraceStep, ...]


UnificationOutcome = Solved | Failed


def _vars_of_equations(equations: tuple[Equation, ...]) -> frozenset[Variable]:
    out: frozenset[Variable] = frozenset()
    for lhs, rhs in equations:
        out |= free_vars(lhs) | free_vars(rhs)
    return out


def _eligible(rule: Rule, eq: Equation, others: tuple[Equation, ...]) -> bool:
    lhs, rhs = eq
    if rule is Rule.SYMBOL_CLASH:
        return isinstance(lhs, App) and isinstance(rhs, App) and lhs.symbol != rhs.symbol
    if rule is Rule.OCCURS_CHECK:
        return isinstance(lhs, Var) and isinstance(rhs, App) and lhs.var in free_vars(rhs)
    if rule is Rule.DELETE:
        return lhs == rhs
    if rule is Rule.DECOMPOSITION:
        return isinstance(lhs, App) and isinstance(rhs, App) and lhs.symbol == rhs.symbol
    if rule is Rule.ORIENT:
        return isinstance(lhs, App) and isinstance(rhs, Var)
    if rule is Rule.ELIMINATION:
        return (
            isinstance(lhs, Var)
            and lhs.var not in free_vars(rhs)
            and lhs.var in _vars_of_equations(others)
        )
    raise ValueError(rule)


def _apply(rule: Rule, index: int, equations: tuple[Equation, ...]) -> UnificationProblem:
    eq = equations[index]
    lhs, rhs = eq
    if rule in FAILURE_RULES:
        return UnificationProblem.bottom()
    if rule is Rule.DELETE:
        return UnificationProblem(equations[:index] + equations[index + 1 :])
    if rule is Rule.DECOMPOSITION:
        assert isinstance(lhs, App) and isinstance(rhs, App)
        new = tuple(zip(lhs.args, rhs.args))
        return UnificationProblem(equations[:index] + new + equations[index + 1 :])
    if rule is Rule.ORIENT:
        return UnificationProblem(
            equations[:index] + ((rhs, lhs),) + equations[index + 1 :]
        )
    if rule is Rule.ELIMINATION:
        assert isinstance(lhs, Var)
        binding = Substitution({lhs.var: rhs})
        rewritten = tuple(
            (apply_subst(l, binding), apply_subst(r, binding)) if i != index else (l, r)
            for i, (l, r) in enumerate(equations)
        )
        return UnificationProblem(rewritten)
    raise ValueError(rule)


_RULE_ORDER = (
    Rule.SYMBOL_CLASH,
    Rule.OCCURS_CHECK,
    Rule.DELETE,
    Rule.DECOMPOSITION,
    Rule.ORIENT,
    Rule.ELIMINATION,
)


def step(problem: UnificationProblem) -> Optional[TraceStep]:
    """One deterministic rule application, or None if in solved form."""
    if problem.failed:
        raise AlreadyFailed("cannot step a failed unification problem")
    equations = problem.equations
    for rule in _RULE_ORDER:
        for i, eq in enumerate(equations):
            others = equations[:i] + equations[i + 1 :]
            if _eligible(rule, eq, others):
                return TraceStep(rule, eq, _apply(rule, i, equations))
    return None


def is_solved_form(problem: UnificationProblem) -> bool:
    if problem.failed:
        return True
    bound: list[Variable] = []
    for lhs, _rhs in problem.equations:
        if not isinstance(lhs, Var):
            return False
        bound.append(lhs.var)
    if len(set(bound)) != len(bound):
        return False
    right_vars = frozenset().union(
        *(free_vars(rhs) for _lhs, rhs in problem.equations)
    ) if problem.equations else frozenset()
    return not (set(bound) & right_vars)


def solved_substitution(problem: UnificationProblem) -> Substitution:
    assert is_solved_form(problem) and not problem.failed
    return Substitution({lhs.var: rhs for lhs, rhs in problem.equations})  # type: ignore[union-attr]


STEP_BUDGET = 10_000


def run(problem: UnificationProblem, budget: int = STEP_BUDGET) -> UnificationOutcome:
    trace: list[TraceStep] = []
    current = problem
    for _ in range(budget):
        nxt = step(current)
        if nxt is None:
            return Solved(solved_substitution(current), tuple(trace))
        trace.append(nxt)
        if nxt.result.failed:
            return Failed(nxt.rule, nxt.selected, tuple(trace))
        current = nxt.result
    raise RuntimeError(f"unification did not terminate within {budget} steps")


def unify(t1: Pattern, t2: Pattern, sig: Signature) -> UnificationOutcome:
    if check_term_pattern(t1, sig) != check_term_pattern(t2, sig):
        raise SortMismatch("cannot unify terms of different sorts")
    return run(UnificationProblem(((t1, t2),)))


def unifiers_preserved(
    problem: UnificationProblem, s: TraceStep, candidates: list[Substitution]
) -> bool:
    """Checks that each candidate solves `problem` iff it solves the result."""

    def solves(p: UnificationProblem, sigma: Substitution) -> bool:
        if p.failed:
            return False
        return all(
            apply_subst(lhs, sigma) == apply_subst(rhs, sigma)
            for lhs, rhs in p.equations
        )

    return all(
        solves(problem, sigma) == solves(s.result, sigma) for sigma in candidates
    )


def trace_to_json(trace: tuple[TraceStep, ...]) -> list[dict]:
    out = []
    for s in trace:
        lhs, rhs = s.selected
        out.append(
            {
                "rule": s.rule.value,
                "equation": f"{format_pattern(lhs)} = {format_pattern(rhs)}",
                "problem_after": ["bottom"]
                if s.result.failed
                else [
                    f"{format_pattern(l)} = {format_pattern(r)}"
                    for l, r in s.result.equations
                ],
            }
        )
    return out


def format_trace(trace: tuple[TraceStep, ...]) -> str:
    return json.dumps(trace_to_json(trace), indent=2)
