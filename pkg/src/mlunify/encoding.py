"""Encoding unification data as predicate patterns, and the axiom set.

A unification problem maps to the conjunction of its equations as equality
patterns (the failed problem maps to bottom, the empty one to top); a
substitution maps to the conjunction of its bindings in lexicographic
variable order.  All equalities are asserted at a caller-chosen outer sort so
the result can be conjoined with a structural component of that sort.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import SortMismatch
from .patterns import (
    And,
    Exists,
    Pattern,
    Signature,
    Sort,
    Var,
    Variable,
    App,
    bottom,
    conjoin,
    defined,
    equal,
    implies,
    sort_of,
    top,
)
from .substitution import Substitution, sorted_items
from .unification import UnificationProblem


@dataclass(frozen=True)
class PredicatePattern:
    """A pattern expected to evaluate to all-or-nothing, with its sort."""

    pattern: Pattern
    sort: Sort


def phi_of_problem(
    problem: UnificationProblem, sig: Signature, at: Sort
) -> PredicatePattern:
    if problem.failed:
        return PredicatePattern(bottom(at), at)
    if not problem.equations:
        return PredicatePattern(top(at), at)
    parts = [
        equal(lhs, rhs, sort_of(lhs, sig), at) for lhs, rhs in problem.equations
    ]
    return PredicatePattern(conjoin(parts), at)


def phi_of_subst(sigma: Substitution, sig: Signature, at: Sort) -> PredicatePattern:
    items = sorted_items(sigma)
    if not items:
        return PredicatePattern(top(at), at)
    parts = [equal(Var(v), t, v.sort, at) for v, t in items]
    return PredicatePattern(conjoin(parts), at)


def conjoin_with_structure(t: Pattern, phi: PredicatePattern, sig: Signature) -> Pattern:
    t_sort = sort_of(t, sig)
    if t_sort != phi.sort:
        raise SortMismatch(
            f"structure has sort {t_sort} but the constraint is asserted at {phi.sort}"
        )
    return And(t, phi.pattern)


class AxiomTag(Enum):
    DEFINEDNESS = "definedness"
    FUNCTIONALITY = "functionality"
    INJECTIVITY = "injectivity"


@dataclass(frozen=True)
class Axiom:
    tag: AxiomTag
    symbol: Optional[str]  # None for definedness axioms
    pattern: Pattern


@dataclass(frozen=True)
class AxiomSet:
    axioms: tuple[Axiom, ...]

    def with_tag(self, tag: AxiomTag) -> list[Axiom]:
        return [a for a in self.axioms if a.tag == tag]

    def without_symbol(self, symbol: str, tag: Optional[AxiomTag] = None) -> "AxiomSet":
        return AxiomSet(
            tuple(
                a
                for a in self.axioms
                if not (a.symbol == symbol and (tag is None or a.tag == tag))
            )
        )


def generate_axioms(sig: Signature) -> AxiomSet:
    """Definedness, functionality and injectivity axioms for a signature.

    Variable naming is deterministic (x, x1..xn, y1..yn) so the output is
    stable for golden-file comparison.
    """
    axioms: list[Axiom] = []
    sorts = sorted(sig.sorts, key=lambda s: s.name)
    for inner in sorts:
        for outer in sorts:
            x = Var(Variable("x", inner))
            axioms.append(Axiom(AxiomTag.DEFINEDNESS, None, defined(x, inner, outer)))
    for name in sorted(sig.functional):
        sym = sig.symbols[name]
        args = tuple(
            Var(Variable(f"x{i + 1}", s)) for i, s in enumerate(sym.arity)
        )
        y = Variable("y", sym.result)
        body = equal(App(name, args), Var(y), sym.result, sym.result)
        axioms.append(Axiom(AxiomTag.FUNCTIONALITY, name, Exists(y, body)))
    for name in sorted(sig.injective):
        sym = sig.symbols[name]
        if not sym.arity:
            continue  # a constant is trivially injective; no axiom needed
        xs = tuple(Var(Variable(f"x{i + 1}", s)) for i, s in enumerate(sym.arity))
        ys = tuple(Var(Variable(f"y{i + 1}", s)) for i, s in enumerate(sym.arity))
        premise = equal(App(name, xs), App(name, ys), sym.result, sym.result)
        parts = [
            equal(x, y, s, sym.result) for x, y, s in zip(xs, ys, sym.arity)
        ]
        axioms.append(
            Axiom(AxiomTag.INJECTIVITY, name, implies(premise, conjoin(parts)))
        )
    return AxiomSet(tuple(axioms))


def format_axioms(axioms: AxiomSet) -> str:
    from .syntax import format_pattern

    lines = []
    for a in axioms.axioms:
        tag = a.tag.value if a.symbol is None else f"{a.tag.value}({a.symbol})"
        lines.append(f"{format_pattern(a.pattern, show_sorts=True)}  # {tag}")
    return "\n".join(lines) + "\n"
