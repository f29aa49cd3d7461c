"""Many-sorted signatures and the pattern AST.

Patterns are stored in terms of the five primitive node kinds (variable,
application, negation, conjunction, existential).  The derived connectives
(top, bottom, or, implies, iff, definedness, membership, equality) are
constructor functions that desugar immediately; the recognizers at the bottom
of this module decode the fixed desugared shapes back, which is all the
pretty printer and the certificate checker need.

Definedness is an application of a reserved symbol, one per sort pair.  The
evaluator and the checker treat these applications specially; signatures do
not have to declare them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from .errors import IllSorted, SortMismatch, UnknownSymbol


@dataclass(frozen=True, slots=True)
class Sort:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Symbol:
    name: str
    arity: tuple[Sort, ...]
    result: Sort


@dataclass(frozen=True, slots=True)
class Variable:
    name: str
    sort: Sort

    def __str__(self) -> str:
        return f"{self.name}:{self.sort.name}"


DEFINEDNESS_PREFIX = "__def__"


def definedness_symbol_name(inner: Sort, outer: Sort) -> str:
    return f"{DEFINEDNESS_PREFIX}{inner.name}__{outer.name}"


def parse_definedness_symbol_name(name: str) -> Optional[tuple[str, str]]:
    if not name.startswith(DEFINEDNESS_PREFIX):
        return None
    rest = name[len(DEFINEDNESS_PREFIX):]
    parts = rest.split("__")
    if len(parts) != 2:
        return None
    return parts[0], parts[1]


@dataclass(frozen=True)
class Signature:
    sorts: frozenset[Sort]
    symbols: dict[str, Symbol] = field(default_factory=dict)
    functional: frozenset[str] = frozenset()
    injective: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        for sym in self.symbols.values():
            for s in (*sym.arity, sym.result):
                if s not in self.sorts:
                    raise IllSorted(f"symbol {sym.name} uses undeclared sort {s}")
        unknown = (self.functional | self.injective) - set(self.symbols)
        if unknown:
            raise UnknownSymbol(f"undeclared symbols tagged: {sorted(unknown)}")
        if not self.injective <= self.functional:
            raise IllSorted("injective symbols must also be functional")

    def sort(self, name: str) -> Sort:
        s = Sort(name)
        if s not in self.sorts:
            raise UnknownSymbol(f"unknown sort {name}")
        return s

    def symbol(self, name: str) -> Symbol:
        sym = self.symbols.get(name)
        if sym is not None:
            return sym
        parsed = parse_definedness_symbol_name(name)
        if parsed is not None:
            inner, outer = Sort(parsed[0]), Sort(parsed[1])
            if inner in self.sorts and outer in self.sorts:
                return Symbol(name, (inner,), outer)
        raise UnknownSymbol(f"unknown symbol {name}")

    def is_definedness(self, name: str) -> bool:
        return parse_definedness_symbol_name(name) is not None

    def is_functional(self, name: str) -> bool:
        return name in self.functional

    def is_injective(self, name: str) -> bool:
        return name in self.injective


def make_signature(
    sorts: Iterable[str],
    symbols: Iterable[tuple[str, Iterable[str], str]],
    functional: Iterable[str] = (),
    injective: Iterable[str] = (),
) -> Signature:
    """Convenience builder taking plain names instead of wrapped values."""
    sort_set = frozenset(Sort(s) for s in sorts)
    table = {}
    for name, arity, result in symbols:
        if name in table:
            raise IllSorted(f"duplicate symbol {name}")
        table[name] = Symbol(name, tuple(Sort(a) for a in arity), Sort(result))
    return Signature(sort_set, table, frozenset(functional), frozenset(injective))


# --- Pattern AST ------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Var:
    var: Variable


@dataclass(frozen=True, slots=True)
class App:
    symbol: str
    args: tuple["Pattern", ...]


@dataclass(frozen=True, slots=True)
class Not:
    arg: "Pattern"


@dataclass(frozen=True, slots=True)
class And:
    left: "Pattern"
    right: "Pattern"


@dataclass(frozen=True, slots=True)
class Exists:
    bound: Variable
    body: "Pattern"


Pattern = Union[Var, App, Not, And, Exists]


def var(name: str, sort: Sort) -> Var:
    return Var(Variable(name, sort))


# --- Derived constructors ---------------------------------------------------

def top(sort: Sort) -> Pattern:
    return Exists(Variable("__t", sort), Var(Variable("__t", sort)))


def bottom(sort: Sort) -> Pattern:
    return Not(top(sort))


def or_(left: Pattern, right: Pattern) -> Pattern:
    return Not(And(Not(left), Not(right)))


def implies(left: Pattern, right: Pattern) -> Pattern:
    return or_(Not(left), right)


def iff(left: Pattern, right: Pattern) -> Pattern:
    return And(implies(left, right), implies(right, left))


def defined(phi: Pattern, inner: Sort, outer: Optional[Sort] = None) -> Pattern:
    return App(definedness_symbol_name(inner, outer or inner), (phi,))


def member(x: Pattern, phi: Pattern, inner: Sort, outer: Optional[Sort] = None) -> Pattern:
    return defined(And(x, phi), inner, outer)


def equal(left: Pattern, right: Pattern, inner: Sort, outer: Optional[Sort] = None) -> Pattern:
    return Not(defined(Not(iff(left, right)), inner, outer))


def conjoin(parts: list[Pattern]) -> Pattern:
    """Right-nested conjunction of a nonempty list."""
    if not parts:
        raise ValueError("conjoin needs at least one conjunct")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def conjuncts(phi: Pattern) -> list[Pattern]:
    """Flatten nested conjunctions (any association) into a list."""
    if isinstance(phi, And):
        return conjuncts(phi.left) + conjuncts(phi.right)
    return [phi]


# --- Recognizers for the derived shapes ------------------------------------

def match_top(phi: Pattern) -> Optional[Sort]:
    if (
        isinstance(phi, Exists)
        and isinstance(phi.body, Var)
        and phi.body.var == phi.bound
    ):
        return phi.bound.sort
    return None


def match_bottom(phi: Pattern) -> Optional[Sort]:
    if isinstance(phi, Not):
        return match_top(phi.arg)
    return None


def match_or(phi: Pattern) -> Optional[tuple[Pattern, Pattern]]:
    if (
        isinstance(phi, Not)
        and isinstance(phi.arg, And)
        and isinstance(phi.arg.left, Not)
        and isinstance(phi.arg.right, Not)
    ):
        return phi.arg.left.arg, phi.arg.right.arg
    return None


def match_implies(phi: Pattern) -> Optional[tuple[Pattern, Pattern]]:
    m = match_or(phi)
    if m is not None and isinstance(m[0], Not):
        return m[0].arg, m[1]
    return None


def match_iff(phi: Pattern) -> Optional[tuple[Pattern, Pattern]]:
    if isinstance(phi, And):
        fwd = match_implies(phi.left)
        bwd = match_implies(phi.right)
        if fwd is not None and bwd == (fwd[1], fwd[0]):
            return fwd
    return None


def match_defined(phi: Pattern) -> Optional[tuple[Pattern, Sort, Sort]]:
    if isinstance(phi, App) and len(phi.args) == 1:
        parsed = parse_definedness_symbol_name(phi.symbol)
        if parsed is not None:
            return phi.args[0], Sort(parsed[0]), Sort(parsed[1])
    return None


def match_equal(phi: Pattern) -> Optional[tuple[Pattern, Pattern, Sort, Sort]]:
    if isinstance(phi, Not):
        d = match_defined(phi.arg)
        if d is not None and isinstance(d[0], Not):
            m = match_iff(d[0].arg)
            if m is not None:
                return m[0], m[1], d[1], d[2]
    return None


def match_member(phi: Pattern) -> Optional[tuple[Pattern, Pattern, Sort, Sort]]:
    d = match_defined(phi)
    if d is not None and isinstance(d[0], And):
        return d[0].left, d[0].right, d[1], d[2]
    return None


# --- Basic operations -------------------------------------------------------

def sort_of(phi: Pattern, sig: Signature) -> Sort:
    """The unique sort of a well-formed pattern; raises IllSorted otherwise."""
    if isinstance(phi, Var):
        if phi.var.sort not in sig.sorts:
            raise IllSorted(f"variable {phi.var} has undeclared sort")
        return phi.var.sort
    if isinstance(phi, App):
        sym = sig.symbol(phi.symbol)
        if len(phi.args) != len(sym.arity):
            raise IllSorted(
                f"{phi.symbol} expects {len(sym.arity)} arguments, got {len(phi.args)}"
            )
        for arg, expected in zip(phi.args, sym.arity):
            actual = sort_of(arg, sig)
            if actual != expected:
                raise IllSorted(
                    f"argument of {phi.symbol} has sort {actual}, expected {expected}"
                )
        return sym.result
    if isinstance(phi, Not):
        return sort_of(phi.arg, sig)
    if isinstance(phi, And):
        left = sort_of(phi.left, sig)
        right = sort_of(phi.right, sig)
        if left != right:
            raise SortMismatch(f"conjunction of sorts {left} and {right}")
        return left
    if isinstance(phi, Exists):
        if phi.bound.sort not in sig.sorts:
            raise IllSorted(f"binder {phi.bound} has undeclared sort")
        return sort_of(phi.body, sig)
    raise TypeError(f"not a pattern: {phi!r}")


def free_vars(phi: Pattern) -> frozenset[Variable]:
    if isinstance(phi, Var):
        return frozenset((phi.var,))
    if isinstance(phi, App):
        out: frozenset[Variable] = frozenset()
        for arg in phi.args:
            out |= free_vars(arg)
        return out
    if isinstance(phi, Not):
        return free_vars(phi.arg)
    if isinstance(phi, And):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, Exists):
        return free_vars(phi.body) - {phi.bound}
    raise TypeError(f"not a pattern: {phi!r}")


def all_var_names(phi: Pattern) -> set[str]:
    if isinstance(phi, Var):
        return {phi.var.name}
    if isinstance(phi, App):
        out: set[str] = set()
        for arg in phi.args:
            out |= all_var_names(arg)
        return out
    if isinstance(phi, Not):
        return all_var_names(phi.arg)
    if isinstance(phi, And):
        return all_var_names(phi.left) | all_var_names(phi.right)
    if isinstance(phi, Exists):
        return all_var_names(phi.body) | {phi.bound.name}
    raise TypeError(f"not a pattern: {phi!r}")


_SUFFIX_RE = re.compile(r"^(.*?)(\d+)$")


def fresh_variable(base: Variable, taken: set[str]) -> Variable:
    """A variable not named in `taken`, formed by bumping a numeric suffix."""
    m = _SUFFIX_RE.match(base.name)
    stem, start = (m.group(1), int(m.group(2)) + 1) if m else (base.name, 1)
    n = start
    while f"{stem}{n}" in taken:
        n += 1
    return Variable(f"{stem}{n}", base.sort)


def subst_in_pattern(phi: Pattern, replacement: Pattern, x: Variable) -> Pattern:
    """Capture-avoiding substitution of `replacement` for `x` in `phi`."""
    if isinstance(phi, Var):
        return replacement if phi.var == x else phi
    if isinstance(phi, App):
        return App(phi.symbol, tuple(subst_in_pattern(a, replacement, x) for a in phi.args))
    if isinstance(phi, Not):
        return Not(subst_in_pattern(phi.arg, replacement, x))
    if isinstance(phi, And):
        return And(
            subst_in_pattern(phi.left, replacement, x),
            subst_in_pattern(phi.right, replacement, x),
        )
    if isinstance(phi, Exists):
        if phi.bound == x:
            return phi
        if phi.bound in free_vars(replacement):
            taken = all_var_names(phi.body) | all_var_names(replacement) | {x.name}
            renamed = fresh_variable(phi.bound, taken)
            body = subst_in_pattern(phi.body, Var(renamed), phi.bound)
            return Exists(renamed, subst_in_pattern(body, replacement, x))
        return Exists(phi.bound, subst_in_pattern(phi.body, replacement, x))
    raise TypeError(f"not a pattern: {phi!r}")


def is_term_pattern(phi: Pattern, sig: Signature) -> bool:
    """Variables and applications of declared functional symbols only."""
    if isinstance(phi, Var):
        return True
    if isinstance(phi, App):
        if sig.is_definedness(phi.symbol) or not sig.is_functional(phi.symbol):
            return False
        return all(is_term_pattern(a, sig) for a in phi.args)
    return False


def check_term_pattern(phi: Pattern, sig: Signature) -> Sort:
    if not is_term_pattern(phi, sig):
        raise IllSorted(f"not a term pattern: {phi!r}")
    return sort_of(phi, sig)


def iter_subpatterns(phi: Pattern) -> Iterator[Pattern]:
    yield phi
    if isinstance(phi, App):
        for a in phi.args:
            yield from iter_subpatterns(a)
    elif isinstance(phi, Not):
        yield from iter_subpatterns(phi.arg)
    elif isinstance(phi, And):
        yield from iter_subpatterns(phi.left)
        yield from iter_subpatterns(phi.right)
    elif isinstance(phi, Exists):
        yield from iter_subpatterns(phi.body)
