"""Substitutions over term patterns: application, composition, generality."""

from __future__ import annotations

from typing import Iterable, Mapping, Optional

from .errors import SortMismatch
from .patterns import App, Pattern, Var, Variable


class Substitution:
    """A finite map from sorted variables to term patterns.

    Identity bindings (x to x) are dropped so that equality of substitutions
    is plain map equality.  Unbound variables act as the identity.
    """

    __slots__ = ("_bindings",)

    def __init__(self, bindings: Mapping[Variable, Pattern] = ()):
        cleaned = {}
        for v, t in dict(bindings).items():
            if isinstance(t, Var) and t.var == v:
                continue
            if _pattern_sort_hint(t, v) is False:
                raise SortMismatch(f"binding {v} has a differently sorted target")
            cleaned[v] = t
        self._bindings = cleaned

    @property
    def bindings(self) -> dict[Variable, Pattern]:
        return dict(self._bindings)

    def domain(self) -> frozenset[Variable]:
        return frozenset(self._bindings)

    def get(self, v: Variable) -> Pattern:
        return self._bindings.get(v, Var(v))

    def __contains__(self, v: Variable) -> bool:
        return v in self._bindings

    def __len__(self) -> int:
        return len(self._bindings)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Substitution) and self._bindings == other._bindings

    def __hash__(self) -> int:
        return hash(frozenset(self._bindings.items()))

    def __repr__(self) -> str:
        from .syntax import format_pattern

        inner = ", ".join(
            f"{v} -> {format_pattern(t, show_sorts=True)}" for v, t in sorted_items(self)
        )
        return "{" + inner + "}"


def sorted_items(sigma: Substitution) -> list[tuple[Variable, Pattern]]:
    """Bindings in lexicographic (name, sort) order."""
    return sorted(sigma.bindings.items(), key=lambda kv: (kv[0].name, kv[0].sort.name))


def _pattern_sort_hint(t: Pattern, v: Variable) -> Optional[bool]:
    # Only variable targets carry an immediate sort; applications are
    # validated against the signature where one is available.
    if isinstance(t, Var):
        return t.var.sort == v.sort
    return None


def apply_subst(t: Pattern, sigma: Substitution) -> Pattern:
    """Homomorphic application of a substitution to a term pattern."""
    if isinstance(t, Var):
        return sigma.get(t.var)
    if isinstance(t, App):
        return App(t.symbol, tuple(apply_subst(a, sigma) for a in t.args))
    raise TypeError(f"not a term pattern: {t!r}")


def compose(sigma: Substitution, eta: Substitution) -> Substitution:
    """The substitution mapping every x to (x sigma) eta."""
    out = {v: apply_subst(t, eta) for v, t in sigma.bindings.items()}
    for v, t in eta.bindings.items():
        if v not in out:
            out[v] = t
    return Substitution(out)


def match(pattern: Pattern, target: Pattern, bindings: dict[Variable, Pattern]) -> bool:
    """One-sided syntactic matching of term patterns.

    Variables of `pattern` are match variables; `bindings` accumulates their
    values and is extended in place.  Returns False on mismatch (bindings may
    then be partially extended; callers pass a scratch dict).
    """
    if isinstance(pattern, Var):
        seen = bindings.get(pattern.var)
        if seen is None:
            if isinstance(target, Var) and target.var.sort != pattern.var.sort:
                return False
            bindings[pattern.var] = target
            return True
        return seen == target
    if isinstance(pattern, App):
        return (
            isinstance(target, App)
            and target.symbol == pattern.symbol
            and len(target.args) == len(pattern.args)
            and all(match(p, t, bindings) for p, t in zip(pattern.args, target.args))
        )
    raise TypeError(f"not a term pattern: {pattern!r}")


def more_general(
    sigma: Substitution, eta: Substitution, probe_vars: Iterable[Variable]
) -> bool:
    """True iff some theta maps x.sigma onto x.eta for every probe variable."""
    bindings: dict[Variable, Pattern] = {}
    return all(
        match(apply_subst(Var(v), sigma), apply_subst(Var(v), eta), bindings)
        for v in probe_vars
    )
