"""Finite models, valuation extension and exhaustive validity checking.

This is the brute-force oracle of the toolkit: patterns are evaluated to
element sets clause by clause, and satisfaction/implication/equivalence are
decided by enumerating every valuation of the free variables.  Carriers are
ordered lists of opaque element identifiers so enumeration is deterministic.

Definedness applications are evaluated structurally (full carrier iff the
argument matches something), which coincides with interpreting the reserved
symbol under its axiom but avoids materialising a powerset-valued
interpretation.
"""

from __future__ import annotations

import itertools
import os
import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import (
    CarrierTooLarge,
    ModelFormatError,
    NoInjectiveInterpretation,
    UnassignedVariable,
    UnknownSymbol,
)
from .patterns import (
    And,
    App,
    Exists,
    Not,
    Pattern,
    Signature,
    Sort,
    Var,
    Variable,
    free_vars,
    implies,
    make_signature,
    or_,
    sort_of,
)
from .substitution import Substitution, apply_subst
from .encoding import phi_of_subst

DEFAULT_BUDGET = 1_000_000


def valuation_budget() -> int:
    raw = os.environ.get("MLUNIFY_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


Valuation = dict[Variable, str]


@dataclass(frozen=True)
class FiniteModel:
    sig: Signature
    carriers: dict[Sort, tuple[str, ...]]
    interp: dict[str, dict[tuple[str, ...], frozenset[str]]]

    def carrier(self, sort: Sort) -> tuple[str, ...]:
        return self.carriers[sort]


def eval_pattern(model: FiniteModel, rho: Valuation, phi: Pattern) -> frozenset[str]:
    sig = model.sig
    if isinstance(phi, Var):
        value = rho.get(phi.var)
        if value is None:
            raise UnassignedVariable(f"no value for {phi.var}")
        return frozenset((value,))
    if isinstance(phi, App):
        if sig.is_definedness(phi.symbol):
            sym = sig.symbol(phi.symbol)
            inner = eval_pattern(model, rho, phi.args[0])
            return frozenset(model.carrier(sym.result)) if inner else frozenset()
        table = model.interp.get(phi.symbol)
        if table is None:
            raise UnknownSymbol(f"model does not interpret {phi.symbol}")
        arg_sets = [eval_pattern(model, rho, a) for a in phi.args]
        out: set[str] = set()
        for combo in itertools.product(*arg_sets):
            out |= table[combo]
        return frozenset(out)
    if isinstance(phi, Not):
        sort = sort_of(phi.arg, sig)
        return frozenset(model.carrier(sort)) - eval_pattern(model, rho, phi.arg)
    if isinstance(phi, And):
        return eval_pattern(model, rho, phi.left) & eval_pattern(model, rho, phi.right)
    if isinstance(phi, Exists):
        out = set()
        inner = dict(rho)
        for v in model.carrier(phi.bound.sort):
            inner[phi.bound] = v
            out |= eval_pattern(model, inner, phi.body)
        return frozenset(out)
    raise TypeError(f"not a pattern: {phi!r}")


def _valuations(
    model: FiniteModel, variables: Iterable[Variable], budget: Optional[int]
) -> Iterator[Valuation]:
    ordered = sorted(set(variables), key=lambda v: (v.name, v.sort.name))
    total = 1
    for v in ordered:
        total *= len(model.carrier(v.sort))
    limit = budget if budget is not None else valuation_budget()
    if total > limit:
        raise CarrierTooLarge(f"{total} valuations exceed the budget of {limit}")
    domains = [model.carrier(v.sort) for v in ordered]
    for combo in itertools.product(*domains):
        yield dict(zip(ordered, combo))


def satisfies(model: FiniteModel, phi: Pattern, budget: Optional[int] = None) -> bool:
    sort = sort_of(phi, model.sig)
    full = frozenset(model.carrier(sort))
    return all(
        eval_pattern(model, rho, phi) == full
        for rho in _valuations(model, free_vars(phi), budget)
    )


def implication_holds(
    model: FiniteModel, phi1: Pattern, phi2: Pattern, budget: Optional[int] = None
) -> bool:
    variables = free_vars(phi1) | free_vars(phi2)
    return all(
        eval_pattern(model, rho, phi1) <= eval_pattern(model, rho, phi2)
        for rho in _valuations(model, variables, budget)
    )


def equivalence_holds(
    model: FiniteModel, phi1: Pattern, phi2: Pattern, budget: Optional[int] = None
) -> bool:
    variables = free_vars(phi1) | free_vars(phi2)
    return all(
        eval_pattern(model, rho, phi1) == eval_pattern(model, rho, phi2)
        for rho in _valuations(model, variables, budget)
    )


def is_predicate_in(model: FiniteModel, phi: Pattern, budget: Optional[int] = None) -> bool:
    sort = sort_of(phi, model.sig)
    full = frozenset(model.carrier(sort))
    empty: frozenset[str] = frozenset()
    return all(
        eval_pattern(model, rho, phi) in (full, empty)
        for rho in _valuations(model, free_vars(phi), budget)
    )


# --- Model audits -----------------------------------------------------------

def audit_functional(model: FiniteModel) -> bool:
    return all(
        all(len(images) == 1 for images in model.interp[name].values())
        for name in model.sig.functional
    )


def audit_injective(model: FiniteModel) -> bool:
    for name in model.sig.injective:
        seen: set[frozenset[str]] = set()
        for images in model.interp[name].values():
            if images in seen:
                return False
            seen.add(images)
    return True


def audit_definedness(model: FiniteModel) -> bool:
    """The definedness axiom patterns hold by construction of the evaluator."""
    for inner in model.carriers:
        for outer in model.carriers:
            from .patterns import defined

            x = Var(Variable("x", inner))
            if not satisfies(model, defined(x, inner, outer)):
                return False
    return True


def audit_no_junk(model: FiniteModel, sort: Sort) -> bool:
    reached: set[str] = set()
    for name, sym in model.sig.symbols.items():
        if sym.result != sort:
            continue
        for images in model.interp[name].values():
            reached |= images
    return reached == set(model.carrier(sort))


def audit_no_confusion_different(model: FiniteModel) -> bool:
    names = sorted(model.sig.symbols)
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            sa, sb = model.sig.symbols[a], model.sig.symbols[b]
            if sa.result != sb.result:
                continue
            xs = tuple(Var(Variable(f"x{k}", s)) for k, s in enumerate(sa.arity))
            ys = tuple(Var(Variable(f"y{k}", s)) for k, s in enumerate(sb.arity))
            clash = Not(And(App(a, xs), App(b, ys)))
            if not satisfies(model, clash):
                return False
    return True


def audit_no_confusion_same(model: FiniteModel) -> bool:
    for name, sym in model.sig.symbols.items():
        xs = tuple(Var(Variable(f"x{k}", s)) for k, s in enumerate(sym.arity))
        ys = tuple(Var(Variable(f"y{k}", s)) for k, s in enumerate(sym.arity))
        merged = tuple(And(x, y) for x, y in zip(xs, ys))
        axiom = implies(And(App(name, xs), App(name, ys)), App(name, merged))
        if not satisfies(model, axiom):
            return False
    return True


# --- Specific models --------------------------------------------------------

def occurs_check_countermodel() -> FiniteModel:
    """One sort, one element, one unary symbol interpreted as the identity.

    In this model a variable and its own image under the symbol match the
    same element, so the conjunction of the two patterns is nonempty even
    though the terms fail the occurs check syntactically.
    """
    sig = make_signature(["s"], [("f", ["s"], "s")], functional=["f"], injective=["f"])
    carrier = ("a",)
    return FiniteModel(
        sig, {Sort("s"): carrier}, {"f": {("a",): frozenset(("a",))}}
    )


def random_injective_model(
    sig: Signature,
    max_carrier: int,
    seed: int,
    carrier_sizes: Optional[dict[Sort, int]] = None,
) -> FiniteModel:
    """A seeded model where functional symbols map to singletons and
    injective symbols have pairwise distinct images.

    Carriers default to `max_carrier` elements per sort; explicit sizes may
    be passed for signatures whose injectivity constraints need uneven
    carriers.  Raises NoInjectiveInterpretation when a symbol's argument
    space is larger than its result carrier.
    """
    rng = random.Random(seed)
    sizes = dict(carrier_sizes or {})
    for sort in sig.sorts:
        sizes.setdefault(sort, max_carrier)
    carriers = {
        sort: tuple(f"{sort.name.lower()}{i}" for i in range(sizes[sort]))
        for sort in sig.sorts
    }
    interp: dict[str, dict[tuple[str, ...], frozenset[str]]] = {}
    for name in sorted(sig.symbols):
        sym = sig.symbols[name]
        domain = list(itertools.product(*(carriers[s] for s in sym.arity)))
        result = carriers[sym.result]
        table: dict[tuple[str, ...], frozenset[str]] = {}
        if sig.is_injective(name) and sym.arity:
            if len(domain) > len(result):
                raise NoInjectiveInterpretation(
                    f"{name}: {len(domain)} argument tuples, {len(result)} targets"
                )
            images = rng.sample(result, len(domain))
            for combo, image in zip(domain, images):
                table[combo] = frozenset((image,))
        elif sig.is_functional(name):
            for combo in domain:
                table[combo] = frozenset((rng.choice(result),))
        else:
            for combo in domain:
                chosen = [e for e in result if rng.random() < 0.5]
                table[combo] = frozenset(chosen)
        interp[name] = table
    return FiniteModel(sig, carriers, interp)


# --- Soundness oracles ------------------------------------------------------

def semantic_equivalences_hold(
    model: FiniteModel,
    t1: Pattern,
    t2: Pattern,
    sigma: Substitution,
    budget: Optional[int] = None,
) -> bool:
    """The two soundness equalities for a most general unifier: the
    conjunction of both structures is equivalent to either structure
    conjoined with the substitution constraint."""
    sig = model.sig
    at = sort_of(t1, sig)
    phi = phi_of_subst(sigma, sig, at).pattern
    both = And(t1, t2)
    return equivalence_holds(model, both, And(t1, phi), budget) and equivalence_holds(
        model, both, And(t2, phi), budget
    )


def subst_constraint_equiv_holds(
    model: FiniteModel,
    t: Pattern,
    sigma: Substitution,
    budget: Optional[int] = None,
) -> bool:
    """t.sigma conjoined with the substitution constraint is equivalent to t
    conjoined with it, for any substitution."""
    sig = model.sig
    at = sort_of(t, sig)
    phi = phi_of_subst(sigma, sig, at).pattern
    return equivalence_holds(
        model, And(apply_subst(t, sigma), phi), And(t, phi), budget
    )


# --- Model files ------------------------------------------------------------

_CARRIER_RE = re.compile(
    r"^carrier\s+(?P<sort>[A-Za-z0-9_']+)\s*=\s*\{(?P<elems>[^}]*)\}\s*$"
)
_INTERP_RE = re.compile(
    r"^(?P<name>[A-Za-z0-9_']+)\s*(?:\((?P<args>[^)]*)\))?\s*=\s*\{(?P<elems>[^}]*)\}\s*$"
)


def _split(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def load_model(text: str, sig: Signature) -> FiniteModel:
    carriers: dict[Sort, tuple[str, ...]] = {}
    interp: dict[str, dict[tuple[str, ...], frozenset[str]]] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        m = _CARRIER_RE.match(line)
        if m:
            sort = sig.sort(m.group("sort"))
            elems = tuple(_split(m.group("elems")))
            if not elems:
                raise ModelFormatError(f"line {lineno}: empty carrier for {sort}")
            carriers[sort] = elems
            continue
        m = _INTERP_RE.match(line)
        if m:
            name = m.group("name")
            if name not in sig.symbols:
                raise ModelFormatError(f"line {lineno}: unknown symbol {name}")
            args = tuple(_split(m.group("args") or ""))
            images = frozenset(_split(m.group("elems")))
            interp.setdefault(name, {})[args] = images
            continue
        raise ModelFormatError(f"line {lineno}: cannot parse {raw_line!r}")
    for sort in sig.sorts:
        if sort not in carriers:
            raise ModelFormatError(f"no carrier declared for sort {sort}")
    for name in sorted(sig.symbols):
        sym = sig.symbols[name]
        table = interp.get(name, {})
        for combo in itertools.product(*(carriers[s] for s in sym.arity)):
            if combo not in table:
                shown = ", ".join(combo)
                raise ModelFormatError(f"missing interpretation {name}({shown})")
        interp[name] = table
    return FiniteModel(sig, carriers, interp)


def dump_model(model: FiniteModel) -> str:
    lines = []
    for sort in sorted(model.carriers, key=lambda s: s.name):
        inner = ", ".join(model.carrier(sort))
        lines.append(f"carrier {sort.name} = {{{inner}}}")
    for name in sorted(model.interp):
        for combo in sorted(model.interp[name]):
            images = ", ".join(sorted(model.interp[name][combo]))
            args = f"({', '.join(combo)})" if combo else ""
            lines.append(f"{name}{args} = {{{images}}}")
    return "\n".join(lines) + "\n"
