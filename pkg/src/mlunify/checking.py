"""Independent verification of equivalence certificates.

The checker re-derives nothing from traces: it validates each proof line
against its justification alone.  Propositional steps are checked by truth
tables over abstracted atoms, equational steps by exact shape checks, and
axiom uses by first-order instance matching against a configured axiom set.
Derived-rule shortcuts can be disabled, in which case only fully expanded
certificates pass.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .encoding import AxiomSet, AxiomTag, generate_axioms
from .errors import MlUnifyError, TautologyBudgetExceeded, UnsupportedRule
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
    conjoin,
    conjuncts,
    equal,
    free_vars,
    implies,
    is_term_pattern,
    match_defined,
    match_equal,
    match_member,
    match_top,
    parse_definedness_symbol_name,
    sort_of,
    subst_in_pattern,
)
from .proofs import (
    AxiomRef,
    Certificate,
    DefinednessDef,
    DerivedDelta,
    EqSymmetry,
    EqualityElim,
    EqualityIntro,
    Hypothesis,
    MembershipEquality,
    ModusPonens,
    ProofLine,
    PropFpattBackward,
    PropFpattForward,
    Tautology,
)

DEFAULT_TAUTOLOGY_BUDGET = 16


@dataclass(frozen=True)
class CheckerConfig:
    axiom_set: AxiomSet
    allow_derived: bool = True
    tautology_budget: int = DEFAULT_TAUTOLOGY_BUDGET


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    failed_line: Optional[int] = None
    reason: str = ""


class _Reject(MlUnifyError):
    """Internal signal: the current line does not follow from its justification."""


# --- Propositional tautology checking ---------------------------------------

def _collect_atoms(phi: Pattern, atoms: list[Pattern]) -> None:
    if match_top(phi) is not None:
        return
    if isinstance(phi, Not):
        _collect_atoms(phi.arg, atoms)
    elif isinstance(phi, And):
        _collect_atoms(phi.left, atoms)
        _collect_atoms(phi.right, atoms)
    elif phi not in atoms:
        atoms.append(phi)


def _eval_prop(phi: Pattern, assignment: dict[Pattern, bool]) -> bool:
    if match_top(phi) is not None:
        return True
    if isinstance(phi, Not):
        return not _eval_prop(phi.arg, assignment)
    if isinstance(phi, And):
        return _eval_prop(phi.left, assignment) and _eval_prop(phi.right, assignment)
    return assignment[phi]


def check_tautology(phi: Pattern, budget: int = DEFAULT_TAUTOLOGY_BUDGET) -> bool:
    """True iff the pattern is propositionally valid over abstracted atoms.

    Maximal subpatterns that are neither negations nor conjunctions become
    boolean atoms (the top constant is recognized as true); the formula is
    then evaluated under every assignment.
    """
    atoms: list[Pattern] = []
    _collect_atoms(phi, atoms)
    if len(atoms) > budget:
        raise TautologyBudgetExceeded(
            f"{len(atoms)} atoms exceed the truth-table budget of {budget}"
        )
    for values in itertools.product((False, True), repeat=len(atoms)):
        if not _eval_prop(phi, dict(zip(atoms, values))):
            return False
    return True


# --- Axiom instance matching ------------------------------------------------

def _both_definedness(a: str, b: str) -> bool:
    pa, pb = parse_definedness_symbol_name(a), parse_definedness_symbol_name(b)
    # Outer sorts of definedness applications may differ between an axiom as
    # stated and its use site; only the inner sort is significant.
    return pa is not None and pb is not None and pa[0] == pb[0]


def _match_instance(
    axiom: Pattern,
    inst: Pattern,
    sig: Signature,
    bindings: dict[Variable, Pattern],
    bound: dict[Variable, Variable],
) -> bool:
    if isinstance(axiom, Var):
        v = axiom.var
        if v in bound:
            return isinstance(inst, Var) and inst.var == bound[v]
        if v in bindings:
            return bindings[v] == inst
        try:
            if sort_of(inst, sig) != v.sort:
                return False
        except MlUnifyError:
            return False
        bindings[v] = inst
        return True
    if isinstance(axiom, App):
        if not isinstance(inst, App) or len(axiom.args) != len(inst.args):
            return False
        if axiom.symbol != inst.symbol and not _both_definedness(
            axiom.symbol, inst.symbol
        ):
            return False
        return all(
            _match_instance(a, i, sig, bindings, bound)
            for a, i in zip(axiom.args, inst.args)
        )
    if isinstance(axiom, Not):
        return isinstance(inst, Not) and _match_instance(
            axiom.arg, inst.arg, sig, bindings, bound
        )
    if isinstance(axiom, And):
        return (
            isinstance(inst, And)
            and _match_instance(axiom.left, inst.left, sig, bindings, bound)
            and _match_instance(axiom.right, inst.right, sig, bindings, bound)
        )
    if isinstance(axiom, Exists):
        if not isinstance(inst, Exists) or axiom.bound.sort != inst.bound.sort:
            return False
        inner = dict(bound)
        inner[axiom.bound] = inst.bound
        return _match_instance(axiom.body, inst.body, sig, bindings, inner)
    return False


def is_axiom_instance(formula: Pattern, axiom: Pattern, sig: Signature) -> bool:
    return _match_instance(axiom, formula, sig, {}, {})


# --- Per-justification checks -----------------------------------------------

def _parsed_equations(parts: list[Pattern]) -> list[tuple[Pattern, Pattern, Sort, Sort]]:
    out = []
    for p in parts:
        m = match_equal(p)
        if m is None:
            raise _Reject("constraint conjunct is not an equality")
        out.append(m)
    return out


def _check_delta(
    delta: int, prev: Pattern, cur: Pattern, sig: Signature, config: CheckerConfig
) -> None:
    prev_parts = conjuncts(prev)
    cur_parts = conjuncts(cur)
    head = prev_parts[0]
    if not is_term_pattern(head, sig):
        raise _Reject("constrained pattern does not start with a structure")
    if not cur_parts or cur_parts[0] != head:
        raise _Reject("derived rules must not change the structural component")
    prev_eqs = _parsed_equations(prev_parts[1:])
    cur_raw = cur_parts[1:]
    prev_raw = prev_parts[1:]
    for j, (lhs, rhs, inner, outer) in enumerate(prev_eqs):
        if delta == 1:
            if lhs == rhs and cur_raw == prev_raw[:j] + prev_raw[j + 1 :]:
                return
        elif delta == 2:
            if (
                isinstance(lhs, App)
                and isinstance(rhs, App)
                and lhs.symbol == rhs.symbol
                and len(lhs.args) == len(rhs.args)
                and lhs.args
            ):
                if not any(
                    a.symbol == lhs.symbol
                    for a in config.axiom_set.with_tag(AxiomTag.INJECTIVITY)
                ):
                    continue
                expected = [
                    equal(a, b, sort_of(a, sig), outer)
                    for a, b in zip(lhs.args, rhs.args)
                ]
                if cur_raw == prev_raw[:j] + expected + prev_raw[j + 1 :]:
                    return
        elif delta == 3:
            if isinstance(lhs, App) and isinstance(rhs, Var):
                flipped = equal(rhs, lhs, inner, outer)
                if cur_raw == prev_raw[:j] + [flipped] + prev_raw[j + 1 :]:
                    return
        elif delta == 4:
            if isinstance(lhs, Var) and lhs.var not in free_vars(rhs):
                expected = [
                    e if i == j else subst_in_pattern(e, rhs, lhs.var)
                    for i, e in enumerate(prev_raw)
                ]
                if cur_raw == expected:
                    return
        else:
            raise _Reject(f"unknown derived rule delta{delta}")
    raise _Reject(f"no equation supports a delta{delta} step to this line")


def _single_member_equal_rewrite(p: Pattern, q: Pattern, sig: Signature) -> int:
    """Number of membership/equality rewrites turning p into q, or -1."""

    def rel(a: Pattern, b: Pattern) -> bool:
        mm, me = match_member(a), match_equal(b)
        return (
            mm is not None
            and me is not None
            and mm[0] == me[0]
            and mm[1] == me[1]
            and mm[2] == me[2]
            and mm[3] == me[3]
            and is_term_pattern(mm[0], sig)
            and is_term_pattern(mm[1], sig)
        )

    if p == q:
        return 0
    if rel(p, q) or rel(q, p):
        return 1
    if isinstance(p, App) and isinstance(q, App):
        if p.symbol != q.symbol or len(p.args) != len(q.args):
            return -1
        total = 0
        for a, b in zip(p.args, q.args):
            n = _single_member_equal_rewrite(a, b, sig)
            if n < 0:
                return -1
            total += n
        return total
    if isinstance(p, Not) and isinstance(q, Not):
        return _single_member_equal_rewrite(p.arg, q.arg, sig)
    if isinstance(p, And) and isinstance(q, And):
        left = _single_member_equal_rewrite(p.left, q.left, sig)
        right = _single_member_equal_rewrite(p.right, q.right, sig)
        return -1 if left < 0 or right < 0 else left + right
    if isinstance(p, Exists) and isinstance(q, Exists):
        if p.bound != q.bound:
            return -1
        return _single_member_equal_rewrite(p.body, q.body, sig)
    return -1


def _require(condition: bool, reason: str) -> None:
    if not condition:
        raise _Reject(reason)


def _check_line(
    line: ProofLine,
    cert: Certificate,
    lines_by_index: dict[int, ProofLine],
    sig: Signature,
    config: CheckerConfig,
) -> None:
    def ref(i: int) -> Pattern:
        if not isinstance(i, int) or i < 1 or i >= line.index:
            raise _Reject(f"reference to line {i} is out of range")
        return lines_by_index[i].formula

    j = line.justification
    if isinstance(j, DerivedDelta | PropFpattForward | PropFpattBackward | EqSymmetry):
        if not config.allow_derived:
            raise _Reject("derived rules are disabled in this configuration")
    if isinstance(j, Hypothesis):
        _require(line.formula in cert.hypotheses, "formula is not a hypothesis")
    elif isinstance(j, AxiomRef):
        candidates = [
            a
            for a in config.axiom_set.with_tag(j.tag)
            if j.symbol is None or a.symbol == j.symbol
        ]
        _require(
            any(is_axiom_instance(line.formula, a.pattern, sig) for a in candidates),
            f"not an instance of any {j.tag.value} axiom in the configured set",
        )
    elif isinstance(j, Tautology):
        premises = [ref(i) for i in j.premises]
        target = (
            implies(conjoin(premises), line.formula) if premises else line.formula
        )
        _require(
            check_tautology(target, config.tautology_budget),
            "not a propositional tautology over its premises",
        )
    elif isinstance(j, ModusPonens):
        _require(
            ref(j.implication) == implies(ref(j.antecedent), line.formula),
            "implication line does not match antecedent and conclusion",
        )
    elif isinstance(j, EqualityIntro):
        m = match_equal(line.formula)
        _require(
            m is not None and m[0] == m[1],
            "not a reflexive equality",
        )
    elif isinstance(j, EqualityElim):
        m = match_equal(ref(j.equality))
        _require(m is not None, "referenced line is not an equality")
        lhs, rhs, _inner, _outer = m
        _require(
            subst_in_pattern(j.context, lhs, j.hole) == ref(j.premise),
            "context with the left side plugged in does not match the premise",
        )
        _require(
            subst_in_pattern(j.context, rhs, j.hole) == line.formula,
            "context with the right side plugged in does not match this line",
        )
    elif isinstance(j, MembershipEquality):
        _require(
            _single_member_equal_rewrite(ref(j.premise), line.formula, sig) == 1,
            "not a single membership/equality rewrite of the premise",
        )
    elif isinstance(j, DefinednessDef):
        _require(
            line.formula == ref(j.premise),
            "membership unfolds to exactly the definedness form of the premise",
        )
    elif isinstance(j, DerivedDelta):
        _check_delta(j.delta, ref(j.premise), line.formula, sig, config)
    elif isinstance(j, PropFpattForward):
        prev = ref(j.premise)
        _require(isinstance(prev, And), "premise is not a conjunction")
        a, b = prev.left, prev.right
        _require(
            is_term_pattern(a, sig) and is_term_pattern(b, sig),
            "both conjuncts must be structural term patterns",
        )
        s = sort_of(a, sig)
        _require(s == sort_of(b, sig), "conjuncts must share a sort")
        _require(
            any(
                (m_ax := match_defined(x.pattern)) is not None and m_ax[1] == s
                for x in config.axiom_set.with_tag(AxiomTag.DEFINEDNESS)
            ),
            "no definedness axiom for this sort in the configured set",
        )
        _require(
            line.formula == And(a, equal(a, b, s, s)),
            "conclusion must constrain the first conjunct by their equality",
        )
    elif isinstance(j, PropFpattBackward):
        prev = ref(j.premise)
        _require(
            isinstance(prev, And) and isinstance(line.formula, And),
            "premise and conclusion must be conjunctions",
        )
        a, b = line.formula.left, line.formula.right
        _require(
            is_term_pattern(a, sig) and is_term_pattern(b, sig),
            "both conjuncts must be structural term patterns",
        )
        m = match_equal(prev.right)
        _require(
            prev.left == a and m is not None and m[0] == a and m[1] == b,
            "premise must constrain the first conjunct by the equality",
        )
        _require(
            m[2] == sort_of(a, sig), "equality inner sort must match the terms"
        )
    elif isinstance(j, EqSymmetry):
        m = match_equal(ref(j.premise))
        _require(m is not None, "premise is not an equality")
        _require(
            line.formula == equal(m[1], m[0], m[2], m[3]),
            "conclusion is not the flipped premise equality",
        )
    else:
        raise UnsupportedRule(f"justification {type(j).__name__} is not supported")


def verify(
    cert: Certificate, sig: Signature, config: Optional[CheckerConfig] = None
) -> CheckReport:
    if config is None:
        config = CheckerConfig(generate_axioms(sig))
    try:
        for h in cert.hypotheses:
            sort_of(h, sig)
    except MlUnifyError as e:
        return CheckReport(False, None, f"ill-sorted hypothesis: {e}")
    lines_by_index: dict[int, ProofLine] = {}
    expected = 1
    for line in cert.lines:
        if line.index != expected:
            return CheckReport(False, line.index, "line indices must be 1, 2, ...")
        expected += 1
        try:
            sort_of(line.formula, sig)
            _check_line(line, cert, lines_by_index, sig, config)
        except UnsupportedRule:
            raise
        except MlUnifyError as e:
            return CheckReport(False, line.index, str(e))
        lines_by_index[line.index] = line
    if not cert.lines:
        return CheckReport(False, None, "certificate has no lines")
    if cert.conclusion != cert.lines[-1].formula:
        return CheckReport(False, None, "conclusion differs from the last line")
    return CheckReport(True)
