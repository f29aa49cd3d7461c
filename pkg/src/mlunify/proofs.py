"""Certificate generation for the two equivalence directions.

Stage 1 starts from the conjunction of both structures and follows the
unification trace through the four derived rules (delete, decomposition,
orient, elimination), after an initial step that turns the second structure
into an equality constraint.  Stage 2 starts from the structure constrained
by the unifier and rebuilds the original conjunction using only equality
introduction, equality elimination and propositional steps.

Each derived-rule use can also be expanded on the spot into its proof body
over the base rules, yielding certificates the checker accepts with derived
rules disabled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .encoding import AxiomTag, phi_of_problem, phi_of_subst
from .errors import BadInstantiation, NotMgu, NotSolved
from .patterns import (
    And,
    App,
    Pattern,
    Signature,
    Sort,
    Var,
    Variable,
    all_var_names,
    conjoin,
    defined,
    equal,
    fresh_variable,
    free_vars,
    implies,
    member,
    sort_of,
    subst_in_pattern,
    top,
)
from .substitution import Substitution, apply_subst, sorted_items
from .unification import Rule, Solved, TraceStep, UnificationProblem


# --- Justifications ---------------------------------------------------------

@dataclass(frozen=True)
class Hypothesis:
    pass


@dataclass(frozen=True)
class AxiomRef:
    tag: AxiomTag
    symbol: Optional[str] = None


@dataclass(frozen=True)
class Tautology:
    schema: str
    premises: tuple[int, ...] = ()


@dataclass(frozen=True)
class ModusPonens:
    antecedent: int
    implication: int


@dataclass(frozen=True)
class EqualityIntro:
    pass


@dataclass(frozen=True)
class EqualityElim:
    equality: int
    premise: int
    context: Pattern
    hole: Variable


@dataclass(frozen=True)
class MembershipEquality:
    premise: int


@dataclass(frozen=True)
class DefinednessDef:
    premise: int


@dataclass(frozen=True)
class DerivedDelta:
    delta: int  # 1 delete, 2 decomposition, 3 orient, 4 elimination
    premise: int


@dataclass(frozen=True)
class PropFpattForward:
    premise: int


@dataclass(frozen=True)
class PropFpattBackward:
    premise: int


@dataclass(frozen=True)
class EqSymmetry:
    premise: int


Justification = Union[
    Hypothesis,
    AxiomRef,
    Tautology,
    ModusPonens,
    EqualityIntro,
    EqualityElim,
    MembershipEquality,
    DefinednessDef,
    DerivedDelta,
    PropFpattForward,
    PropFpattBackward,
    EqSymmetry,
]

DERIVED_JUSTIFICATIONS = (DerivedDelta, PropFpattForward, PropFpattBackward, EqSymmetry)


@dataclass(frozen=True)
class ProofLine:
    index: int
    formula: Pattern
    justification: Justification


@dataclass(frozen=True)
class Certificate:
    hypotheses: tuple[Pattern, ...]
    lines: tuple[ProofLine, ...]
    conclusion: Pattern
    mode: str  # "stage1", "stage2" or "expansion"


class _Builder:
    def __init__(self, hypotheses: tuple[Pattern, ...]):
        self.hypotheses = hypotheses
        self.lines: list[ProofLine] = []

    def add(self, formula: Pattern, justification: Justification) -> int:
        index = len(self.lines) + 1
        self.lines.append(ProofLine(index, formula, justification))
        return index

    def last_formula(self) -> Pattern:
        return self.lines[-1].formula

    def done(self, mode: str) -> Certificate:
        return Certificate(self.hypotheses, tuple(self.lines), self.last_formula(), mode)


_DELTA_OF_RULE = {
    Rule.DELETE: 1,
    Rule.DECOMPOSITION: 2,
    Rule.ORIENT: 3,
    Rule.ELIMINATION: 4,
}


def _fresh_hole(sort: Sort, *patterns: Pattern) -> Variable:
    taken: set[str] = set()
    for p in patterns:
        taken |= all_var_names(p)
    return fresh_variable(Variable("hole", sort), taken | {"hole"})


def _replace_leftmost(t: Pattern, v: Variable, replacement: Pattern) -> tuple[Pattern, bool]:
    if isinstance(t, Var):
        return (replacement, True) if t.var == v else (t, False)
    if isinstance(t, App):
        args = list(t.args)
        for i, arg in enumerate(args):
            new, done = _replace_leftmost(arg, v, replacement)
            if done:
                args[i] = new
                return App(t.symbol, tuple(args)), True
        return t, False
    raise TypeError(f"not a term pattern: {t!r}")


def _problem_formula(
    t1: Pattern, problem: UnificationProblem, sig: Signature, at: Sort
) -> Pattern:
    if not problem.equations:
        return t1
    return And(t1, phi_of_problem(problem, sig, at).pattern)


# --- Derived-rule bodies ----------------------------------------------------
#
# Each emitter appends the proof body of one derived-rule instance to a
# builder.  `premise` is the line holding the rule's left-hand side; the
# return value is the line holding its right-hand side.

def _emit_delta1(b: _Builder, premise: int, phi: Pattern) -> int:
    return b.add(phi, Tautology("AND-ELIM", (premise,)))


def _emit_delta2(
    b: _Builder,
    premise: int,
    phi: Pattern,
    eq_pattern: Pattern,
    lhs: App,
    rhs: App,
    outer: Sort,
    sig: Signature,
) -> int:
    l_phi = b.add(phi, Tautology("AND-ELIM", (premise,)))
    l_eq = b.add(eq_pattern, Tautology("AND-ELIM", (premise,)))
    parts = [
        equal(a, bb, sort_of(a, sig), outer) for a, bb in zip(lhs.args, rhs.args)
    ]
    pointwise = conjoin(parts)
    axiom_line = b.add(
        implies(eq_pattern, pointwise), AxiomRef(AxiomTag.INJECTIVITY, lhs.symbol)
    )
    l_mp = b.add(pointwise, ModusPonens(l_eq, axiom_line))
    return b.add(And(phi, pointwise), Tautology("AND-INTRO", (l_phi, l_mp)))


def _emit_eq_symmetry(
    b: _Builder, premise: int, lhs: Pattern, rhs: Pattern, inner: Sort, outer: Sort
) -> int:
    refl = b.add(equal(lhs, lhs, inner, outer), EqualityIntro())
    hole = _fresh_hole(inner, lhs, rhs)
    context = equal(Var(hole), lhs, inner, outer)
    return b.add(
        equal(rhs, lhs, inner, outer), EqualityElim(premise, refl, context, hole)
    )


def _emit_delta3(
    b: _Builder,
    premise: int,
    phi: Pattern,
    lhs: Pattern,
    rhs: Pattern,
    inner: Sort,
    outer: Sort,
    expand: bool,
) -> int:
    l_phi = b.add(phi, Tautology("AND-ELIM", (premise,)))
    l_eq = b.add(equal(lhs, rhs, inner, outer), Tautology("AND-ELIM", (premise,)))
    if expand:
        l_sym = _emit_eq_symmetry(b, l_eq, lhs, rhs, inner, outer)
    else:
        l_sym = b.add(equal(rhs, lhs, inner, outer), EqSymmetry(l_eq))
    return b.add(
        And(phi, equal(rhs, lhs, inner, outer)), Tautology("AND-INTRO", (l_phi, l_sym))
    )


def _emit_delta4(
    b: _Builder,
    premise: int,
    phi: Pattern,
    x: Variable,
    t: Pattern,
    outer: Sort,
) -> int:
    eq_pattern = equal(Var(x), t, x.sort, outer)
    l_phi = b.add(phi, Tautology("AND-ELIM", (premise,)))
    l_eq = b.add(eq_pattern, Tautology("AND-ELIM", (premise,)))
    hole = _fresh_hole(x.sort, phi, t)
    context = subst_in_pattern(phi, Var(hole), x)
    result = subst_in_pattern(phi, t, x)
    l_sub = b.add(result, EqualityElim(l_eq, l_phi, context, hole))
    return b.add(And(result, eq_pattern), Tautology("AND-INTRO", (l_sub, l_eq)))


def _emit_prop_forward(
    b: _Builder, premise: int, phi: Pattern, phi2: Pattern, sort: Sort
) -> int:
    both = And(phi, phi2)
    defd = defined(both, sort, sort)
    l_def = b.add(defd, AxiomRef(AxiomTag.DEFINEDNESS))
    l_p1 = b.add(implies(defd, implies(both, defd)), Tautology("P1"))
    l_imp = b.add(implies(both, defd), ModusPonens(l_def, l_p1))
    l_mem = b.add(implies(both, member(phi, phi2, sort, sort)), DefinednessDef(l_imp))
    eq = equal(phi, phi2, sort, sort)
    l_eq = b.add(implies(both, eq), MembershipEquality(l_mem))
    l_left = b.add(implies(both, phi), Tautology("AND-ELIM"))
    l_both = b.add(
        implies(both, And(phi, eq)), Tautology("COMBINE", (l_eq, l_left))
    )
    return b.add(And(phi, eq), ModusPonens(premise, l_both))


def _emit_prop_backward(
    b: _Builder, premise: int, phi: Pattern, phi2: Pattern, sort: Sort
) -> int:
    eq = equal(phi, phi2, sort, sort)
    l_eq = b.add(eq, Tautology("AND-ELIM", (premise,)))
    l_left = b.add(phi, Tautology("AND-ELIM", (premise,)))
    hole = _fresh_hole(sort, phi, phi2)
    l_right = b.add(phi2, EqualityElim(l_eq, l_left, Var(hole), hole))
    return b.add(And(phi, phi2), Tautology("AND-INTRO", (l_left, l_right)))


# --- Stage 1 ----------------------------------------------------------------

def gen_stage1(
    t1: Pattern,
    t2: Pattern,
    outcome: Solved,
    sig: Signature,
    expand: bool = False,
) -> Certificate:
    if not isinstance(outcome, Solved):
        raise NotSolved("stage 1 certificates require a successful unification")
    at = sort_of(t1, sig)
    b = _Builder((And(t1, t2),))
    prev = b.add(And(t1, t2), Hypothesis())
    start = And(t1, equal(t1, t2, at, at))
    if expand:
        prev = _emit_prop_forward(b, prev, t1, t2, at)
    else:
        prev = b.add(start, PropFpattForward(prev))
    problem = UnificationProblem(((t1, t2),))
    for step in outcome.trace:
        target = _problem_formula(t1, step.result, sig, at)
        if expand:
            prev = _inline_delta_step(b, prev, t1, problem, step, target, sig, at)
        else:
            prev = b.add(target, DerivedDelta(_DELTA_OF_RULE[step.rule], prev))
        problem = step.result
    canonical = (
        And(t1, phi_of_subst(outcome.mgu, sig, at).pattern) if len(outcome.mgu) else t1
    )
    if canonical != b.last_formula():
        prev = b.add(canonical, Tautology("AC-REARRANGE", (prev,)))
    return b.done("stage1")


def _inline_delta_step(
    b: _Builder,
    prev: int,
    t1: Pattern,
    problem: UnificationProblem,
    step: TraceStep,
    target: Pattern,
    sig: Signature,
    at: Sort,
) -> int:
    index = problem.equations.index(step.selected)
    lhs, rhs = step.selected
    eq_pattern = equal(lhs, rhs, sort_of(lhs, sig), at)
    others = [
        equal(l, r, sort_of(l, sig), at)
        for i, (l, r) in enumerate(problem.equations)
        if i != index
    ]
    if step.rule is Rule.ELIMINATION:
        phi = conjoin(others)  # the structure is carried around the rule
    else:
        phi = conjoin([t1] + others)
    staged = And(phi, eq_pattern)
    line = prev
    if staged != b.last_formula():
        line = b.add(staged, Tautology("AC-REARRANGE", (prev,)))
    if step.rule is Rule.DELETE:
        line = _emit_delta1(b, line, phi)
    elif step.rule is Rule.DECOMPOSITION:
        assert isinstance(lhs, App) and isinstance(rhs, App)
        line = _emit_delta2(b, line, phi, eq_pattern, lhs, rhs, at, sig)
    elif step.rule is Rule.ORIENT:
        assert isinstance(rhs, Var)
        line = _emit_delta3(
            b, line, phi, lhs, rhs, sort_of(lhs, sig), at, expand=True
        )
    elif step.rule is Rule.ELIMINATION:
        assert isinstance(lhs, Var)
        line = _emit_delta4(b, line, phi, lhs.var, rhs, at)
    else:
        raise NotSolved(f"failure rule {step.rule} in a solved trace")
    if target != b.last_formula():
        premises = (line, prev) if step.rule is Rule.ELIMINATION else (line,)
        line = b.add(target, Tautology("AC-REARRANGE", premises))
    return line


# --- Stage 2 ----------------------------------------------------------------

def gen_stage2(
    t1: Pattern,
    t2: Pattern,
    sigma: Substitution,
    sig: Signature,
    expand: bool = False,
) -> Certificate:
    if apply_subst(t1, sigma) != apply_subst(t2, sigma):
        raise NotMgu("the substitution does not unify the two terms")
    at = sort_of(t1, sig)
    phi = phi_of_subst(sigma, sig, at).pattern
    b = _Builder((And(t1, phi),))
    hyp = b.add(And(t1, phi), Hypothesis())
    items = sorted_items(sigma)
    l_t1 = b.add(t1, Tautology("AND-ELIM", (hyp,)))
    binding_lines: dict[Variable, int] = {}
    if items:
        rest_line = b.add(phi, Tautology("AND-ELIM", (hyp,)))
        rest_pattern = phi
        remaining = list(items)
        while len(remaining) > 1:
            assert isinstance(rest_pattern, And)
            v = remaining[0][0]
            binding_lines[v] = b.add(
                rest_pattern.left, Tautology("AND-ELIM", (rest_line,))
            )
            rest_line = b.add(rest_pattern.right, Tautology("AND-ELIM", (rest_line,)))
            rest_pattern = rest_pattern.right
            remaining = remaining[1:]
        binding_lines[remaining[0][0]] = rest_line
    refl1 = b.add(equal(t1, t1, at, at), EqualityIntro())
    if t1 == t2 and not items:
        final_eq = refl1
    else:
        refl2 = b.add(equal(t2, t2, at, at), EqualityIntro())
        chain_ends = []
        for side, refl in ((t1, refl1), (t2, refl2)):
            current, line = side, refl
            while True:
                present = free_vars(current) & set(binding_lines)
                if not present:
                    break
                v = min(present, key=lambda w: (w.name, w.sort.name))
                replacement = sigma.get(v)
                hole = _fresh_hole(v.sort, current, side, replacement)
                holed, _ = _replace_leftmost(current, v, Var(hole))
                context = equal(holed, side, at, at)
                current, _ = _replace_leftmost(current, v, replacement)
                line = b.add(
                    equal(current, side, at, at),
                    EqualityElim(binding_lines[v], line, context, hole),
                )
            chain_ends.append((current, line))
        (u1, end1), (u2, end2) = chain_ends
        assert u1 == u2, "substitution chains must meet at the common instance"
        hole = _fresh_hole(at, t1, t2)
        context = equal(Var(hole), t2, at, at)
        final_eq = b.add(
            equal(t1, t2, at, at), EqualityElim(end1, end2, context, hole)
        )
    l_conj = b.add(
        And(t1, equal(t1, t2, at, at)), Tautology("AND-INTRO", (l_t1, final_eq))
    )
    if expand:
        _emit_prop_backward(b, l_conj, t1, t2, at)
    else:
        b.add(And(t1, t2), PropFpattBackward(l_conj))
    return b.done("stage2")


# --- Stand-alone derived-rule expansions ------------------------------------

def expand_derived_rule(rule: str, sig: Signature, **inst: object) -> Certificate:
    """The proof body of one derived-rule instance over the base rules.

    Rules: "delta1" (phi, t), "delta2" (phi, lhs, rhs), "delta3" (phi, lhs,
    x), "delta4" (phi, x, t), "prop-forward" / "prop-backward" (phi, phi2),
    "eq-symmetry" (lhs, rhs).  An `outer` sort may be supplied; it defaults
    to the sort of `phi` (or of the terms involved).
    """

    def need(name: str) -> object:
        if name not in inst:
            raise BadInstantiation(f"{rule} needs {name!r}")
        return inst[name]

    if rule == "delta1":
        phi, t = need("phi"), need("t")
        outer = inst.get("outer") or sort_of(phi, sig)
        hyp = And(phi, equal(t, t, sort_of(t, sig), outer))
        b = _Builder((hyp,))
        _emit_delta1(b, b.add(hyp, Hypothesis()), phi)
        return b.done("expansion")
    if rule == "delta2":
        phi, lhs, rhs = need("phi"), need("lhs"), need("rhs")
        if (
            not isinstance(lhs, App)
            or not isinstance(rhs, App)
            or lhs.symbol != rhs.symbol
            or not lhs.args
        ):
            raise BadInstantiation("delta2 needs two applications of one symbol")
        outer = inst.get("outer") or sort_of(phi, sig)
        eq_pattern = equal(lhs, rhs, sort_of(lhs, sig), outer)
        hyp = And(phi, eq_pattern)
        b = _Builder((hyp,))
        _emit_delta2(b, b.add(hyp, Hypothesis()), phi, eq_pattern, lhs, rhs, outer, sig)
        return b.done("expansion")
    if rule == "delta3":
        phi, lhs, x = need("phi"), need("lhs"), need("x")
        if not isinstance(lhs, App) or not isinstance(x, Var):
            raise BadInstantiation("delta3 orients an application against a variable")
        outer = inst.get("outer") or sort_of(phi, sig)
        hyp = And(phi, equal(lhs, x, sort_of(lhs, sig), outer))
        b = _Builder((hyp,))
        _emit_delta3(
            b, b.add(hyp, Hypothesis()), phi, lhs, x, sort_of(lhs, sig), outer, True
        )
        return b.done("expansion")
    if rule == "delta4":
        phi, x, t = need("phi"), need("x"), need("t")
        if not isinstance(x, Variable):
            raise BadInstantiation("delta4 needs a Variable to eliminate")
        if x in free_vars(t):
            raise BadInstantiation("delta4 requires the variable not to occur in t")
        outer = inst.get("outer") or sort_of(phi, sig)
        hyp = And(phi, equal(Var(x), t, x.sort, outer))
        b = _Builder((hyp,))
        _emit_delta4(b, b.add(hyp, Hypothesis()), phi, x, t, outer)
        return b.done("expansion")
    if rule in ("prop-forward", "prop-backward"):
        phi, phi2 = need("phi"), need("phi2")
        sort = sort_of(phi, sig)
        if sort != sort_of(phi2, sig):
            raise BadInstantiation("both patterns must share one sort")
        if rule == "prop-forward":
            hyp = And(phi, phi2)
            b = _Builder((hyp,))
            _emit_prop_forward(b, b.add(hyp, Hypothesis()), phi, phi2, sort)
        else:
            hyp = And(phi, equal(phi, phi2, sort, sort))
            b = _Builder((hyp,))
            _emit_prop_backward(b, b.add(hyp, Hypothesis()), phi, phi2, sort)
        return b.done("expansion")
    if rule == "eq-symmetry":
        lhs, rhs = need("lhs"), need("rhs")
        inner = sort_of(lhs, sig)
        outer = inst.get("outer") or inner
        hyp = equal(lhs, rhs, inner, outer)
        b = _Builder((hyp,))
        _emit_eq_symmetry(b, b.add(hyp, Hypothesis()), lhs, rhs, inner, outer)
        return b.done("expansion")
    raise BadInstantiation(f"unknown derived rule {rule!r}")


# --- Serialization ----------------------------------------------------------

def _variable_to_json(v: Variable) -> dict:
    return {"name": v.name, "sort": v.sort.name}


def _justification_to_json(j: Justification) -> dict:
    from .syntax import format_pattern

    if isinstance(j, Hypothesis):
        return {"rule": "hypothesis"}
    if isinstance(j, AxiomRef):
        return {"rule": "axiom", "tag": j.tag.value, "symbol": j.symbol}
    if isinstance(j, Tautology):
        return {"rule": "tautology", "schema": j.schema, "premises": list(j.premises)}
    if isinstance(j, ModusPonens):
        return {
            "rule": "modus-ponens",
            "antecedent": j.antecedent,
            "implication": j.implication,
        }
    if isinstance(j, EqualityIntro):
        return {"rule": "equality-intro"}
    if isinstance(j, EqualityElim):
        return {
            "rule": "equality-elim",
            "equality": j.equality,
            "premise": j.premise,
            "context": format_pattern(j.context, show_sorts=True),
            "hole": _variable_to_json(j.hole),
        }
    if isinstance(j, MembershipEquality):
        return {"rule": "membership-equality", "premise": j.premise}
    if isinstance(j, DefinednessDef):
        return {"rule": "definedness-def", "premise": j.premise}
    if isinstance(j, DerivedDelta):
        return {"rule": "derived-delta", "delta": j.delta, "premise": j.premise}
    if isinstance(j, PropFpattForward):
        return {"rule": "prop-fpatt-forward", "premise": j.premise}
    if isinstance(j, PropFpattBackward):
        return {"rule": "prop-fpatt-backward", "premise": j.premise}
    if isinstance(j, EqSymmetry):
        return {"rule": "eq-symmetry", "premise": j.premise}
    raise TypeError(f"unknown justification {j!r}")


def _justification_from_json(data: dict, sig: Signature) -> Justification:
    from .errors import UnsupportedRule
    from .syntax import parse_pattern

    rule = data.get("rule")
    if rule == "hypothesis":
        return Hypothesis()
    if rule == "axiom":
        return AxiomRef(AxiomTag(data["tag"]), data.get("symbol"))
    if rule == "tautology":
        return Tautology(data["schema"], tuple(data.get("premises", ())))
    if rule == "modus-ponens":
        return ModusPonens(data["antecedent"], data["implication"])
    if rule == "equality-intro":
        return EqualityIntro()
    if rule == "equality-elim":
        hole = Variable(data["hole"]["name"], Sort(data["hole"]["sort"]))
        return EqualityElim(
            data["equality"],
            data["premise"],
            parse_pattern(data["context"], sig),
            hole,
        )
    if rule == "membership-equality":
        return MembershipEquality(data["premise"])
    if rule == "definedness-def":
        return DefinednessDef(data["premise"])
    if rule == "derived-delta":
        return DerivedDelta(data["delta"], data["premise"])
    if rule == "prop-fpatt-forward":
        return PropFpattForward(data["premise"])
    if rule == "prop-fpatt-backward":
        return PropFpattBackward(data["premise"])
    if rule == "eq-symmetry":
        return EqSymmetry(data["premise"])
    raise UnsupportedRule(f"unknown proof rule {rule!r}")


def cert_to_json(cert: Certificate) -> dict:
    from .syntax import format_pattern

    return {
        "mode": cert.mode,
        "hypotheses": [format_pattern(h, show_sorts=True) for h in cert.hypotheses],
        "lines": [
            {
                "index": line.index,
                "formula": format_pattern(line.formula, show_sorts=True),
                "justification": _justification_to_json(line.justification),
            }
            for line in cert.lines
        ],
        "conclusion": format_pattern(cert.conclusion, show_sorts=True),
    }


def cert_from_json(data: dict, sig: Signature) -> Certificate:
    from .syntax import parse_pattern

    lines = tuple(
        ProofLine(
            entry["index"],
            parse_pattern(entry["formula"], sig),
            _justification_from_json(entry["justification"], sig),
        )
        for entry in data["lines"]
    )
    return Certificate(
        tuple(parse_pattern(h, sig) for h in data["hypotheses"]),
        lines,
        parse_pattern(data["conclusion"], sig),
        data.get("mode", "stage1"),
    )


def describe_justification(j: Justification) -> str:
    if isinstance(j, Hypothesis):
        return "hypothesis"
    if isinstance(j, AxiomRef):
        return f"axiom {j.tag.value}" + (f"({j.symbol})" if j.symbol else "")
    if isinstance(j, Tautology):
        refs = ", ".join(str(p) for p in j.premises)
        return f"tautology {j.schema}" + (f" from {refs}" if refs else "")
    if isinstance(j, ModusPonens):
        return f"modus ponens {j.antecedent}, {j.implication}"
    if isinstance(j, EqualityIntro):
        return "equality intro"
    if isinstance(j, EqualityElim):
        return f"equality elim {j.equality} in {j.premise}"
    if isinstance(j, MembershipEquality):
        return f"membership as equality from {j.premise}"
    if isinstance(j, DefinednessDef):
        return f"membership definition from {j.premise}"
    if isinstance(j, DerivedDelta):
        names = {1: "delete", 2: "decomposition", 3: "orient", 4: "elimination"}
        return f"{names[j.delta]} from {j.premise}"
    if isinstance(j, PropFpattForward):
        return f"conjunction as constraint from {j.premise}"
    if isinstance(j, PropFpattBackward):
        return f"constraint as conjunction from {j.premise}"
    if isinstance(j, EqSymmetry):
        return f"equality symmetry from {j.premise}"
    return repr(j)


def format_certificate(cert: Certificate) -> str:
    from .syntax import format_pattern

    out = [f"# {cert.mode} certificate"]
    for h in cert.hypotheses:
        out.append(f"hypothesis: {format_pattern(h, show_sorts=True)}")
    width = max(len(str(line.index)) for line in cert.lines)
    for line in cert.lines:
        out.append(
            f"{str(line.index).rjust(width)}. "
            f"{format_pattern(line.formula, show_sorts=True)}"
            f"    [{describe_justification(line.justification)}]"
        )
    return "\n".join(out) + "\n"
