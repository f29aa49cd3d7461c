"""Core handlers behind the HTTP endpoints.

Each handler takes a request model and returns a response model; domain
errors (parse failures, sort errors, budget overruns) propagate as
MlUnifyError for the callers to translate into HTTP 422 or CLI exit 1.
Semantic negatives (not unifiable, certificate rejected, not satisfied) are
in-band response statuses.
"""

from __future__ import annotations

from ..checking import CheckerConfig, verify
from ..encoding import format_axioms, generate_axioms
from ..errors import AmbiguousSort, MlUnifyError, UnassignedVariable
from ..patterns import free_vars, sort_of
from ..proofs import cert_from_json, cert_to_json, gen_stage1, gen_stage2
from ..semantics import (
    FiniteModel,
    eval_pattern,
    load_model,
    satisfies,
    semantic_equivalences_hold,
)
from ..syntax import format_pattern, parse_pattern, parse_signature
from ..unification import Failed, Solved, trace_to_json, unify
from ..substitution import sorted_items
from .schemas import (
    AxiomModel,
    AxiomsRequest,
    AxiomsResponse,
    CertificateModel,
    CertifyRequest,
    CertifyResponse,
    CheckRequest,
    CheckResponse,
    EvalRequest,
    EvalResponse,
    TraceEntry,
    UnifyRequest,
    UnifyResponse,
)


def _parse_terms(signature: str, term1: str, term2: str):
    sig = parse_signature(signature)
    try:
        t1 = parse_pattern(term1, sig)
        t2 = parse_pattern(term2, sig, expected=sort_of(t1, sig))
    except AmbiguousSort:
        # A bare variable on the left gets its sort from the other side.
        t2 = parse_pattern(term2, sig)
        t1 = parse_pattern(term1, sig, expected=sort_of(t2, sig))
    return sig, t1, t2


def do_unify(req: UnifyRequest) -> UnifyResponse:
    sig, t1, t2 = _parse_terms(req.signature, req.term1, req.term2)
    outcome = unify(t1, t2, sig)
    trace = [TraceEntry(**entry) for entry in trace_to_json(outcome.trace)]
    if isinstance(outcome, Solved):
        items = sorted_items(outcome.mgu)
        names = [v.name for v, _ in items]
        mgu = {
            v.name if names.count(v.name) == 1 else f"{v.name}:{v.sort.name}":
                format_pattern(t)
            for v, t in items
        }
        return UnifyResponse(status="solved", mgu=mgu, trace=trace)
    witness = (
        f"{format_pattern(outcome.witness[0])} = {format_pattern(outcome.witness[1])}"
    )
    return UnifyResponse(
        status="failed", reason=outcome.reason.value, witness=witness, trace=trace
    )


def _cert_model(cert) -> CertificateModel:
    return CertificateModel(**cert_to_json(cert))


def do_certify(req: CertifyRequest) -> CertifyResponse:
    sig, t1, t2 = _parse_terms(req.signature, req.term1, req.term2)
    outcome = unify(t1, t2, sig)
    if isinstance(outcome, Failed):
        return CertifyResponse(
            status="not-unifiable", reason=outcome.reason.value
        )
    stage1 = stage2 = None
    if req.stage in ("1", "both"):
        stage1 = _cert_model(gen_stage1(t1, t2, outcome, sig, expand=req.expand))
    if req.stage in ("2", "both"):
        stage2 = _cert_model(gen_stage2(t1, t2, outcome.mgu, sig, expand=req.expand))
    return CertifyResponse(status="ok", stage1=stage1, stage2=stage2)


def do_check(req: CheckRequest) -> CheckResponse:
    sig = parse_signature(req.signature)
    cert = cert_from_json(req.certificate.model_dump(), sig)
    config = CheckerConfig(
        generate_axioms(sig),
        allow_derived=req.allow_derived,
        tautology_budget=req.tautology_budget,
    )
    report = verify(cert, sig, config)
    return CheckResponse(
        ok=report.ok, failed_line=report.failed_line, reason=report.reason
    )


def _resolve_valuation(
    raw: dict[str, str], phi, model: FiniteModel
) -> dict:
    by_name = {}
    for v in free_vars(phi):
        by_name.setdefault(v.name, []).append(v)
        by_name.setdefault(f"{v.name}:{v.sort.name}", []).append(v)
    rho = {}
    for key, element in raw.items():
        matches = by_name.get(key, [])
        if len(matches) != 1:
            raise UnassignedVariable(
                f"valuation key {key!r} does not name exactly one free variable"
            )
        v = matches[0]
        if element not in model.carrier(v.sort):
            raise UnassignedVariable(
                f"{element!r} is not in the {v.sort.name} carrier"
            )
        rho[v] = element
    return rho


def do_eval(req: EvalRequest) -> EvalResponse:
    sig = parse_signature(req.signature)
    model = load_model(req.model, sig)
    if req.term1 is not None and req.term2 is not None:
        t1 = parse_pattern(req.term1, sig)
        t2 = parse_pattern(req.term2, sig)
        outcome = unify(t1, t2, sig)
        if isinstance(outcome, Failed):
            return EvalResponse(
                result="not-unifiable", detail=outcome.reason.value
            )
        ok = semantic_equivalences_hold(model, t1, t2, outcome.mgu)
        return EvalResponse(result="equivalent" if ok else "not-equivalent")
    if req.pattern is None:
        raise MlUnifyError("eval needs a pattern or a pair of terms")
    try:
        phi = parse_pattern(req.pattern, sig)
    except AmbiguousSort:
        if len(sig.sorts) != 1:
            raise
        phi = parse_pattern(req.pattern, sig, expected=next(iter(sig.sorts)))
    if req.valuation:
        rho = _resolve_valuation(req.valuation, phi, model)
        missing = free_vars(phi) - set(rho)
        if missing:
            names = ", ".join(sorted(v.name for v in missing))
            raise UnassignedVariable(f"unassigned variables: {names}")
        out = eval_pattern(model, rho, phi)
        return EvalResponse(result="set", elements=sorted(out))
    return EvalResponse(
        result="satisfied" if satisfies(model, phi) else "not-satisfied"
    )


def do_axioms(req: AxiomsRequest) -> AxiomsResponse:
    sig = parse_signature(req.signature)
    axiom_set = generate_axioms(sig)
    return AxiomsResponse(
        axioms=[
            AxiomModel(
                pattern=format_pattern(a.pattern, show_sorts=True),
                tag=a.tag.value,
                symbol=a.symbol,
            )
            for a in axiom_set.axioms
        ],
        text=format_axioms(axiom_set),
    )
