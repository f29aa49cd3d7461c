"""FastAPI application exposing the toolkit over HTTP."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..errors import MlUnifyError
from . import handlers
from .schemas import (
    AxiomsRequest,
    AxiomsResponse,
    CertifyRequest,
    CertifyResponse,
    CheckRequest,
    CheckResponse,
    EvalRequest,
    EvalResponse,
    UnifyRequest,
    UnifyResponse,
)

app = FastAPI(
    title="mlunify",
    description=(
        "Syntactic unification with equivalence certificates, predicate "
        "encodings and finite-model evaluation."
    ),
)


@app.post("/unify", response_model=UnifyResponse)
def unify_endpoint(req: UnifyRequest) -> UnifyResponse:
    return _run(handlers.do_unify, req)


@app.post("/certify", response_model=CertifyResponse)
def certify_endpoint(req: CertifyRequest) -> CertifyResponse:
    return _run(handlers.do_certify, req)


@app.post("/check", response_model=CheckResponse)
def check_endpoint(req: CheckRequest) -> CheckResponse:
    return _run(handlers.do_check, req)


@app.post("/eval", response_model=EvalResponse)
def eval_endpoint(req: EvalRequest) -> EvalResponse:
    return _run(handlers.do_eval, req)


@app.post("/axioms", response_model=AxiomsResponse)
def axioms_endpoint(req: AxiomsRequest) -> AxiomsResponse:
    return _run(handlers.do_axioms, req)


def _run(handler, req):
    try:
        return handler(req)
    except MlUnifyError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e
