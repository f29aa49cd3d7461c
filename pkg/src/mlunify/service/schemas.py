"""Request/response models shared by the HTTP service and the CLI."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class UnifyRequest(BaseModel):
    signature: str
    term1: str
    term2: str


class TraceEntry(BaseModel):
    rule: str
    equation: str
    problem_after: list[str]


class UnifyResponse(BaseModel):
    status: Literal["solved", "failed"]
    mgu: Optional[dict[str, str]] = None
    reason: Optional[str] = None
    witness: Optional[str] = None
    trace: list[TraceEntry] = Field(default_factory=list)


class ProofLineModel(BaseModel):
    index: int
    formula: str
    justification: dict


class CertificateModel(BaseModel):
    mode: str
    hypotheses: list[str]
    lines: list[ProofLineModel]
    conclusion: str


class CertifyRequest(BaseModel):
    signature: str
    term1: str
    term2: str
    stage: Literal["1", "2", "both"] = "both"
    expand: bool = False


class CertifyResponse(BaseModel):
    status: Literal["ok", "not-unifiable"]
    reason: Optional[str] = None
    stage1: Optional[CertificateModel] = None
    stage2: Optional[CertificateModel] = None


class CheckRequest(BaseModel):
    signature: str
    certificate: CertificateModel
    allow_derived: bool = True
    tautology_budget: int = 16


class CheckResponse(BaseModel):
    ok: bool
    failed_line: Optional[int] = None
    reason: str = ""


class EvalRequest(BaseModel):
    signature: str
    model: str
    pattern: Optional[str] = None
    valuation: dict[str, str] = Field(default_factory=dict)
    # When both terms are given the request runs the unification-soundness
    # oracle on this model instead of evaluating `pattern`.
    term1: Optional[str] = None
    term2: Optional[str] = None


class EvalResponse(BaseModel):
    result: Literal[
        "set",
        "satisfied",
        "not-satisfied",
        "equivalent",
        "not-equivalent",
        "not-unifiable",
    ]
    elements: Optional[list[str]] = None
    detail: Optional[str] = None


class AxiomModel(BaseModel):
    pattern: str
    tag: str
    symbol: Optional[str] = None


class AxiomsRequest(BaseModel):
    signature: str


class AxiomsResponse(BaseModel):
    axioms: list[AxiomModel]
    text: str
