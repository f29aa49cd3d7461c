"""Command-line front end.

Thin client over the service handlers: every subcommand builds the same
request model the HTTP API accepts and either calls the handler in process
(default) or posts it to a running server (`--server URL`).

Exit codes: 0 success, 2 semantic failure (not unifiable, not satisfied,
certificate rejected at check is 1 per the check report contract), 1 usage
or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import MlUnifyError
from .service import handlers
from .service.schemas import (
    AxiomsRequest,
    CertificateModel,
    CertifyRequest,
    CheckRequest,
    EvalRequest,
    UnifyRequest,
)


def _call(args: argparse.Namespace, path: str, handler, request):
    if getattr(args, "server", None):
        import httpx

        response = httpx.post(
            args.server.rstrip("/") + path, json=request.model_dump(), timeout=60.0
        )
        if response.status_code == 422:
            raise MlUnifyError(response.json().get("detail", "request rejected"))
        response.raise_for_status()
        return _response_model(handler).model_validate(response.json())
    return handler(request)


def _response_model(handler):
    model = handler.__annotations__["return"]
    if isinstance(model, str):  # postponed annotations
        from .service import schemas

        model = getattr(schemas, model)
    return model


def _read(path: str) -> str:
    return Path(path).read_text()


def cmd_unify(args: argparse.Namespace) -> int:
    req = UnifyRequest(
        signature=_read(args.signature), term1=args.term1, term2=args.term2
    )
    res = _call(args, "/unify", handlers.do_unify, req)
    if res.status == "solved":
        inner = ", ".join(f"{k} -> {v}" for k, v in res.mgu.items())
        print("MGU: {" + inner + "}")
        code = 0
    else:
        print(f"FAIL: {res.reason} at {res.witness}")
        code = 2
    if args.trace:
        print(json.dumps([t.model_dump() for t in res.trace], indent=2))
    return code


def cmd_certify(args: argparse.Namespace) -> int:
    req = CertifyRequest(
        signature=_read(args.signature),
        term1=args.term1,
        term2=args.term2,
        stage=args.stage,
        expand=args.expand,
    )
    res = _call(args, "/certify", handlers.do_certify, req)
    if res.status != "ok":
        print(f"FAIL: {res.reason}", file=sys.stderr)
        return 2
    from .proofs import cert_from_json, format_certificate
    from .syntax import parse_signature

    sig = parse_signature(req.signature)
    for name, model in (("stage1", res.stage1), ("stage2", res.stage2)):
        if model is None:
            continue
        data = model.model_dump()
        json_path = Path(f"{args.out}.{name}.json")
        text_path = Path(f"{args.out}.{name}.txt")
        json_path.write_text(json.dumps(data, indent=2) + "\n")
        text_path.write_text(format_certificate(cert_from_json(data, sig)))
        print(f"wrote {json_path} and {text_path}")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    cert_data = json.loads(_read(args.certificate))
    req = CheckRequest(
        signature=_read(args.signature),
        certificate=CertificateModel(**cert_data),
        allow_derived=not args.no_derived,
        tautology_budget=args.tautology_budget,
    )
    res = _call(args, "/check", handlers.do_check, req)
    print(res.model_dump_json(indent=2))
    return 0 if res.ok else 1


def cmd_eval(args: argparse.Namespace) -> int:
    valuation = {}
    for item in args.valuation or []:
        if "=" not in item:
            raise MlUnifyError(f"valuation entries look like x=element, got {item!r}")
        key, _, value = item.partition("=")
        valuation[key.strip()] = value.strip()
    term1 = term2 = None
    if args.soundness:
        term1, term2 = args.soundness
    req = EvalRequest(
        signature=_read(args.signature),
        model=_read(args.model),
        pattern=args.pattern,
        valuation=valuation,
        term1=term1,
        term2=term2,
    )
    res = _call(args, "/eval", handlers.do_eval, req)
    if res.result == "set":
        print("{" + ", ".join(res.elements) + "}")
        return 0
    if res.result == "satisfied":
        print("SATISFIED")
        return 0
    if res.result == "not-satisfied":
        print("NOT SATISFIED")
        return 2
    if res.result == "equivalent":
        print("EQUIVALENT")
        return 0
    if res.result == "not-equivalent":
        print("NOT EQUIVALENT")
        return 2
    print(f"FAIL: {res.detail}", file=sys.stderr)
    return 2


def cmd_axioms(args: argparse.Namespace) -> int:
    req = AxiomsRequest(signature=_read(args.signature))
    res = _call(args, "/axioms", handlers.do_axioms, req)
    print(res.text, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlunify",
        description="Unification with matching-logic equivalence certificates.",
    )
    parser.add_argument(
        "--server", help="base URL of a running service; default is in-process"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("unify", help="compute the most general unifier")
    p.add_argument("signature", help="signature file")
    p.add_argument("term1")
    p.add_argument("term2")
    p.add_argument("--trace", action="store_true", help="print the rule trace JSON")
    p.set_defaults(func=cmd_unify)

    p = sub.add_parser("certify", help="generate equivalence certificates")
    p.add_argument("signature")
    p.add_argument("term1")
    p.add_argument("term2")
    p.add_argument("--stage", choices=["1", "2", "both"], default="both")
    p.add_argument(
        "--expand",
        action="store_true",
        help="inline derived-rule bodies into base justifications",
    )
    p.add_argument("--out", default="certificate", help="output file prefix")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("check", help="verify a certificate")
    p.add_argument("certificate", help="certificate JSON file")
    p.add_argument("signature")
    p.add_argument(
        "--no-derived", action="store_true", help="reject derived-rule shortcuts"
    )
    p.add_argument("--tautology-budget", type=int, default=16)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="evaluate a pattern in a finite model")
    p.add_argument("signature")
    p.add_argument("model", help="model file")
    p.add_argument("pattern", nargs="?", help="pattern to evaluate")
    p.add_argument(
        "--valuation",
        action="append",
        metavar="x=element",
        help="assign a free variable (repeatable); omit to check satisfaction",
    )
    p.add_argument(
        "--soundness",
        nargs=2,
        metavar=("TERM1", "TERM2"),
        help="check the unification-soundness equivalences for two terms",
    )
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("axioms", help="print the generated axiom set")
    p.add_argument("signature")
    p.set_defaults(func=cmd_axioms)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MlUnifyError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
