"""Thin command-line client for the service layer.

Every subcommand builds the same pydantic request model the HTTP endpoint
accepts and either calls the handler in-process (default) or POSTs it to a
running server (--server URL).  No mathematics lives here.

Exit status: 0 when the mathematical verdict was computed (whether it holds
or fails), 2 for operational errors (non-regular input to a criterion,
exceeded budgets, unfactorable scans, malformed arguments).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import __version__
from .errors import CnbaseError
from .service import handlers, models

_SCAN_CSV_COLUMNS = [
    "q",
    "n",
    "regular",
    "decided_by",
    "criterion_holds",
    "weak_holds",
    "omega",
    "Omega_c",
]


def _flatten(prefix: str, value, out: dict) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list):
        out[prefix] = json.dumps(value)
    else:
        out[prefix] = value


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, default=str))
        return
    if fmt == "csv":
        if "rows" in payload:  # scan: one row per pair
            writer = csv.DictWriter(sys.stdout, fieldnames=_SCAN_CSV_COLUMNS, extrasaction="ignore")
            writer.writeheader()
            for row in payload["rows"]:
                writer.writerow(row)
            return
        flat: dict = {}
        _flatten("", payload, flat)
        writer = csv.writer(sys.stdout)
        writer.writerow(flat.keys())
        writer.writerow(flat.values())
        return
    flat = {}
    _flatten("", payload, flat)
    for key, value in flat.items():
        print(f"{key}: {value}")


def _post(server: str, path: str, request_model) -> dict:
    import httpx

    response = httpx.post(
        server.rstrip("/") + path, json=request_model.model_dump(), timeout=None
    )
    if response.status_code != 200:
        raise CnbaseError(f"server error {response.status_code}: {response.text}")
    return response.json()


def _run(args, path: str, request_model, handler) -> dict:
    if args.server:
        return _post(args.server, path, request_model)
    return handler(request_model).model_dump()


def _read_certificate(spec: str) -> dict:
    if spec == "-":
        return json.load(sys.stdin)
    with open(spec, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _common_flags(defaults: bool) -> argparse.ArgumentParser:
    """Shared flags, accepted both before and after the subcommand."""
    common = argparse.ArgumentParser(add_help=False)

    def default(value):
        return value if defaults else argparse.SUPPRESS

    common.add_argument("--format", choices=("json", "csv", "text"), default=default("json"))
    common.add_argument("--server", default=default(None), help="base URL of a running service; default runs in-process")
    common.add_argument("--budget", type=int, default=default(None), help="max enumeration size (env CNBASE_BUDGET)")
    common.add_argument("--threads", type=int, default=default(1))
    common.add_argument("--seed", type=int, default=default(0))
    common.add_argument("--modulus", default=default(None), help="field modulus override, e.g. 'x^8+x^4-1'")
    common.add_argument("--expensive", action="store_true", default=default(False), help="allow full-field censuses above the budget")
    common.add_argument("--factor-budget", type=float, default=default(None), help="seconds allowed for factoring q^n - 1")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cnbase",
        description="Classification, counting, search and character verification "
        "for completely normal bases of Galois fields.",
        parents=[_common_flags(defaults=True)],
    )
    parser.add_argument("--version", action="version", version=f"cnbase {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common_flags(defaults=False)]

    p = sub.add_parser("classify", parents=common, help="number-theoretic profile of a pair")
    p.add_argument("q", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser("criterion", parents=common, help="exact character-sum existence criterion")
    p.add_argument("q", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--any-regular", action="store_true", help="evaluate outside the stated hypotheses")

    p = sub.add_parser("scan", parents=common, help="criterion verdicts over a range of pairs")
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--q-min", type=int, default=2)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-mod", type=int, default=None)
    p.add_argument("--any-q", action="store_true", help="drop the q = 3 mod 4 filter")

    p = sub.add_parser("count", parents=common, help="closed-form count of completely normal elements")
    p.add_argument("q", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser("census", parents=common, help="exhaustive counts against the closed form")
    p.add_argument("q", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser("verify", parents=common, help="check a polynomial (or stored certificate)")
    p.add_argument("--poly", help="monic polynomial over F_p, e.g. 'x^8+x^7+2x^3+2x^2+2'")
    p.add_argument("--p", type=int, help="characteristic for --poly")
    p.add_argument("--base-q", type=int, default=None)
    p.add_argument("--certificate", help="path to a certificate JSON file ('-' = stdin)")

    p = sub.add_parser("search", parents=common, help="find and certify a primitive completely normal element")
    p.add_argument("q", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--strategy", choices=("exhaustive", "random", "sieved", "construction"), default="exhaustive")
    p.add_argument("--output", help="write the certificate JSON to this file")

    p = sub.add_parser("recheck", parents=common, help="re-validate a stored certificate")
    p.add_argument("certificate", help="path to a certificate JSON file ('-' = stdin)")

    p = sub.add_parser("chars-verify", parents=common, help="numeric character identities on a tiny field")
    p.add_argument("q", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser("serve", parents=common, help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "classify":
            req = models.ClassifyRequest(q=args.q, n=args.n, factor_budget=args.factor_budget)
            payload = _run(args, "/classify", req, handlers.handle_classify)
        elif args.command == "criterion":
            req = models.CriterionRequest(
                q=args.q, n=args.n, allow_any_regular=args.any_regular, factor_budget=args.factor_budget
            )
            payload = _run(args, "/criterion", req, handlers.handle_criterion)
        elif args.command == "scan":
            req = models.ScanRequest(
                q_max=args.q_max,
                n_max=args.n_max,
                q_min=args.q_min,
                n_min=args.n_min,
                n_mod=args.n_mod,
                q_mod4=None if args.any_q else 3,
                factor_budget=args.factor_budget if args.factor_budget is not None else 60.0,
                threads=args.threads,
            )
            payload = _run(args, "/scan", req, handlers.handle_scan)
        elif args.command == "count":
            req = models.CountRequest(q=args.q, n=args.n)
            payload = _run(args, "/count", req, handlers.handle_count)
        elif args.command == "census":
            req = models.CensusRequest(
                q=args.q,
                n=args.n,
                budget=args.budget,
                expensive=args.expensive,
                modulus=args.modulus,
                threads=args.threads,
            )
            payload = _run(args, "/census", req, handlers.handle_census)
        elif args.command == "verify":
            if args.certificate:
                req = models.RecheckRequest(certificate=_read_certificate(args.certificate))
                payload = _run(args, "/recheck", req, handlers.handle_recheck)
            else:
                if not args.poly or not args.p:
                    raise CnbaseError("verify needs --poly with --p, or --certificate")
                req = models.VerifyRequest(p=args.p, poly=args.poly, base_q=args.base_q)
                payload = _run(args, "/verify", req, handlers.handle_verify)
        elif args.command == "search":
            req = models.SearchRequest(
                q=args.q,
                n=args.n,
                strategy=args.strategy,
                seed=args.seed,
                budget=args.budget,
                modulus=args.modulus,
                threads=args.threads,
            )
            payload = _run(args, "/search", req, handlers.handle_search)
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    json.dump(payload["certificate"], fh, indent=2)
        elif args.command == "recheck":
            req = models.RecheckRequest(certificate=_read_certificate(args.certificate))
            payload = _run(args, "/recheck", req, handlers.handle_recheck)
        elif args.command == "chars-verify":
            req = models.CharsVerifyRequest(q=args.q, n=args.n, modulus=args.modulus, seed=args.seed)
            payload = _run(args, "/chars-verify", req, handlers.handle_chars_verify)
        elif args.command == "serve":
            import uvicorn

            from .service.app import app

            uvicorn.run(app, host=args.host, port=args.port)
            return 0
        else:  # pragma: no cover
            raise CnbaseError(f"unknown command {args.command}")
    except CnbaseError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.format)
        return 2
    except (ValueError, OSError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.format)
        return 2
    _emit(payload, args.format)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
