"""Command-line client for the toolkit.

Thin wrapper over the service handlers: each subcommand builds the same
request model the HTTP endpoint accepts, runs it in-process, and prints
the response as JSON.  Exit codes: 0 success / verified, 1 verification
failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .service import handlers
from .service import schemas as sc


def _read_json(path: Optional[str]):
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)


def _emit(payload: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    print(payload)


def _dump(model) -> str:
    return model.model_dump_json(by_alias=True, indent=2)


def _rational_pair(text: str) -> list[str]:
    from fractions import Fraction

    f = Fraction(text)
    return [str(f.numerator), str(f.denominator)]


def _signature(text: str) -> list[int]:
    parts = [int(x) for x in text.split(",")]
    if not 2 <= len(parts) <= 3:
        raise argparse.ArgumentTypeError("signature must be p,q or p,q,r")
    return parts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ymproca",
        description="Constant-solution toolkit for massive Yang-Mills field equations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="check a candidate against the cubic system")
    p_verify.add_argument("--in", dest="infile", default=None, help="candidate JSON (default: stdin)")
    p_verify.add_argument("--lambda", dest="lam", default=None, help="override lambda, as a/b")
    p_verify.add_argument("--tol", type=float, default=0.0)
    p_verify.add_argument("--out", default=None)

    p_factory = sub.add_parser("factory", help="construct a known solution class")
    p_factory.add_argument(
        "--class",
        dest="cls",
        required=True,
        choices=["anticommuting", "commuting", "grassmann", "extra_n3", "zero_subset"],
    )
    p_factory.add_argument("--signature", type=_signature, default=None)
    p_factory.add_argument("--field", choices=["R", "C"], default="R")
    p_factory.add_argument("--theta", type=int, choices=[1, -1], default=None)
    p_factory.add_argument("--kappa", default="1")
    p_factory.add_argument("--count", type=int, default=None, help="Grassmann generator count")
    p_factory.add_argument("--zero", default=None, help="comma-separated indices to zero")
    p_factory.add_argument("--in", dest="infile", default=None, help="candidate/seeds JSON input")
    p_factory.add_argument("--out", default=None)

    p_solve = sub.add_parser("solve", help="multistart Newton search for constant solutions")
    p_solve.add_argument("--signature", type=_signature, required=True)
    p_solve.add_argument("--field", choices=["R", "C"], default="R")
    p_solve.add_argument("--lambda", dest="lam", required=True, help="lambda as a/b")
    p_solve.add_argument("--restarts", type=int, default=16)
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.add_argument("--tol", type=float, default=1e-10)
    p_solve.add_argument("--out", default=None)

    p_series = sub.add_parser("series", help="order-by-order perturbation around a constant base")
    p_series.add_argument("--base", required=True, help="base candidate JSON file")
    p_series.add_argument("--order", type=int, required=True)
    p_series.add_argument("--support", default=None, help="JSON file with a list of wavevectors")
    p_series.add_argument("--theta", type=int, choices=[1, -1], required=True)
    p_series.add_argument("--rho", default="1")
    p_series.add_argument("--in", dest="infile", default=None, help="optional explicit order-1 field JSON")
    p_series.add_argument("--tol", type=float, default=1e-9)
    p_series.add_argument("--out", default=None)

    p_classify = sub.add_parser("classify", help="classify an n=2 or n=3 candidate")
    p_classify.add_argument("--in", dest="infile", default=None)
    p_classify.add_argument("--out", default=None)

    p_repr = sub.add_parser("repr", help="emit matrix images of the algebra generators (complex algebra)")
    p_repr.add_argument("--signature", type=_signature, required=True)
    p_repr.add_argument("--out", default=None)

    p_conserve = sub.add_parser("conserve", help="check the non-abelian conservation identity")
    p_conserve.add_argument("--in", dest="infile", default=None, help="plane-wave field JSON")
    p_conserve.add_argument("--rho", default="1")
    p_conserve.add_argument("--out", default=None)

    return parser


def _cmd_verify(args) -> int:
    request = sc.VerifyRequest(
        candidate=sc.CandidateModel.model_validate(_read_json(args.infile)),
        lam=_rational_pair(args.lam) if args.lam is not None else None,
        tol=args.tol,
    )
    response = handlers.handle_verify(request)
    _emit(_dump(response), args.out)
    return 0 if response.ok else 1


def _cmd_factory(args) -> int:
    candidate = None
    seeds = None
    if args.cls == "zero_subset":
        candidate = sc.CandidateModel.model_validate(_read_json(args.infile))
    elif args.cls == "commuting":
        seeds = [sc.MultivectorModel.model_validate(m) for m in _read_json(args.infile)]
    zero_indices = None
    if args.zero is not None:
        zero_indices = [int(x) for x in args.zero.split(",")]
    request = sc.FactoryRequest.model_validate(
        {
            "class": args.cls,
            "signature": args.signature,
            "field": args.field,
            "theta": args.theta,
            "kappa": _rational_pair(args.kappa),
            "count": args.count,
            "zero_indices": zero_indices,
            "candidate": candidate,
            "seeds": seeds,
        }
    )
    _emit(_dump(handlers.handle_factory(request)), args.out)
    return 0


def _cmd_solve(args) -> int:
    request = sc.SolveRequest(
        signature=args.signature,
        field=args.field,
        lam=_rational_pair(args.lam),
        restarts=args.restarts,
        seed=args.seed,
        tol=args.tol,
    )
    _emit(_dump(handlers.handle_solve(request)), args.out)
    return 0


def _cmd_series(args) -> int:
    support = _read_json(args.support) if args.support else []
    order1 = (
        sc.FieldModel.model_validate(_read_json(args.infile))
        if args.infile
        else None
    )
    request = sc.SeriesRequest(
        base=sc.CandidateModel.model_validate(_read_json(args.base)),
        order=args.order,
        support=[[str(v) for v in k] for k in support],
        theta=args.theta,
        rho=args.rho,
        order1=order1,
        tol=args.tol,
    )
    _emit(_dump(handlers.handle_series(request)), args.out)
    return 0


def _cmd_classify(args) -> int:
    request = sc.ClassifyRequest(
        candidate=sc.CandidateModel.model_validate(_read_json(args.infile))
    )
    _emit(_dump(handlers.handle_classify(request)), args.out)
    return 0


def _cmd_repr(args) -> int:
    sig = args.signature
    request = sc.ReprRequest(
        algebra=sc.AlgebraModel(
            p=sig[0], q=sig[1], r=sig[2] if len(sig) == 3 else 0, field="C"
        )
    )
    _emit(_dump(handlers.handle_repr(request)), args.out)
    return 0


def _cmd_conserve(args) -> int:
    request = sc.ConserveRequest(
        field=sc.FieldModel.model_validate(_read_json(args.infile)),
        rho=args.rho,
    )
    response = handlers.handle_conserve(request)
    _emit(_dump(response), args.out)
    return 0 if response.ok else 1


_COMMANDS = {
    "verify": _cmd_verify,
    "factory": _cmd_factory,
    "solve": _cmd_solve,
    "series": _cmd_series,
    "classify": _cmd_classify,
    "repr": _cmd_repr,
    "conserve": _cmd_conserve,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
