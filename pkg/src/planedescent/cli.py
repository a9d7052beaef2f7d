"""Command-line entry point: ``planedescent <command> [options]``.

Exit codes: 0 success, 1 a check was refuted or inconclusive, 2 usage or
validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .curves import ParameterError, build_huggins_form, build_scaled_form, form_from_json
from .descent.arith import (INCONCLUSIVE, NONTRIVIAL, PreconditionError, norm_obstruction,
                            quaternion_embedding_check)
from .descent.certificate import CertificateConfig, build_certificate
from .descent.cocycle import build_twist_cocycle, validate_cocycle
from .tower.standard import splitting_tower
from .ternary.smooth import SMOOTH, SMOOTH_CERTIFIED, certify_smooth, smoothness_exact

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}")


def _positive(s: str) -> int:
    n = int(s)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="planedescent",
                                 description="Construct and verify twisted Hessian sextics.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, p_required=False, uv=True):
        if uv:
            sp.add_argument("--u", type=_rational, required=True)
            sp.add_argument("--v", type=_rational, required=True)
        sp.add_argument("--p", type=int, required=p_required)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--out", help="write the main output to this file")

    sp = sub.add_parser("build", help="emit the sextic (or its rescaled model with --p)")
    common(sp)

    sp = sub.add_parser("verify", help="run the full pipeline and write a certificate")
    common(sp, p_required=True)
    sp.add_argument("--height-bound", type=_positive, default=50)
    sp.add_argument("--qmax", type=_positive, default=200)
    sp.add_argument("--exact", action="store_true", help="also run exact smoothness")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--timings", action="store_true",
                    help="record wall-clock timings (output is then not reproducible)")

    sp = sub.add_parser("smoothness", help="probe (or decide) smoothness of a serialized form")
    sp.add_argument("--form", required=True, help="form or curve JSON file")
    sp.add_argument("--qmax", type=_positive, default=200)
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("norm-check", help="inertia obstruction for a prime p")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("quaternion-check", help="quaternion embeddability of K(sqrt u, sqrt v)")
    sp.add_argument("--u", type=_rational, required=True)
    sp.add_argument("--v", type=_rational, required=True)
    sp.add_argument("--height-bound", type=_positive, default=50)
    sp.add_argument("--no-local", action="store_true", help="skip the local obstruction test")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("cocycle-check", help="validate the [Y:Z:pX] cocycle on all pairs")
    sp.add_argument("--u", type=_rational, required=True)
    sp.add_argument("--v", type=_rational, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    return ap


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(args, text: str, payload: dict):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_build(args) -> int:
    if args.p is not None:
        C = build_scaled_form(args.u, args.v, args.p)
    else:
        C = build_huggins_form(args.u, args.v)
    _emit(json.dumps(C.to_json(), indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    config = CertificateConfig(height_bound=args.height_bound, qmax=args.qmax,
                               exact_smoothness=args.exact, seed=args.seed, timings=args.timings)
    cert = build_certificate(args.u, args.v, args.p, config)
    if cert.aborted and cert.checks and cert.checks[0].name == "parameters" \
            and cert.checks[0].status != "verified":
        raise ParameterError(cert.checks[0].witness.get("error", "invalid parameters"))
    text = cert.dumps()
    if args.out:
        _emit(text, args.out)
    if args.json or not args.out:
        sys.stdout.write(text)
    else:
        for c in cert.checks:
            print(f"{c.name:24s} {c.status}")
        print(f"certificate: {cert.status}")
    return EXIT_OK if cert.status == "passed" else EXIT_CHECK


def cmd_smoothness(args) -> int:
    with open(args.form) as fh:
        obj = json.load(fh)
    F = form_from_json(obj)
    if args.exact:
        r = smoothness_exact(F)
        ok = r.status == SMOOTH
        text = r.status if r.point is None else f"{r.status} at {r.point}"
    else:
        r = certify_smooth(F, qmax=args.qmax)
        ok = r.status == SMOOTH_CERTIFIED
        where = ""
        if r.placement:
            where = f" at q={r.placement['q']}" + (f"^{r.placement['m']}" if r.placement["m"] > 1 else "")
        text = r.status + where
    _report(args, text, r.to_json())
    return EXIT_OK if ok else EXIT_CHECK


def cmd_norm_check(args) -> int:
    try:
        r = norm_obstruction(args.p)
    except ValueError as exc:
        raise UsageError(str(exc))
    _report(args, r.summary(), r.to_json())
    return EXIT_OK if r.conclusion == NONTRIVIAL else EXIT_CHECK


def cmd_quaternion_check(args) -> int:
    r = quaternion_embedding_check(args.u, args.v, args.height_bound, local_check=not args.no_local)
    _report(args, r.summary(), r.to_json())
    return EXIT_CHECK if r.verdict == INCONCLUSIVE else EXIT_OK


def cmd_cocycle_check(args) -> int:
    from .curves import HugginsParams

    params = HugginsParams(args.u, args.v, args.p)
    c = build_twist_cocycle(params.p, splitting_tower(params.u, params.v, params.p))
    r = validate_cocycle(c)
    if r.valid:
        text = f"valid cocycle ({r.pairs_checked} pairs checked)"
    else:
        text = f"invalid cocycle: fails at {r.counterexample}"
    _report(args, text, r.to_json())
    return EXIT_OK if r.valid else EXIT_CHECK


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "smoothness": cmd_smoothness,
            "norm-check": cmd_norm_check, "quaternion-check": cmd_quaternion_check,
            "cocycle-check": cmd_cocycle_check}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (ParameterError, PreconditionError, UsageError, FileNotFoundError,
            json.JSONDecodeError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
