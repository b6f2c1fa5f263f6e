"""Command line front end: ring inspection, H2 computation, full verification.

Exit codes: 0 success and all checks pass, 1 a computed value disagrees
with the prediction, 2 bad input (unparseable ring, invalid algebra,
missing arguments), 3 the requested sl_n(R) exceeds the dimension cap.
"""
from __future__ import annotations

import argparse
import json
import sys

from .cyclic import hc1_dim
from .ringfile import RingFormatError, load_ring, ring_from_preset_string
from .rings import (AlgebraSpec, commutator_subspace, ideal_Im, quotient_Rm,
                    validate_algebra)
from .steinberg import GuardExceeded, compute_h2, verify_main_theorem

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_GUARD = 3


def _add_ring_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", metavar="SPEC",
                   help="built-in ring, e.g. gf:2, poly:2:x^2, dual:3, "
                        "matrix:2:2, group:3:s3")
    p.add_argument("--ring", metavar="FILE",
                   help="TOML ring file with field/basis/unit/mul tables")


def _add_common(p: argparse.ArgumentParser, with_n: bool = True) -> None:
    if with_n:
        p.add_argument("--n", type=int, required=True,
                       help="matrix size n >= 3")
    p.add_argument("--json", action="store_true",
                   help="machine readable output")
    p.add_argument("--max-dim", type=int, default=80,
                   help="refuse when dim sl_n(R) exceeds this (default 80)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomised witness checks (default 0)")


def _load(args) -> AlgebraSpec:
    if bool(args.preset) == bool(args.ring):
        raise RingFormatError("give exactly one of --preset or --ring")
    if args.preset:
        return ring_from_preset_string(args.preset)
    return load_ring(args.ring)


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _ring_info(args) -> int:
    R = _load(args)
    bad = validate_algebra(R)
    if bad:
        v = bad[0]
        print(f"ring {R.name}: INVALID ({v.kind} at {v.where}): {v.message}",
              file=sys.stderr)
        return EXIT_INPUT
    comm = commutator_subspace(R)
    info = {
        "schema_version": SCHEMA_VERSION,
        "command": "ring info",
        "name": R.name,
        "field": R.field.descriptor,
        "dim": R.dim,
        "basis": list(R.labels),
        "unit": R.labels[R.unit_index],
        "commutative": bool(R.field.is_zero(
            R.field.reduce(R.mul - R.mul.swapaxes(0, 1)))),
        "commutator_dim": comm.dim,
        "ideal_I2_dim": ideal_Im(R, 2).subspace.dim,
        "ideal_I3_dim": ideal_Im(R, 3).subspace.dim,
        "R2_dim": quotient_Rm(R, 2).dim,
        "R3_dim": quotient_Rm(R, 3).dim,
        "hc1_dim": hc1_dim(R),
    }
    if args.json:
        _emit(info)
        return EXIT_OK
    print(f"ring {info['name']} over {info['field']}, dim {info['dim']}")
    print(f"  basis: {', '.join(info['basis'])} (unit {info['unit']})")
    print(f"  commutative: {'yes' if info['commutative'] else 'no'}, "
          f"dim [R,R] = {info['commutator_dim']}")
    print(f"  dim I_2 = {info['ideal_I2_dim']}, dim R_2 = {info['R2_dim']}")
    print(f"  dim I_3 = {info['ideal_I3_dim']}, dim R_3 = {info['R3_dim']}")
    print(f"  dim HC_1(R) = {info['hc1_dim']}")
    return EXIT_OK


def _h2(args, target: str) -> int:
    R = _load(args)
    out = compute_h2(R, args.n, which=target, max_dim=args.max_dim,
                     seed=args.seed)
    if args.json:
        out = dict(out)
        out["schema_version"] = SCHEMA_VERSION
        out["command"] = f"h2 {target}"
        _emit(out)
    else:
        word = "matches" if out["match"] else "DISAGREES WITH"
        print(f"H2({target}{args.n}({out['ring']})) = {out['measured_h2']} "
              f"({word} the predicted {out['predicted_h2']}); "
              f"dim {target} = {out['dim']}")
    return EXIT_OK if out["match"] else EXIT_MISMATCH


def _verify(args) -> int:
    R = _load(args)
    verdict = verify_main_theorem(R, args.n, max_dim=args.max_dim,
                                  seed=args.seed)
    if args.json:
        _emit({
            "schema_version": SCHEMA_VERSION,
            "command": "verify",
            "ring": verdict.ring,
            "field": verdict.field,
            "n": verdict.n,
            "passed": verdict.passed,
            "dims": verdict.dims,
            "checks": [{"name": c.name, "passed": c.passed,
                        "detail": c.detail} for c in verdict.checks],
            "timings_ms": verdict.timings_ms,
        })
    else:
        state = "PASS" if verdict.passed else "FAIL"
        print(f"verify st{verdict.n}({verdict.ring}) over {verdict.field}: "
              f"{state}")
        print("  dims: " + " ".join(f"{k}={v}"
                                    for k, v in verdict.dims.items()))
        npass = sum(c.passed for c in verdict.checks)
        print(f"  checks: {npass}/{len(verdict.checks)} passed")
        for c in verdict.failures():
            extra = f" ({c.detail})" if c.detail else ""
            print(f"  FAILED: {c.name}{extra}")
        total = sum(verdict.timings_ms.values())
        print(f"  time: {total / 1000.0:.2f}s")
    return EXIT_OK if verdict.passed else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stlie",
        description="verify H2 predictions for Steinberg and special "
                    "linear Lie algebras over finite dimensional rings")
    sub = parser.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", help="ring utilities")
    ringsub = ring.add_subparsers(dest="ring_command", required=True)
    info = ringsub.add_parser("info", help="validate and summarise a ring")
    _add_ring_args(info)
    info.add_argument("--json", action="store_true")
    info.set_defaults(func=_ring_info)

    h2 = sub.add_parser("h2", help="second homology of sl_n(R) or st_n(R)")
    h2sub = h2.add_subparsers(dest="target", required=True)
    for target in ("sl", "st"):
        p = h2sub.add_parser(target)
        _add_ring_args(p)
        _add_common(p)
        p.set_defaults(func=lambda a, t=target: _h2(a, t))

    ver = sub.add_parser("verify",
                         help="run the full certified construction")
    _add_ring_args(ver)
    _add_common(ver)
    ver.set_defaults(func=_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"error: {exc}; raise --max-dim to proceed", file=sys.stderr)
        return EXIT_GUARD
    except (RingFormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
