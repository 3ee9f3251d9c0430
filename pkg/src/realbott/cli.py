"""Command line interface: ``realbott compute|verify|sweep|example``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from .bott_matrix import BottMatrix, BottMatrixError, from_dict, parse
from .cohomology import Z2Polynomial
from .stiefel_whitney import (
    DecompositionReport,
    decomposition_sum,
    example_matrix,
    failing_degrees,
    sw_class,
    total_sw,
    verify_decomposition,
)
from .sweep import run_sweep

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# Expected values, written in the order they are usually quoted.
EXAMPLE_W4 = "x2*x3*x4*x5 + x1*x3*x4*x5 + x1*x2*x3*x5 + x1*x2*x3*x4"
EXAMPLE_COMPONENTS = {
    (1, 2, 3, 4): "x1*x2*x3*x4",
    (1, 2, 3, 5): "x1*x2*x3*x5",
    (1, 2, 4, 5): "0",
    (1, 3, 4, 5): "x1*x3*x4*x5",
    (2, 3, 4, 5): "x2*x3*x4*x5",
}


class InputError(Exception):
    pass


def read_matrix(path: str) -> BottMatrix:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parse(text)
    except BottMatrixError as exc:
        raise InputError(f"{path}: {exc}") from None


def compute_payload(a: BottMatrix, degrees: Sequence[int] | None = None) -> dict:
    top = max(degrees) if degrees else None
    total = total_sw(a, max_degree=top)
    degrees = sorted(set(degrees)) if degrees else list(range(a.n + 1))
    return {
        "matrix": a.to_dict(),
        "orientable": a.is_orientable(),
        "holonomy_rank": a.holonomy_rank(),
        "w": {str(k): total[k].to_index_lists() for k in degrees},
    }


def render_compute_text(payload: dict) -> str:
    classes = {int(k): Z2Polynomial.from_index_lists(v) for k, v in payload["w"].items()}
    lines = [
        f"n = {payload['matrix']['n']}",
        f"orientable = {str(payload['orientable']).lower()}",
        f"holonomy_rank = {payload['holonomy_rank']}",
    ]
    if len(classes) == payload["matrix"]["n"] + 1:
        total = Z2Polynomial()
        for w in classes.values():
            total = total + w
        lines.append(f"w = {total}")
    lines += [f"w{k} = {w}" for k, w in sorted(classes.items())]
    return "\n".join(lines)


def render_compute_json(payload: dict) -> str:
    """Re-validates the payload through the domain types before dumping."""
    a = from_dict(payload["matrix"])
    w = {k: Z2Polynomial.from_index_lists(v).to_index_lists() for k, v in payload["w"].items()}
    return json.dumps(
        {"matrix": a.to_dict(), "orientable": payload["orientable"],
         "holonomy_rank": payload["holonomy_rank"], "w": w},
        indent=2,
    )


def cmd_compute(args) -> int:
    a = read_matrix(args.matrix)
    degrees = args.k
    if degrees and any(k < 0 for k in degrees):
        raise InputError("--k must be nonnegative")
    payload = compute_payload(a, degrees)
    print(render_compute_json(payload) if args.json else render_compute_text(payload))
    return EXIT_OK


def verify_status(reports: Sequence[DecompositionReport]) -> int:
    return EXIT_FAIL if failing_degrees(list(reports)) else EXIT_OK


def cmd_verify(args, decompose: Callable[[BottMatrix, int], DecompositionReport] = decomposition_sum) -> int:
    a = read_matrix(args.matrix)
    ks = args.k or list(range(1, a.n // 2 + 1))
    if any(k < 1 for k in ks):
        raise InputError("--k must be positive")
    reports = [decompose(a, k) for k in ks]
    status = verify_status(reports)
    if args.json:
        print(json.dumps({"reports": [r.to_dict() for r in reports],
                          "failing_degrees": failing_degrees(reports)}, indent=2))
    else:
        bad = failing_degrees(reports)
        if bad:
            print(f"DECOMPOSITION FAILS in degrees {bad}")
        if not reports:
            print("no even degrees 2 <= 2k <= n to check")
        for r in reports:
            print(r.render())
        print("verified" if not bad else "NOT verified")
    return status


def cmd_sweep(args) -> int:
    try:
        summary = run_sweep(args.n, workers=args.workers, max_bits=args.max_bits)
    except BottMatrixError as exc:
        raise InputError(str(exc)) from None
    print(json.dumps(summary.to_dict(), indent=2) if args.json else summary.render())
    return EXIT_OK if summary.ok else EXIT_FAIL


def example_report() -> tuple[list[str], bool]:
    a = example_matrix()
    lines = ["A =", str(a)]
    ok = True
    w4 = sw_class(a, 4)
    match = w4 == Z2Polynomial.parse(EXAMPLE_W4)
    ok &= match
    lines.append(f"w4(M(A)) = {w4}  [{'ok' if match else 'MISMATCH, expected ' + EXAMPLE_W4}]")
    total = Z2Polynomial()
    for s, expected in EXAMPLE_COMPONENTS.items():
        w = sw_class(a.row_submatrix(s), 4)
        total = total + w
        match = w == Z2Polynomial.parse(expected)
        ok &= match
        label = "".join(map(str, s))
        lines.append(f"w4(M(A_{label})) = {w}  [{'ok' if match else 'MISMATCH, expected ' + expected}]")
    match = total == w4
    ok &= match
    lines.append(f"sum of components = {total}  [{'equals w4(M(A))' if match else 'MISMATCH'}]")
    rep = decomposition_sum(a, 2)
    ok &= rep.equal
    lines.append(f"sum over all {len(rep.subset_terms)} 4-subsets equals w4(M(A)): {rep.equal}")
    return lines, ok


def cmd_example(args) -> int:
    lines, ok = example_report()
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realbott",
        description="Stiefel-Whitney classes of real Bott manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print w0..wn, orientability and holonomy rank")
    p.add_argument("matrix", help="matrix file (0/1 text or JSON), '-' for stdin")
    p.add_argument("--json", action="store_true")
    p.add_argument("--k", type=int, action="append", help="only degree K (repeatable)")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="check the even-class decomposition")
    p.add_argument("matrix", help="matrix file (0/1 text or JSON), '-' for stdin")
    p.add_argument("--json", action="store_true")
    p.add_argument("--k", type=int, action="append", help="only degree 2K (repeatable)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="check every matrix of dimension n")
    p.add_argument("n", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--workers", type=int, default=None, help="processes (default: all cores)")
    p.add_argument("--max-bits", type=int, default=28,
                   help="refuse n with n(n-1)/2 above this (default 28, i.e. n <= 8)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("example", help="reproduce the 7x7 worked example")
    p.set_defaults(func=cmd_example)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
