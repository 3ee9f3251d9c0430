"""Exhaustive checks over every Bott matrix of a given dimension."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .bott_matrix import DEFAULT_ENUM_BITS, BottMatrix, BottMatrixError, count_matrices
from .stiefel_whitney import sw_class, verify_decomposition, w1_from_rows


@dataclass
class Failure:
    code: int
    matrix: BottMatrix
    k: int
    lhs: str
    rhs: str

    def to_dict(self) -> dict:
        return {"code": self.code, "matrix": self.matrix.to_dict(), "k": self.k,
                "lhs": self.lhs, "rhs": self.rhs}

    def render(self) -> str:
        rows = " / ".join(str(self.matrix).splitlines())
        return f"[{rows}] w{2 * self.k}: lhs = {self.lhs}; rhs = {self.rhs}"


@dataclass
class SweepSummary:
    n: int
    total: int = 0
    orientable: int = 0
    decomposition_failures: list[Failure] = field(default_factory=list)
    orientability_mismatches: list[int] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.decomposition_failures and not self.orientability_mismatches

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "total": self.total,
            "orientable": self.orientable,
            "decomposition_failures": [f.to_dict() for f in self.decomposition_failures],
            "orientability_mismatches": self.orientability_mismatches,
            "elapsed": round(self.elapsed, 3),
        }

    def render(self) -> str:
        lines = [
            f"n = {self.n}",
            f"total = {self.total}",
            f"orientable = {self.orientable}",
            f"decomposition failures = {len(self.decomposition_failures)}",
            f"orientability mismatches = {len(self.orientability_mismatches)}",
            f"elapsed = {self.elapsed:.3f} s",
        ]
        lines += ["FAIL " + f.render() for f in self.decomposition_failures]
        lines += [f"FAIL orientability, matrix code {c}" for c in self.orientability_mismatches]
        return "\n".join(lines)


def check_matrix(code: int, a: BottMatrix, partial: SweepSummary) -> None:
    partial.total += 1
    orientable = a.is_orientable()
    partial.orientable += orientable
    w1 = sw_class(a, 1)
    if w1 != w1_from_rows(a) or (not w1) != orientable:
        partial.orientability_mismatches.append(code)
    for rep in verify_decomposition(a):
        if not rep.equal:
            partial.decomposition_failures.append(
                Failure(code, a, rep.k, str(rep.lhs), str(rep.rhs))
            )


def _run_range(n: int, start: int, stop: int) -> SweepSummary:
    partial = SweepSummary(n)
    for code in range(start, stop):
        check_matrix(code, BottMatrix.from_code(n, code), partial)
    return partial


def run_sweep(n: int, workers: int | None = None, max_bits: int = DEFAULT_ENUM_BITS,
              chunk: int = 256) -> SweepSummary:
    """Check orientability and the decomposition for every matrix of dimension n.

    Work is split into code ranges handed out dynamically to ``workers``
    processes (default: all cores). Results are merged in code order, so the
    summary does not depend on scheduling.
    """
    if n < 1:
        raise BottMatrixError(f"dimension must be positive, got {n}")
    bits = n * (n - 1) // 2
    if bits > max_bits:
        raise BottMatrixError(f"enumeration of n = {n} needs 2^{bits} matrices, cap is 2^{max_bits}")
    total = count_matrices(n)
    workers = workers or os.cpu_count() or 1
    t0 = time.perf_counter()
    ranges = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    if workers == 1 or len(ranges) == 1:
        parts = [_run_range(n, s, e) for s, e in ranges]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_range, [n] * len(ranges), *zip(*ranges)))
    summary = SweepSummary(n)
    for p in parts:
        summary.total += p.total
        summary.orientable += p.orientable
        summary.decomposition_failures += p.decomposition_failures
        summary.orientability_mismatches += p.orientability_mismatches
    summary.elapsed = time.perf_counter() - t0
    return summary
