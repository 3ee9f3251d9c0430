"""Stiefel-Whitney classes of real Bott manifolds and the even-class decomposition.

The total class is the normal form of prod_j (1 + y_j), where y_j is the
first Stiefel-Whitney class of the j-th line bundle, i.e. the linear form
given by column j of the Bott matrix. Column 1 is always empty, so y_1 = 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .bott_matrix import BottMatrix, parse
from .cohomology import ONE, ZERO, Monomial, Z2Polynomial, ring


def line_class(a: BottMatrix, i: int) -> Z2Polynomial:
    """y_i = sum of x_l over rows l with a_li = 1."""
    if not 1 <= i <= a.n:
        raise ValueError(f"index {i} out of range 1..{a.n}")
    mask = a.column_masks[i - 1]
    return Z2Polynomial(frozenset(1 << l for l in range(i) if mask >> l & 1))


@dataclass(frozen=True)
class TotalSWClass:
    n: int
    components: tuple[Z2Polynomial, ...]

    def __post_init__(self):
        if len(self.components) != self.n + 1:
            raise ValueError(f"need {self.n + 1} components, got {len(self.components)}")
        if self.components[0] != ONE:
            raise ValueError("w0 must be 1")
        for k, w in enumerate(self.components):
            if w.degrees() - {k}:
                raise ValueError(f"w{k} is not homogeneous of degree {k}")

    def __getitem__(self, k: int) -> Z2Polynomial:
        if k < 0:
            raise IndexError(k)
        return self.components[k] if k <= self.n else ZERO

    def total(self) -> Z2Polynomial:
        acc = ZERO
        for w in self.components:
            acc = acc + w
        return acc

    def render(self) -> str:
        lines = [f"w = {self.total()}"]
        lines += [f"w{k} = {w}" for k, w in enumerate(self.components)]
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"n": self.n, "w": [w.to_index_lists() for w in self.components]}

    @classmethod
    def from_dict(cls, data: dict) -> TotalSWClass:
        return cls(data["n"], tuple(Z2Polynomial.from_index_lists(w) for w in data["w"]))


def total_sw(a: BottMatrix, max_degree: int | None = None) -> TotalSWClass:
    """Total class via the incremental product, reducing after each factor.

    With ``max_degree`` set, terms above that degree are dropped as they
    appear; the ring is graded so lower components are unaffected, and the
    higher components are reported as zero.
    """
    cap = a.n if max_degree is None else min(max_degree, a.n)
    r = ring(a)
    product = ONE
    for j in range(1, a.n + 1):
        y = line_class(a, j)
        if y:
            product = (product + r.multiply(product.truncate(cap - 1), y)).truncate(cap)
    comps = tuple(product.homogeneous_part(k) if k <= cap else ZERO for k in range(a.n + 1))
    return TotalSWClass(a.n, comps)


def _check_degree(k: int) -> None:
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {k!r}")


def sw_class(a: BottMatrix, k: int) -> Z2Polynomial:
    """w_k(M(A)); zero when k > n."""
    _check_degree(k)
    if k > a.n:
        return ZERO
    return total_sw(a, max_degree=k)[k]


@lru_cache(maxsize=1 << 16)
def _component_class(a: BottMatrix, d: int) -> Z2Polynomial:
    # submatrices recur heavily across a sweep
    return sw_class(a, d)


# The oracle multiplies one generator at a time, recursing on
# x_i * x_i = x_i * sum_{a_li = 1} x_l. It shares no code with CohomologyRing.

def _oracle_times_gen(m: Monomial, i: int, cols: tuple[tuple[int, ...], ...]) -> set[Monomial]:
    bit = 1 << (i - 1)
    if not m & bit:
        return {m | bit}
    out: set[Monomial] = set()
    for l in cols[i]:
        out ^= _oracle_times_gen(m, l, cols)
    return out


def _oracle_product(factors: list[list[int]], cols: tuple[tuple[int, ...], ...]) -> set[Monomial]:
    poly: set[Monomial] = {0}
    for linear in factors:
        nxt: set[Monomial] = set()
        for m in poly:
            for i in linear:
                nxt ^= _oracle_times_gen(m, i, cols)
        poly = nxt
        if not poly:
            break
    return poly


def sw_class_naive(a: BottMatrix, k: int) -> Z2Polynomial:
    """w_k as sigma_k(y_1..y_n): sum over all k-subsets of the reduced product."""
    _check_degree(k)
    if k > a.n:
        return ZERO
    cols = ((),) + tuple(a.column(j) for j in range(1, a.n + 1))
    acc: set[Monomial] = set()
    for subset in combinations(range(1, a.n + 1), k):
        factors = [list(cols[j]) for j in subset]
        if all(factors):
            acc ^= _oracle_product(factors, cols)
    return Z2Polynomial(frozenset(acc))


def w1_from_rows(a: BottMatrix) -> Z2Polynomial:
    """sum_i (row sum i mod 2) x_i."""
    return Z2Polynomial(
        frozenset(1 << (i - 1) for i, r in enumerate(a.rows, start=1) if r.bit_count() % 2)
    )


@dataclass(frozen=True)
class DecompositionReport:
    n: int
    k: int
    lhs: Z2Polynomial
    rhs: Z2Polynomial
    subset_terms: dict[tuple[int, ...], Z2Polynomial] = field(default_factory=dict)
    matrix: BottMatrix | None = None

    @property
    def degree(self) -> int:
        return 2 * self.k

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def nonzero_terms(self) -> dict[tuple[int, ...], Z2Polynomial]:
        return {s: w for s, w in self.subset_terms.items() if w}

    def render(self, show_all: bool = False) -> str:
        """Text form. Lists subsets whose rows are all nonzero in A, plus any
        other subset with a nonzero contribution."""
        d = self.degree
        lines = [f"w{d}: lhs = {self.lhs}", f"w{d}: rhs = {self.rhs}"]
        shown = 0
        for s, w in self.subset_terms.items():
            full = self.matrix is None or all(self.matrix.rows[i - 1] for i in s)
            if show_all or w or full:
                label = "".join(map(str, s)) if self.n < 10 else ",".join(map(str, s))
                lines.append(f"  w{d}(A_{label}) = {w}")
                shown += 1
        hidden = len(self.subset_terms) - shown
        if hidden:
            lines.append(f"  ({hidden} other subsets contribute 0)")
        lines.append(f"w{d}: {'EQUAL' if self.equal else 'MISMATCH'}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "lhs": self.lhs.to_index_lists(),
            "rhs": self.rhs.to_index_lists(),
            "equal": self.equal,
            "subsets": [
                {"indices": list(s), "w": w.to_index_lists()} for s, w in self.subset_terms.items()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def decomposition_sum(a: BottMatrix, k: int, lhs: Z2Polynomial | None = None) -> DecompositionReport:
    """Compare w_2k(A) with the GF(2) sum of w_2k(A_S) over all 2k-subsets S.

    Each summand lives in the ring of A_S; all are compared through the
    shared square-free monomial basis. For 2k > n there are no subsets and
    both sides are 0. ``lhs`` may be passed in when already known.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    d = 2 * k
    if lhs is None:
        lhs = sw_class(a, d)
    terms: dict[tuple[int, ...], Z2Polynomial] = {}
    rhs = ZERO
    for s in combinations(range(1, a.n + 1), d):
        w = _component_class(a.row_submatrix(s), d)
        terms[s] = w
        rhs = rhs + w
    return DecompositionReport(a.n, k, lhs, rhs, terms, a)


def verify_decomposition(a: BottMatrix) -> list[DecompositionReport]:
    """One report for each even degree 2 <= 2k <= n."""
    total = total_sw(a)
    return [decomposition_sum(a, k, total[2 * k]) for k in range(1, a.n // 2 + 1)]


def failing_degrees(reports: list[DecompositionReport]) -> list[int]:
    return [r.degree for r in reports if not r.equal]


EXAMPLE_TEXT = """\
0110000
0011000
0001100
0000110
0000011
0000000
0000000
"""


def example_matrix() -> BottMatrix:
    """The 7 x 7 matrix with a_{i,i+1} = a_{i,i+2} = 1 for rows 1..5."""
    return parse(EXAMPLE_TEXT)
