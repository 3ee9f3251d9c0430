"""Exact affine model of the Bieberbach group of a real Bott manifold.

Elements are pairs (D, t) acting by x -> D x + t, with D diagonal with
entries +-1 and t a vector of dyadic rationals. No floating point is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .bott_matrix import BottMatrix

HALF = Fraction(1, 2)


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


@dataclass(frozen=True)
class AffineMap:
    diag: tuple[int, ...]
    trans: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.diag) != len(self.trans):
            raise ValueError("linear part and translation differ in length")
        if any(d not in (1, -1) for d in self.diag):
            raise ValueError(f"diagonal entries must be +-1, got {self.diag}")
        if not all(isinstance(t, Fraction) and _is_dyadic(t) for t in self.trans):
            raise ValueError(f"translation must be dyadic rationals, got {self.trans}")

    @classmethod
    def make(cls, diag: Iterable[int], trans: Iterable) -> AffineMap:
        return cls(tuple(diag), tuple(Fraction(t) for t in trans))

    @classmethod
    def identity(cls, n: int) -> AffineMap:
        return cls((1,) * n, (Fraction(0),) * n)

    @classmethod
    def translation(cls, vec: Sequence) -> AffineMap:
        return cls((1,) * len(vec), tuple(Fraction(v) for v in vec))

    @property
    def n(self) -> int:
        return len(self.diag)

    def compose(self, other: AffineMap) -> AffineMap:
        """self o other: (D1, t1)(D2, t2) = (D1 D2, D1 t2 + t1)."""
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        return AffineMap(
            tuple(a * b for a, b in zip(self.diag, other.diag)),
            tuple(d * t2 + t1 for d, t1, t2 in zip(self.diag, self.trans, other.trans)),
        )

    __matmul__ = compose

    def inverse(self) -> AffineMap:
        return AffineMap(self.diag, tuple(-d * t for d, t in zip(self.diag, self.trans)))

    def apply(self, point: Sequence) -> tuple[Fraction, ...]:
        return tuple(d * Fraction(x) + t for d, x, t in zip(self.diag, point, self.trans))

    def is_translation(self) -> bool:
        return all(d == 1 for d in self.diag)

    def __str__(self) -> str:
        return f"(diag: [{', '.join(map(str, self.diag))}], t: [{', '.join(map(str, self.trans))}])"


def compose(f: AffineMap, g: AffineMap) -> AffineMap:
    return f.compose(g)


def inverse(f: AffineMap) -> AffineMap:
    return f.inverse()


def unit_vector(n: int, i: int, scale=1) -> tuple[Fraction, ...]:
    return tuple(Fraction(scale) if j == i else Fraction(0) for j in range(1, n + 1))


def generator(a: BottMatrix, i: int) -> AffineMap:
    """s_i: sign (-1)^a_ij at position j > i, translation e_i / 2."""
    if not 1 <= i <= a.n:
        raise ValueError(f"generator index {i} out of range 1..{a.n}")
    row = a.rows[i - 1]
    diag = tuple(-1 if row >> (j - 1) & 1 else 1 for j in range(1, a.n + 1))
    return AffineMap(diag, unit_vector(a.n, i, HALF))


def generators(a: BottMatrix) -> list[AffineMap]:
    return [generator(a, i) for i in range(1, a.n + 1)]


def lattice_failures(a: BottMatrix) -> list[str]:
    """Reasons the squares s_i^2 fail to be commuting unit translations."""
    problems = []
    squares = [s @ s for s in generators(a)]
    for i, sq in enumerate(squares, start=1):
        if sq != AffineMap.translation(unit_vector(a.n, i)):
            problems.append(f"s{i}^2 = {sq} is not translation by e{i}")
    for (i, p), (j, q) in combinations(enumerate(squares, start=1), 2):
        if p @ q != q @ p:
            problems.append(f"s{i}^2 and s{j}^2 do not commute")
    return problems


def check_lattice(a: BottMatrix) -> bool:
    return not lattice_failures(a)


def conjugation_failures(a: BottMatrix) -> list[str]:
    """Check s_i t_e s_i^-1 = t_(D_i e) for each generator and unit translation."""
    problems = []
    for i, s in enumerate(generators(a), start=1):
        s_inv = s.inverse()
        for j in range(1, a.n + 1):
            e = unit_vector(a.n, j)
            got = s @ AffineMap.translation(e) @ s_inv
            want = AffineMap.translation(tuple(d * x for d, x in zip(s.diag, e)))
            if got != want:
                problems.append(f"s{i} t_e{j} s{i}^-1 = {got}, expected {want}")
    return problems


def check_conjugation(a: BottMatrix) -> bool:
    return not conjugation_failures(a)


def holonomy_image(a: BottMatrix) -> set[tuple[int, ...]]:
    """Closure of the linear parts of the generators under multiplication."""
    identity = (1,) * a.n
    gens = {s.diag for s in generators(a)} - {identity}
    group = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                prod = tuple(x * y for x, y in zip(g, h))
                if prod not in group:
                    group.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return group
