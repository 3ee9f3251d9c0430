"""Mod 2 cohomology of a real Bott manifold.

The ring is GF(2)[x_1, ..., x_n] modulo x_j^2 = x_j * sum_i a_ij x_i. Every
element has a unique normal form as a sum of square-free monomials.

A monomial is an ``int`` bitmask: bit ``i - 1`` set means ``x_i`` divides it,
so ``0`` is the unit monomial. Products that are not square-free only appear
inside :meth:`CohomologyRing.reduce_exponents`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .bott_matrix import BottMatrix, _bits

Monomial = int


def monomial(*indices: int) -> Monomial:
    m = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"generator index must be >= 1, got {i}")
        bit = 1 << (i - 1)
        if m & bit:
            raise ValueError(f"repeated generator x{i} in a square-free monomial")
        m |= bit
    return m


def variables(m: Monomial) -> tuple[int, ...]:
    return _bits(m)


def degree(m: Monomial) -> int:
    return m.bit_count()


def monomial_key(m: Monomial) -> tuple[int, tuple[int, ...]]:
    """Canonical order: by degree, then lexicographic on the index sequence."""
    return m.bit_count(), _bits(m)


def format_monomial(m: Monomial) -> str:
    if m == 0:
        return "1"
    return "*".join(f"x{i}" for i in _bits(m))


@dataclass(frozen=True)
class Z2Polynomial:
    """A GF(2) linear combination of square-free monomials."""

    terms: frozenset[Monomial] = frozenset()

    @classmethod
    def zero(cls) -> Z2Polynomial:
        return cls()

    @classmethod
    def one(cls) -> Z2Polynomial:
        return cls(frozenset([0]))

    @classmethod
    def gen(cls, i: int) -> Z2Polynomial:
        return cls(frozenset([monomial(i)]))

    @classmethod
    def from_monomials(cls, monos: Iterable[Monomial]) -> Z2Polynomial:
        """Sum monomials over GF(2); repeated monomials cancel in pairs."""
        acc: set[Monomial] = set()
        for m in monos:
            acc ^= {m}
        return cls(frozenset(acc))

    @classmethod
    def from_index_lists(cls, lists: Iterable[Iterable[int]]) -> Z2Polynomial:
        return cls.from_monomials(monomial(*idx) for idx in lists)

    @classmethod
    def parse(cls, text: str) -> Z2Polynomial:
        """Inverse of ``str``: e.g. ``"x1*x2 + x3"``, ``"1"`` or ``"0"``."""
        text = text.strip()
        if text == "0":
            return cls()
        monos = []
        for chunk in text.split("+"):
            chunk = chunk.strip()
            if chunk == "1":
                monos.append(0)
                continue
            factors = chunk.split("*")
            if not all(re.fullmatch(r"x[1-9][0-9]*", f.strip()) for f in factors):
                raise ValueError(f"cannot parse monomial {chunk!r}")
            monos.append(monomial(*(int(f.strip()[1:]) for f in factors)))
        return cls.from_monomials(monos)

    def __add__(self, other: Z2Polynomial) -> Z2Polynomial:
        return Z2Polynomial(self.terms ^ other.terms)

    __sub__ = __add__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def __contains__(self, m: Monomial) -> bool:
        return m in self.terms

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, key=monomial_key)

    def homogeneous_part(self, k: int) -> Z2Polynomial:
        return Z2Polynomial(frozenset(m for m in self.terms if m.bit_count() == k))

    def truncate(self, max_degree: int) -> Z2Polynomial:
        return Z2Polynomial(frozenset(m for m in self.terms if m.bit_count() <= max_degree))

    def degrees(self) -> set[int]:
        return {m.bit_count() for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def max_index(self) -> int:
        return max((m.bit_length() for m in self.terms), default=0)

    def to_index_lists(self) -> list[list[int]]:
        return [list(_bits(m)) for m in self.sorted_terms()]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(format_monomial(m) for m in self.sorted_terms())

    def __repr__(self) -> str:
        return f"Z2Polynomial({str(self)!r})"


ZERO = Z2Polynomial()
ONE = Z2Polynomial.one()


def add(p: Z2Polynomial, q: Z2Polynomial) -> Z2Polynomial:
    return p + q


def basis(n: int, k: int) -> list[Monomial]:
    """Square-free degree-``k`` monomials in ``x_1..x_n``, in canonical order."""
    if not 0 <= k <= n:
        raise ValueError(f"degree {k} outside 0..{n}")
    return [monomial(*c) for c in combinations(range(1, n + 1), k)]


class CohomologyRing:
    """H*(M_n(A); Z_2) for a fixed Bott matrix ``A``."""

    def __init__(self, a: BottMatrix):
        self.matrix = a
        self.n = a.n
        # _columns[j] lists i with a_ij = 1, all < j
        self._columns: tuple[tuple[int, ...], ...] = ((),) +tuple(a.column(j) for j in range(1, a.n + 1))
        self._product_cache: dict[tuple[Monomial, Monomial], frozenset[Monomial]] = {}

    def gen(self, i: int) -> Z2Polynomial:
        if not 1 <= i <= self.n:
            raise ValueError(f"generator index {i} out of range 1..{self.n}")
        return Z2Polynomial.gen(i)

    def reduce_exponents(self, exponents: dict[int, int], trace: list | None = None) -> frozenset[Monomial]:
        """Normal form of the monomial prod x_i^e_i as a set of square-free terms.

        Each step rewrites x_j^e (e >= 2) as x_j^(e-1) * sum_{a_ij=1} x_i,
        always for the largest squared index j. Since a_ij = 1 forces i < j,
        that index never grows and drops once x_j is square-free. If ``trace``
        is a list, ``(parent_j, parent_exp_j, child_j)`` is appended for every
        child produced, where ``child_j`` is 0 for a square-free child.
        """
        start = tuple(sorted((i, e) for i, e in exponents.items() if e > 0))
        pending: dict[tuple[tuple[int, int], ...], int] = {start: 1}
        out: set[Monomial] = set()
        while pending:
            mono, parity = pending.popitem()
            if not parity:
                continue
            squared = [i for i, e in mono if e >= 2]
            if not squared:
                out ^= {sum(1 << (i - 1) for i, _ in mono)}
                continue
            j = max(squared)
            exps = dict(mono)
            e_j = exps[j]
            exps[j] = e_j - 1
            for i in self._columns[j]:
                child = dict(exps)
                child[i] = child.get(i, 0) + 1
                key = tuple(sorted(child.items()))
                if trace is not None:
                    child_sq = [v for v, e in key if e >= 2]
                    trace.append((j, e_j, max(child_sq, default=0)))
                pending[key] = pending.get(key, 0) ^ 1
        return frozenset(out)

    def monomial_product(self, a: Monomial, b: Monomial) -> frozenset[Monomial]:
        if not a & b:
            return frozenset([a | b])
        key = (a, b) if a <= b else (b, a)
        hit = self._product_cache.get(key)
        if hit is None:
            exps: dict[int, int] = {}
            for m in key:
                for i in _bits(m):
                    exps[i] = exps.get(i, 0) + 1
            hit = self.reduce_exponents(exps)
            self._product_cache[key] = hit
        return hit

    def multiply(self, p: Z2Polynomial, q: Z2Polynomial) -> Z2Polynomial:
        acc: set[Monomial] = set()
        for a in p.terms:
            for b in q.terms:
                acc ^= self.monomial_product(a, b)
        return Z2Polynomial(frozenset(acc))

    def reduce_square(self, j: int) -> Z2Polynomial:
        """Normal form of x_j^2."""
        if not 1 <= j <= self.n:
            raise ValueError(f"generator index {j} out of range 1..{self.n}")
        return Z2Polynomial(self.reduce_exponents({j: 2}))

    def normal_form(self, p: Z2Polynomial) -> Z2Polynomial:
        """Identity on square-free input; present so the round trip can be checked."""
        acc: set[Monomial] = set()
        for m in p.terms:
            acc ^= self.reduce_exponents({i: 1 for i in _bits(m)})
        return Z2Polynomial(frozenset(acc))

    def power(self, p: Z2Polynomial, e: int) -> Z2Polynomial:
        result = ONE
        for _ in range(e):
            result = self.multiply(result, p)
        return result


@lru_cache(maxsize=4096)
def ring(a: BottMatrix) -> CohomologyRing:
    return CohomologyRing(a)


def multiply(p: Z2Polynomial, q: Z2Polynomial, a: BottMatrix) -> Z2Polynomial:
    return ring(a).multiply(p, q)


def reduce_square(j: int, a: BottMatrix) -> Z2Polynomial:
    return ring(a).reduce_square(j)
