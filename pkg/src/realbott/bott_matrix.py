"""Bott matrices: strictly upper-triangular n x n matrices over {0, 1}.

Row ``i`` is stored as an integer bitmask where bit ``j - 1`` is set iff
``a_ij = 1`` (indices are 1-based throughout the package).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

MAX_DIM = 64
DEFAULT_ENUM_BITS = 28  # n(n-1)/2 for n = 8


class BottMatrixError(ValueError):
    pass


class ParseError(BottMatrixError):
    """Malformed matrix text; carries a 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class BottMatrix:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise BottMatrixError(f"dimension must be a positive integer, got {self.n!r}")
        if self.n > MAX_DIM:
            raise BottMatrixError(f"dimension {self.n} exceeds cap of {MAX_DIM}")
        if len(self.rows) != self.n:
            raise BottMatrixError(f"expected {self.n} rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows, start=1):
            if row < 0 or row >> self.n:
                raise BottMatrixError(f"row {i} has a column index outside 1..{self.n}")
            if row & ((1 << i) - 1):
                raise BottMatrixError(f"row {i} has an entry on or below the diagonal")

    @classmethod
    def new(cls, n: int, entries: Iterable[tuple[int, int]] = ()) -> BottMatrix:
        """Build from 1-based ``(row, col)`` pairs of unit entries."""
        if not isinstance(n, int) or n < 1:
            raise BottMatrixError(f"dimension must be a positive integer, got {n!r}")
        if n > MAX_DIM:
            raise BottMatrixError(f"dimension {n} exceeds cap of {MAX_DIM}")
        rows = [0] * n
        for i, j in entries:
            if not (1 <= i <= n and 1 <= j <= n):
                raise BottMatrixError(f"entry ({i}, {j}) out of range for n = {n}")
            if i >= j:
                raise BottMatrixError(f"entry ({i}, {j}) is not strictly upper triangular")
            rows[i - 1] |= 1 << (j - 1)
        return cls(n, tuple(rows))

    @classmethod
    def zero(cls, n: int) -> BottMatrix:
        return cls.new(n)

    @classmethod
    def from_code(cls, n: int, code: int) -> BottMatrix:
        """Decode the ``code``-th matrix of :func:`enumerate_matrices`.

        The strict upper triangle is flattened row-major; the first position
        (1, 2) is the most significant bit.
        """
        positions = upper_positions(n)
        m = len(positions)
        if not 0 <= code < (1 << m):
            raise BottMatrixError(f"code {code} out of range for n = {n}")
        rows = [0] * n
        for t, (i, j) in enumerate(positions):
            if code >> (m - 1 - t) & 1:
                rows[i - 1] |= 1 << (j - 1)
        return cls(n, tuple(rows))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        self._check_index(i)
        self._check_index(j)
        return self.rows[i - 1] >> (j - 1) & 1

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise BottMatrixError(f"index {i} out of range 1..{self.n}")

    def row(self, i: int) -> tuple[int, ...]:
        """Column indices ``j`` with ``a_ij = 1``."""
        self._check_index(i)
        return _bits(self.rows[i - 1])

    @cached_property
    def column_masks(self) -> tuple[int, ...]:
        """Column ``j`` as a bitmask over rows, at position ``j - 1``."""
        cols = [0] * self.n
        for i, r in enumerate(self.rows):
            for j in _bits(r):
                cols[j - 1] |= 1 << i
        return tuple(cols)

    def column(self, j: int) -> tuple[int, ...]:
        """Row indices ``i`` with ``a_ij = 1``; always a subset of ``1..j-1``."""
        self._check_index(j)
        return _bits(self.column_masks[j - 1])

    def entries(self) -> Iterator[tuple[int, int]]:
        for i, r in enumerate(self.rows, start=1):
            for j in _bits(r):
                yield i, j

    def row_submatrix(self, rows: Iterable[int]) -> BottMatrix:
        """Keep the listed rows, zero the others. Dimension is unchanged."""
        keep = set(rows)
        for i in keep:
            self._check_index(i)
        return BottMatrix(
            self.n, tuple(r if i in keep else 0 for i, r in enumerate(self.rows, start=1))
        )

    def is_orientable(self) -> bool:
        return all(r.bit_count() % 2 == 0 for r in self.rows)

    def holonomy_rank(self) -> int:
        """Number of nonzero rows."""
        return sum(1 for r in self.rows if r)

    def gf2_rank(self) -> int:
        """Rank of the matrix over GF(2)."""
        rank = 0
        pivots: dict[int, int] = {}
        for r in self.rows:
            while r:
                top = r.bit_length() - 1
                if top not in pivots:
                    pivots[top] = r
                    rank += 1
                    break
                r ^= pivots[top]
        return rank

    def to_text(self) -> str:
        return "\n".join(
            "".join("1" if r >> j & 1 else "0" for j in range(self.n)) for r in self.rows
        ) + "\n"

    def to_dict(self) -> dict:
        return {"n": self.n, "rows": [list(self.row(i)) for i in range(1, self.n + 1)]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __str__(self) -> str:
        return self.to_text().rstrip("\n")


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def new(n: int, entries: Iterable[tuple[int, int]] = ()) -> BottMatrix:
    return BottMatrix.new(n, entries)


def row_submatrix(a: BottMatrix, rows: Iterable[int]) -> BottMatrix:
    return a.row_submatrix(rows)


def is_orientable(a: BottMatrix) -> bool:
    return a.is_orientable()


def holonomy_rank(a: BottMatrix) -> int:
    return a.holonomy_rank()


def upper_positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def count_matrices(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def enumerate_matrices(n: int, max_bits: int = DEFAULT_ENUM_BITS) -> Iterator[BottMatrix]:
    """Yield every Bott matrix of dimension ``n`` exactly once.

    Order is lexicographic on the row-major flattened strict upper triangle,
    starting from the zero matrix. Refuses when ``n(n-1)/2 > max_bits``.
    """
    if n < 1:
        raise BottMatrixError(f"dimension must be positive, got {n}")
    bits = n * (n - 1) // 2
    if bits > max_bits:
        raise BottMatrixError(
            f"enumeration of n = {n} needs 2^{bits} matrices, cap is 2^{max_bits}"
        )
    for code in range(1 << bits):
        yield BottMatrix.from_code(n, code)


def random_matrix(n: int, rng: random.Random | None = None, density: float = 0.5) -> BottMatrix:
    rng = rng or random.Random()
    return BottMatrix.new(n, [p for p in upper_positions(n) if rng.random() < density])


def parse(text: str) -> BottMatrix:
    """Read the 0/1 text format, or the JSON form if ``text`` starts with ``{``."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty matrix", 1)
    n = len(lines)
    if n > MAX_DIM:
        raise BottMatrixError(f"dimension {n} exceeds cap of {MAX_DIM}")
    rows = []
    for ln, line in enumerate(lines, start=1):
        line = line.rstrip("\r")
        if len(line) != n:
            raise ParseError(f"expected {n} characters, got {len(line)}", ln)
        r = 0
        for col, ch in enumerate(line, start=1):
            if ch == "1":
                if col <= ln:
                    raise ParseError("1 on or below the diagonal", ln, col)
                r |= 1 << (col - 1)
            elif ch != "0":
                raise ParseError(f"non-binary character {ch!r}", ln, col)
        rows.append(r)
    return BottMatrix(n, tuple(rows))


def parse_json(text: str) -> BottMatrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return from_dict(data)


def from_dict(data: dict) -> BottMatrix:
    try:
        n = data["n"]
        rows = data["rows"]
    except (KeyError, TypeError):
        raise BottMatrixError('JSON matrix needs "n" and "rows"') from None
    if not isinstance(rows, list) or len(rows) != n:
        raise BottMatrixError(f'"rows" must be a list of {n} column lists')
    return BottMatrix.new(n, [(i, j) for i, cols in enumerate(rows, start=1) for j in cols])


def serialize(a: BottMatrix) -> str:
    return a.to_text()
