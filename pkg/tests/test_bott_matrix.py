import json
import random

import pytest
from hypothesis import given, strategies as st

from realbott import BottMatrix, BottMatrixError, ParseError, enumerate_matrices, parse, serialize
from realbott.bott_matrix import MAX_DIM, from_dict, random_matrix

from _gen import EXAMPLE_ENTRIES

A1245_TEXT = "0110000\n0011000\n0000000\n0000110\n0000011\n0000000\n0000000\n"


@st.composite
def bott_matrices(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    rng = random.Random(draw(st.integers(0, 2**32)))
    return random_matrix(n, rng)


def test_new_klein():
    a = BottMatrix.new(2, [(1, 2)])
    assert a[1, 2] == 1 and a[2, 1] == 0
    assert list(a.entries()) == [(1, 2)]


def test_new_zero():
    a = BottMatrix.new(3, [])
    assert a == BottMatrix.zero(3)
    assert a.rows == (0, 0, 0)


def test_new_example(example):
    assert sorted(example.entries()) == EXAMPLE_ENTRIES


@pytest.mark.parametrize("n, entries", [
    (2, [(2, 1)]),
    (3, [(2, 2)]),
    (3, [(1, 4)]),
    (3, [(0, 2)]),
    (0, []),
    (MAX_DIM + 1, []),
])
def test_new_rejects(n, entries):
    with pytest.raises(BottMatrixError):
        BottMatrix.new(n, entries)


def test_dimension_cap_accepts_64():
    assert BottMatrix.new(64, [(1, 64)])[1, 64] == 1


def test_raw_rows_validated():
    with pytest.raises(BottMatrixError):
        BottMatrix(2, (0b01, 0))  # a_11
    with pytest.raises(BottMatrixError):
        BottMatrix(2, (0b100, 0))  # column 3


def test_row_submatrix_example(example):
    assert example.row_submatrix({1, 2, 4, 5}) == parse(A1245_TEXT)


def test_row_submatrix_trivial(example):
    assert example.row_submatrix(range(1, 8)) == example
    assert example.row_submatrix(()) == BottMatrix.zero(7)


def test_row_submatrix_range(example):
    with pytest.raises(BottMatrixError):
        example.row_submatrix({8})


def test_orientability(klein, example):
    assert BottMatrix.zero(5).is_orientable()
    assert not klein.is_orientable()
    assert example.is_orientable()


def test_holonomy_rank(klein, example):
    assert BottMatrix.zero(4).holonomy_rank() == 0
    assert example.holonomy_rank() == 5
    assert klein.holonomy_rank() == 1


def test_gf2_rank():
    assert BottMatrix.new(3, [(1, 3), (2, 3)]).gf2_rank() == 1
    assert BottMatrix.new(3, [(1, 2), (2, 3)]).gf2_rank() == 2


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 8), (4, 64), (5, 1024)])
def test_enumerate_counts(n, count):
    mats = list(enumerate_matrices(n))
    assert len(mats) == count
    assert len(set(mats)) == count


def test_enumerate_order():
    assert [str(m) for m in enumerate_matrices(2)] == ["00\n00", "01\n00"]
    mats = list(enumerate_matrices(3))
    assert mats[0] == BottMatrix.zero(3)
    # last flattened position (2,3) is the least significant bit
    assert mats[1] == BottMatrix.new(3, [(2, 3)])
    assert mats[4] == BottMatrix.new(3, [(1, 2)])
    assert mats[-1] == BottMatrix.new(3, [(1, 2), (1, 3), (2, 3)])


def test_enumerate_cap():
    with pytest.raises(BottMatrixError):
        next(enumerate_matrices(9))
    with pytest.raises(BottMatrixError):
        next(enumerate_matrices(5, max_bits=9))


def test_parse_small():
    assert parse("00\n00") == BottMatrix.zero(2)
    assert parse("01\n00") == BottMatrix.new(2, [(1, 2)])
    assert parse("01\r\n00\r\n") == BottMatrix.new(2, [(1, 2)])


def test_parse_example(example):
    text = "0110000\n0011000\n0001100\n0000110\n0000011\n0000000\n0000000"
    assert parse(text) == BottMatrix.new(7, EXAMPLE_ENTRIES) == example


@pytest.mark.parametrize("text, line, column", [
    ("01\n0", 2, None),      # ragged
    ("0x\n00", 1, 2),        # non-binary
    ("00\n10", 2, 1),        # lower triangle
    ("01\n01", 2, 2),        # diagonal
    ("", 1, None),
    ("01 \n00", 1, None),
])
def test_parse_errors(text, line, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line
    assert info.value.column == column


def test_json_roundtrip(example):
    data = json.loads(example.to_json())
    assert data == {"n": 7, "rows": [[2, 3], [3, 4], [4, 5], [5, 6], [6, 7], [], []]}
    assert parse(example.to_json()) == example
    with pytest.raises(BottMatrixError):
        from_dict({"n": 2, "rows": [[1], []]})


def test_serialize_parse_roundtrip_exhaustive():
    for n in range(1, 6):
        for a in enumerate_matrices(n):
            assert parse(serialize(a)) == a


def test_serialize_canonical():
    assert serialize(parse("01\n00")) == "01\n00\n"


@given(bott_matrices(), st.sets(st.integers(1, 8)))
def test_row_submatrix_properties(a, s):
    s = {i for i in s if i <= a.n}
    sub = a.row_submatrix(s)
    assert sub.holonomy_rank() <= len(s)
    assert sub.row_submatrix(s) == sub
    for i in range(1, a.n + 1):
        assert sub.row(i) == (a.row(i) if i in s else ())


@given(bott_matrices())
def test_columns_match_rows(a):
    for i, j in a.entries():
        assert i in a.column(j)
    assert sum(len(a.column(j)) for j in range(1, a.n + 1)) == len(list(a.entries()))
    assert a.column(1) == ()
