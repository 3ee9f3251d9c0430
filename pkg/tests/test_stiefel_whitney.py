import json
import random

import pytest

from realbott import (
    BottMatrix,
    TotalSWClass,
    decomposition_sum,
    is_orientable,
    line_class,
    random_matrix,
    sw_class,
    sw_class_naive,
    total_sw,
    verify_decomposition,
    w1_from_rows,
)
from realbott.stiefel_whitney import DecompositionReport, failing_degrees

from _gen import KLEIN, P

EXAMPLE_W4 = P("x2*x3*x4*x5 + x1*x3*x4*x5 + x1*x2*x3*x5 + x1*x2*x3*x4")
EXAMPLE_PARTS = {
    (1, 2, 3, 4): P("x1*x2*x3*x4"),
    (1, 2, 3, 5): P("x1*x2*x3*x5"),
    (1, 2, 4, 5): P("0"),
    (1, 3, 4, 5): P("x1*x3*x4*x5"),
    (2, 3, 4, 5): P("x2*x3*x4*x5"),
}


def test_line_class(example):
    assert line_class(example, 1) == P("0")
    assert line_class(example, 3) == P("x1 + x2")
    assert line_class(KLEIN, 2) == P("x1")
    with pytest.raises(ValueError):
        line_class(KLEIN, 3)


@pytest.mark.parametrize("n", [1, 4, 10])
def test_total_sw_torus(n):
    w = total_sw(BottMatrix.zero(n))
    assert w.components == (P("1"),) + (P("0"),) * n


def test_total_sw_klein():
    w = total_sw(KLEIN)
    assert w.components == (P("1"), P("x1"), P("0"))
    assert w.render() == "w = 1 + x1\nw0 = 1\nw1 = x1\nw2 = 0"


def test_total_sw_example(example):
    assert total_sw(example)[4] == EXAMPLE_W4


def test_total_sw_dict_roundtrip(example):
    w = total_sw(example)
    assert TotalSWClass.from_dict(json.loads(json.dumps(w.to_dict()))) == w


def test_total_sw_truncation_agrees(example):
    full = total_sw(example)
    for k in range(8):
        assert total_sw(example, max_degree=k)[k] == full[k]


def test_total_class_invariants():
    with pytest.raises(ValueError):
        TotalSWClass(1, (P("0"), P("x1")))
    with pytest.raises(ValueError):
        TotalSWClass(2, (P("1"), P("x1*x2"), P("0")))


def test_sw_class_examples(example):
    assert sw_class(example.row_submatrix({1, 2, 4, 5}), 4) == P("0")
    assert sw_class(example.row_submatrix({1, 3, 4, 5}), 4) == P("x1*x3*x4*x5")
    assert sw_class(example, 0) == P("1")
    assert sw_class(KLEIN, 5) == P("0")
    with pytest.raises(ValueError):
        sw_class(KLEIN, -1)


def test_sw_class_naive_examples(example):
    assert sw_class_naive(BottMatrix.zero(4), 2) == P("0")
    assert sw_class_naive(KLEIN, 1) == P("x1")
    assert sw_class_naive(example, 4) == EXAMPLE_W4


@pytest.mark.parametrize("seed", range(10))
def test_naive_matches_incremental(seed):
    rng = random.Random(seed)
    a = random_matrix(rng.randint(1, 7), rng)
    for k in range(a.n + 1):
        assert sw_class(a, k) == sw_class_naive(a, k)


def test_w1_from_rows(example):
    assert w1_from_rows(BottMatrix.zero(3)) == P("0")
    assert w1_from_rows(KLEIN) == P("x1")
    assert w1_from_rows(example) == P("0")
    a = BottMatrix.new(4, [(1, 2), (1, 3), (1, 4), (2, 4)])
    assert w1_from_rows(a) == sw_class(a, 1) == P("x1 + x2")
    assert not is_orientable(a)


def test_decomposition_example(example):
    rep = decomposition_sum(example, 2)
    assert rep.equal
    assert rep.lhs == rep.rhs == EXAMPLE_W4
    assert len(rep.subset_terms) == 35
    for s, w in EXAMPLE_PARTS.items():
        assert rep.subset_terms[s] == w
    # every other 4-subset includes a zero row
    assert {s for s, w in rep.subset_terms.items() if w} <= set(EXAMPLE_PARTS)


def test_decomposition_render(example):
    text = decomposition_sum(example, 2).render()
    for label in ("1234", "1235", "1245", "1345", "2345"):
        assert f"w4(A_{label}) = " in text
    assert "w4(A_1245) = 0" in text
    assert "(30 other subsets contribute 0)" in text
    assert text.endswith("w4: EQUAL")


def test_decomposition_json(example):
    data = json.loads(decomposition_sum(example, 2).to_json())
    assert set(data) == {"n", "k", "lhs", "rhs", "equal", "subsets"}
    assert data["equal"] is True
    assert data["lhs"] == [[1, 2, 3, 4], [1, 2, 3, 5], [1, 3, 4, 5], [2, 3, 4, 5]]
    assert {"indices": [1, 2, 4, 5], "w": []} in data["subsets"]


def test_decomposition_zero_matrix():
    for k in (1, 2, 3):
        rep = decomposition_sum(BottMatrix.zero(5), k)
        assert rep.lhs == rep.rhs == P("0") and rep.equal
    assert decomposition_sum(BottMatrix.zero(5), 3).subset_terms == {}


def test_decomposition_bad_k():
    with pytest.raises(ValueError):
        decomposition_sum(KLEIN, 0)


@pytest.mark.parametrize("seed", range(8))
def test_decomposition_random_n5_against_oracle(seed):
    a = random_matrix(5, random.Random(100 + seed))
    rep = decomposition_sum(a, 1)
    assert rep.lhs == sw_class_naive(a, 2)
    rhs = P("0")
    for s in rep.subset_terms:
        w = sw_class_naive(a.row_submatrix(s), 2)
        assert rep.subset_terms[s] == w
        rhs = rhs + w
    assert rhs == rep.rhs == rep.lhs


def test_verify_decomposition_degrees(example):
    reps = verify_decomposition(BottMatrix.zero(4))
    assert [r.degree for r in reps] == [2, 4]
    assert all(r.equal for r in reps)
    reps = verify_decomposition(example)
    assert [r.degree for r in reps] == [2, 4, 6]
    assert reps[1].equal
    assert failing_degrees(reps) == []


def test_failing_degrees_surfaces_mismatch():
    bad = DecompositionReport(4, 1, P("x1*x2"), P("0"), {})
    good = DecompositionReport(4, 2, P("0"), P("0"), {})
    assert not bad.equal
    assert failing_degrees([bad, good]) == [2]
    assert "MISMATCH" in bad.render()
