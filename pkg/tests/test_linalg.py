import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cyclicbv import _elim_py
from cyclicbv.linalg import (
    SpanAccumulator,
    kernel_of_columns,
    nullspace_of_rows,
    rank_of_columns,
    rref,
    solve_in_span,
    vec_dot,
)

try:
    from cyclicbv import _elim
except ImportError:
    _elim = None


def frac(n, d=1):
    return Fraction(n, d)


def random_rows(rng, nrows, ncols, density=0.5):
    rows = []
    for _ in range(nrows):
        row = {}
        for c in range(ncols):
            if rng.random() < density:
                v = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                if v:
                    row[c] = v
        rows.append(row)
    return rows


def test_rref_simple():
    rows = [{0: frac(2), 1: frac(4)}, {0: frac(1), 1: frac(2)}, {1: frac(1)}]
    rr, cols = rref(rows)
    assert cols == [0, 1]
    assert rr[0] == {0: frac(1)}
    assert rr[1] == {1: frac(1)}


@pytest.mark.skipif(_elim is None, reason="compiled kernel not built")
def test_kernels_agree():
    rng = random.Random(7)
    for _ in range(25):
        rows = random_rows(rng, rng.randint(0, 8), rng.randint(1, 8))
        a = _elim.rref([dict(r) for r in rows])
        b = _elim_py.rref([dict(r) for r in rows])
        assert a == b


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.tuples(st.integers(0, 5),
                                   st.fractions(min_value=-3, max_value=3,
                                                max_denominator=4)),
                          max_size=5),
                max_size=6))
def test_rref_is_projection(entries):
    rows = []
    for r in entries:
        row = {}
        for c, v in r:
            if v:
                row[c] = row.get(c, 0) + v
        rows.append({c: v for c, v in row.items() if v})
    rr, cols = rref(rows)
    # idempotent: rref of the result is itself
    rr2, cols2 = rref([dict(r) for r in rr])
    assert rr2 == rr and cols2 == cols
    # every original row lies in the span of the pivots
    acc = SpanAccumulator()
    for r in rr:
        acc.add(r)
    for r in rows:
        assert acc.contains(r)


def test_kernel_of_columns():
    # columns: v0 = (1,0), v1 = (2,0), v2 = (0,1)
    cols = [{0: frac(1)}, {0: frac(2)}, {1: frac(1)}]
    ker = kernel_of_columns(cols)
    assert len(ker) == 1
    combo = {}
    for i, c in ker[0].items():
        for t, v in cols[i].items():
            combo[t] = combo.get(t, 0) + c * v
    assert all(v == 0 for v in combo.values())


def test_solve_in_span():
    vectors = [{"a": frac(1), "b": frac(1)}, {"b": frac(2)}]
    target = {"a": frac(3), "b": frac(7)}
    sol = solve_in_span(vectors, target)
    assert sol == [frac(3), frac(2)]
    assert solve_in_span(vectors, {"c": frac(1)}) is None


def test_nullspace_of_rows():
    rows = [{"x": frac(1), "y": frac(-1)}]
    basis = nullspace_of_rows(rows, ["x", "y", "z"])
    assert len(basis) == 2
    for v in basis:
        assert vec_dot(rows[0], v) == 0


def test_rank():
    assert rank_of_columns([{0: frac(1)}, {0: frac(2)}, {1: frac(1)}]) == 2
