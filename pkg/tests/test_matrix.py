import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gpwkit.errors import MatrixError
from gpwkit.matrix import (O_ALGOS, O_VARIANTS, TopsnutMatrix, ValueMatrix, apply_or_solve_linear, build_avev,
                           column_exchange, compound, joining, kline_validate, render, serialize_o, serialize_rows,
                           serialize_vo, strong_rank, tbpaw_count, xy_exchange, zero_permutation_count)

cols = st.lists(st.tuples(st.integers(-20, 99), st.integers(-20, 99), st.integers(-20, 99)), min_size=1, max_size=12)


def mat(columns):
    return TopsnutMatrix(tuple(columns))


@settings(max_examples=80, deadline=None)
@given(cols, st.sampled_from(O_ALGOS), st.sampled_from(O_VARIANTS))
def test_every_traversal_reads_each_cell_once(columns, algo, variant):
    m = mat(columns)
    t = serialize_o(m, algo, variant)
    assert sorted(t.positions) == sorted((r, c) for r in range(3) for c in range(m.q))
    assert list(t.tokens) == [render(m.cell(p)) for p in t.positions]


@settings(max_examples=40, deadline=None)
@given(cols)
def test_o4_and_o2_are_one_line(columns):
    # column-by-column readings never jump, so one segment suffices
    m = mat(columns)
    for algo in ("O2", "O4"):
        assert kline_validate(serialize_o(m, algo), m, 1).ok


def test_o1_reading_order():
    m = TopsnutMatrix.from_rows([1, 2, 3], [4, 5, 6], [7, 8, 9])
    assert serialize_o(m, "O1").text == "123654789"
    assert serialize_o(m, "O4").text == "147258369"
    assert [t.text for t in serialize_rows(m)] == ["123", "456", "789"]


def test_render_negative():
    assert render(-12) == "x12" and render(7) == "7"


@settings(max_examples=40, deadline=None)
@given(cols, st.data())
def test_exchanges_are_involutions(columns, data):
    m = mat(columns)
    i = data.draw(st.integers(1, m.q))
    j = data.draw(st.integers(1, m.q))
    assert column_exchange(column_exchange(m, i, j), i, j) == m
    assert xy_exchange(xy_exchange(m, i), i) == m


@settings(max_examples=40, deadline=None)
@given(cols)
def test_inverse_reverses(columns):
    t = serialize_o(mat(columns), "O1")
    assert t.inverse().inverse().tokens == t.tokens
    assert t.inverse().tokens == t.tokens[::-1]


def test_compound_and_joining():
    a = TopsnutMatrix.from_rows([1], [2], [3])
    b = TopsnutMatrix.from_rows([4], [5], [6])
    c = compound(a, b)
    assert c.q == 2
    assert joining(c, [2, 1]).text == "456123"
    with pytest.raises(MatrixError):
        joining(c, [1, 1])


def test_bad_indices():
    m = TopsnutMatrix.from_rows([1, 2], [3, 4], [5, 6])
    with pytest.raises(MatrixError):
        column_exchange(m, 0, 1)
    with pytest.raises(MatrixError):
        serialize_o(m, "O9")
    with pytest.raises(MatrixError):
        TopsnutMatrix.from_rows([1], [2, 3], [4])


def test_avev_columns_on_corpus(t4476):
    g, lab = t4476
    m = build_avev(g, lab)
    f = lab.vertex_values
    assert m.q == g.q
    for (x, w, y), (a, b) in zip(m.columns, m.edge_binding):
        assert (x, y) == (f[a], f[b]) and w == abs(x - y)


@pytest.mark.parametrize("q", range(1, 8))
def test_counts(q):
    mats, per = tbpaw_count(q)
    assert mats == 2 * q + math.factorial(q)
    assert per == math.factorial(3 * q)
    assert zero_permutation_count(q) == q * math.factorial(q)


def test_strong_rank():
    assert strong_rank("0123456789", 10) == pytest.approx(10 * math.log2(10))
    with pytest.raises(MatrixError):
        strong_rank("1", 1)


def test_vo_lines_cover_grid():
    m = ValueMatrix.of([[1, 2, 3], [4, 5, 6]])
    for line in ("Vo1", "Vo2", "Vo3", "Vo4"):
        t = serialize_vo(m, line)
        assert sorted(t.positions) == [(r, c) for r in range(2) for c in range(3)]
    assert serialize_vo(m, "Vo1").text == "123654"
    assert serialize_vo(m, "Vo4").text == "142536"


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 9), min_size=4, max_size=4))
def test_linear_round_trip(x):
    a = [[1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, 3], [0, 0, 0, 1]]
    assert sympy.Matrix(a).det() % 10 in (1, 3, 7, 9)
    y = apply_or_solve_linear(a, x, "apply")
    assert apply_or_solve_linear(a, y, "solve") == x


def test_linear_singular():
    with pytest.raises(MatrixError):
        apply_or_solve_linear([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], [1, 2, 3, 4], "solve")
