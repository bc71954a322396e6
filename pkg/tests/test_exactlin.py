from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import rank as oracle_rank
from toric_parliament.exactlin import (DimensionMismatch, Subspace, complement_in, determinant,
                                       format_rational, intersect, inverse, nullspace,
                                       parse_rational, primitive, quotient_rank_of_images, rank,
                                       rref, solve_coordinates)

small = st.integers(min_value=-4, max_value=4)


def vectors(n, max_count=4):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=0, max_size=max_count)


@pytest.mark.parametrize("text,value", [
    (3, Fraction(3)), ("-2/6", Fraction(-1, 3)), ("7", Fraction(7)), ("−1/2", Fraction(-1, 2)),
    (" 4 / 8 ", Fraction(1, 2)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", True, None, "1/-2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


@given(st.fractions(max_denominator=50))
def test_rational_text_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_primitive_normalization():
    assert primitive((0, -2, 4)) == (0, 1, -2)
    assert primitive((Fraction(1, 2), Fraction(1, 3))) == (3, 2)
    with pytest.raises(ValueError):
        primitive((0, 0))


def test_span_is_canonical():
    a = Subspace.span([(1, 1, 0), (0, 1, 0)], 3)
    b = Subspace.span([(1, 0, 0), (2, 3, 0), (0, 5, 0)], 3)
    assert a == b and a.dim == 2 and hash(a) == hash(b)


def test_intersection_of_two_planes_is_a_line():
    a = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    b = Subspace.span([(0, 1, 0), (0, 0, 1)], 3)
    assert intersect(a, b) == Subspace.span([(0, 1, 0)], 3)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Subspace.full(2) + Subspace.full(3)
    with pytest.raises(DimensionMismatch):
        rref([(1, 2)], 3)


def test_complement_extends_a_basis():
    v = Subspace.full(3)
    w = Subspace.span([(1, 1, 0)], 3)
    extra = complement_in(v, w)
    assert len(extra) == 2
    assert Subspace.span(list(w.basis) + extra, 3) == v


def test_quotient_rank():
    u = Subspace.full(3)
    w = Subspace.span([(1, 0, 0)], 3)
    assert quotient_rank_of_images([(1, 0, 0), (1, 1, 0), (0, 1, 0)], u, w) == 1
    with pytest.raises(ValueError):
        quotient_rank_of_images([], w, u)


def test_inverse_and_determinant():
    m = [[-1, -1], [0, 1]]
    assert determinant(m) == -1
    inv = inverse(m)
    assert [[sum(m[i][k] * inv[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)] == [[1, 0], [0, 1]]


def test_solve_coordinates():
    assert solve_coordinates([(1, 1), (0, 1)], (2, 5)) == (2, 3)


@given(vectors(4, 6))
def test_rank_agrees_with_independent_elimination(rows):
    assert rank(rows, 4) == oracle_rank(rows, 4)
    assert Subspace.span(rows, 4).dim == oracle_rank(rows, 4)


@given(vectors(4, 5))
def test_rank_nullity(rows):
    assert rank(rows, 4) + len(nullspace(rows, 4)) == 4


@given(vectors(3), vectors(3))
def test_grassmann_formula(a_rows, b_rows):
    a, b = Subspace.span(a_rows, 3), Subspace.span(b_rows, 3)
    meet = a & b
    assert (a + b).dim + meet.dim == a.dim + b.dim
    assert meet <= a and meet <= b
    assert a <= a + b and b <= a + b


@given(vectors(3), vectors(3))
def test_complement_property(v_rows, w_rows):
    v, w = Subspace.span(v_rows, 3), Subspace.span(w_rows, 3)
    extra = complement_in(v, w)
    assert all(v.contains(e) for e in extra)
    assert len(extra) == v.dim - (v & w).dim
    assert Subspace.span(list((v & w).basis) + extra, 3) == v


@given(vectors(3))
def test_perp_is_an_involution(rows):
    s = Subspace.span(rows, 3)
    assert s.perp().perp() == s
    assert s.dim + s.perp().dim == 3
