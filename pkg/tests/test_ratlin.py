from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parallelo import ratlin as rl
from parallelo.errors import DimensionMismatchError, FormatError, NotSublatticeError
from oracles import det as oracle_det
from oracles import solve_coords

H = Fraction(1, 2)


@pytest.mark.parametrize("text,value", [("3/2", Fraction(3, 2)), ("-1", Fraction(-1)),
                                        ("0", Fraction(0)), ("4/6", Fraction(2, 3))])
def test_parse_rational(text, value):
    r = rl.parse_rational(text)
    assert r == value and r.denominator > 0


@pytest.mark.parametrize("text", ["1/0", "1.5", "", "a", "1/-2", "--1", "1 /2"])
def test_parse_rational_rejects(text):
    with pytest.raises(FormatError):
        rl.parse_rational(text)


def test_hnf_examples():
    assert rl.hnf([(4, 6), (2, 4)]).basis == ((2, 0), (0, 2))
    assert rl.hnf([(1, 0), (0, 1)]).basis == ((1, 0), (0, 1))
    L = rl.hnf([(1, 0, 0)])
    assert L.basis == ((1, 0, 0),) and L.rank == 1


def test_hnf_hexagon_lattice():
    L = rl.hnf([(Fraction(3, 2), 1), (0, 2), (Fraction(-3, 2), 1)])
    assert L.basis == ((Fraction(3, 2), 1), (0, 2))
    assert L.determinant() == 3


def test_hnf_zero_rows_dropped():
    L = rl.hnf([(0, 0), (0, 0)])
    assert L.rank == 0 and str(L) == "{0}"


def test_hnf_dimension_errors():
    with pytest.raises(DimensionMismatchError):
        rl.hnf([(1, 0), (1, 0, 0)])
    with pytest.raises(DimensionMismatchError):
        rl.hnf([])


def test_member_examples():
    L = rl.hnf([(2, 0), (0, 2)])
    assert rl.member(L, (4, -2))
    assert not rl.member(L, (1, 0))
    hexl = rl.hnf([(Fraction(3, 2), 1), (0, 2)])
    assert rl.member(hexl, (Fraction(-3, 2), 1))
    assert not rl.member(hexl, (Fraction(3, 2), 0))
    with pytest.raises(DimensionMismatchError):
        rl.member(L, (1, 2, 3))


def test_direct_sum_examples():
    Z2 = rl.hnf([(1, 0), (0, 1)])
    assert rl.direct_sum_check(Z2, rl.hnf([(1, 0)]), rl.hnf([(0, 1)]))
    # index 2: (1,1) and (1,-1) span a proper sublattice
    assert not rl.direct_sum_check(Z2, rl.hnf([(1, 1)]), rl.hnf([(1, -1)]))
    # rank additivity fails
    assert not rl.direct_sum_check(Z2, rl.hnf([(1, 0)]), rl.hnf([(2, 0)]))
    with pytest.raises(NotSublatticeError):
        rl.direct_sum_check(Z2, rl.hnf([(H, 0)]), rl.hnf([(0, 1)]))


def test_rref_and_nullspace():
    red, piv = rl.rref([(2, 4, 6), (1, 2, 4)])
    assert piv == (0, 2)
    assert red == ((1, 2, 0), (0, 0, 1))
    ns = rl.nullspace([(1, 1, 0)], 3)
    assert all(rl.dot(v, (1, 1, 0)) == 0 for v in ns) and len(ns) == 2


def test_inverse_and_solve():
    m = ((2, 1), (1, 1))
    inv = rl.inverse(m)
    assert rl.matmul(m, inv) == ((1, 0), (0, 1))
    assert rl.solve_left(((1, 0, 0), (0, 1, 0)), (3, 4, 0)) == (3, 4)
    assert rl.solve_left(((1, 0, 0),), (0, 1, 0)) is None
    with pytest.raises(ValueError):
        rl.inverse(((1, 2), (2, 4)))


small = st.fractions(min_value=-4, max_value=4, max_denominator=4)


def full_rank_rows(d):
    return st.lists(st.lists(small, min_size=d, max_size=d), min_size=d, max_size=d + 2).filter(
        lambda rows: rl.rank(rows) == d)


unimodular = st.lists(st.integers(-2, 2), min_size=4, max_size=4).filter(
    lambda a: a[0] * a[3] - a[1] * a[2] in (1, -1))


@given(full_rank_rows(2))
def test_hnf_idempotent(rows):
    L = rl.hnf(rows)
    assert rl.hnf(L.basis) == L


@given(full_rank_rows(2), unimodular)
def test_hnf_unimodular_invariance(rows, u):
    L = rl.hnf(rows)
    b0, b1 = L.basis
    moved = [rl.add(rl.scale(u[0], b0), rl.scale(u[1], b1)),
             rl.add(rl.scale(u[2], b0), rl.scale(u[3], b1))]
    assert rl.hnf(moved) == L


@given(full_rank_rows(2), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_membership_closure_and_oracle(rows, coeffs):
    L = rl.hnf(rows)
    v = rl.combine(coeffs[:2], L.basis)
    w = rl.add(v, rl.scale(coeffs[2], L.basis[0]))
    assert rl.member(L, v) and rl.member(L, w) and rl.member(L, rl.sub(v, w))
    # oracle: integer coordinates in the basis, by Cramer's rule
    half = rl.scale(H, L.basis[1])
    expected = all(c.denominator == 1 for c in solve_coords(L.basis, half))
    assert rl.member(L, half) == expected


@settings(max_examples=60)
@given(full_rank_rows(3))
def test_hnf_preserves_determinant(rows):
    L = rl.hnf(rows)
    # every generator is a member and |det| matches the Gram-determinant root
    assert all(rl.member(L, r) for r in rows)
    assert L.determinant() == abs(oracle_det(L.basis))
    if len(rows) == 3:
        assert L.determinant() == abs(oracle_det(rows))


@given(full_rank_rows(2))
def test_direct_sum_of_basis_split(rows):
    L = rl.hnf(rows)
    assert rl.direct_sum_check(L, rl.hnf([L.basis[0]]), rl.hnf([L.basis[1]]))
    assert not rl.direct_sum_check(L, rl.hnf([rl.scale(2, L.basis[0])]), rl.hnf([L.basis[1]]))
