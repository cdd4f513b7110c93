from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parallelo import catalog
from parallelo import ratlin as rl
from parallelo.errors import FormatError
from parallelo.factorize import factor
from parallelo.formats import (read_gain, read_lattice, read_polytope, write_gain, write_lattice,
                               write_polytope)
from parallelo.polytope import canonical_form, dual_description


@pytest.mark.parametrize("name", list(catalog.POLYTOPES))
def test_polytope_round_trip(name):
    P = catalog.build(name)
    text = write_polytope(P, name=name)
    assert read_polytope(text) == P
    assert write_polytope(read_polytope(text)) == text


@pytest.mark.parametrize("name", list(catalog.LATTICES))
def test_lattice_round_trip(name):
    L = catalog.LATTICES[name]()
    assert read_lattice(write_lattice(L)) == L


def test_fixtures_match_builders():
    for name in catalog.POLYTOPES:
        assert catalog.polytope(name) == catalog.build(name)
    for name, fn in catalog.LATTICES.items():
        assert catalog.lattice(name) == fn()


def test_comments_and_name():
    text = "# header comment\npolytope d=2   # trailing\nname=sq\n1/2 1/2\n-1/2 1/2 # c\n\n1/2 -1/2\n-1/2 -1/2\n"
    P = read_polytope(text)
    assert P.name == "sq" and len(P.vertices) == 4


def test_embedded_factor_basis_comments():
    dec = factor(catalog.polytope("hexagonal_prism"))
    text = write_polytope(dec.factors[1])
    assert "# basis 0 0 1" in text
    assert read_polytope(text) == canonical_form(dec.factors[1].intrinsic())


@pytest.mark.parametrize("text,line,col", [
    ("", 1, 1),
    ("polytope d=x\n", 1, 1),
    ("lattice d=2\n1 0\n0 1\n", 1, 1),
    ("polytope d=2\n1 0\n0 1 2\n", 3, 1),
    ("polytope d=2\n1 0\n0  1/0\n", 3, 4),
    ("polytope d=2\n1 0\n0 1\n  1 x\n", 4, 5),
    ("polytope d=2\n0 0\n1 1\n2 2\n", 2, 1),
])
def test_polytope_errors(text, line, col):
    with pytest.raises(FormatError) as e:
        read_polytope(text, source="in.poly")
    assert (e.value.line, e.value.column) == (line, col)
    assert str(e.value).startswith(f"in.poly:{line}:{col}:")


@pytest.mark.parametrize("text,line", [
    ("lattice d=2\n1 0\n", 3), ("lattice d=2\n1 0\n2 0\n", 2), ("lattice d=2\n1 0\n0 1\n1 1\n", 4),
])
def test_lattice_errors(text, line):
    with pytest.raises(FormatError) as e:
        read_lattice(text)
    assert e.value.line == line


def test_gain_formats():
    g = read_gain("(0,0) ; (1,0) ; 1\n1 0 ; 0 0 ; -1   # space separated\n( 0 , 1 );(0,0);3/2\n")
    assert g == {((0, 0), (1, 0)): 1, ((1, 0), (0, 0)): -1, ((0, 1), (0, 0)): Fraction(3, 2)}
    assert read_gain(write_gain(g)) == g


@pytest.mark.parametrize("text,line,col", [
    ("(0,0) ; (1,0)\n", 1, 1),
    ("(0,0) ; (1,0) ; 1\n(0,0) ; (1,0) ; 2\n", 2, 1),
    ("(0,0) ; (1,x) ; 1\n", 1, 12),
    ("(0,0) ; (1,0) ; 1/0\n", 1, 17),
    ("(0,0) ; (1,0,0) ; 1\n", 1, 8),
])
def test_gain_errors(text, line, col):
    with pytest.raises(FormatError) as e:
        read_gain(text, dim=2)
    assert (e.value.line, e.value.column) == (line, col)


coords = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=3, max_size=10, unique=True))
def test_write_read_reproduces_canonical_form(points):
    if rl.affine_rank(rl.mat(points)) < 2:
        return
    P = dual_description(points)
    assert read_polytope(write_polytope(P)) == canonical_form(P)
