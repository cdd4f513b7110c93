import itertools
from fractions import Fraction

import pytest

from parallelo import catalog
from parallelo import ratlin as rl
from parallelo.errors import NotParallelohedronError, SplitPreconditionError
from parallelo.factorize import (classify_product_belts, factor, product_graph_diff, split,
                                 sublattice_of_component, verify_product_graph)
from parallelo.paratile import check_parallelohedron, facet_vectors, tiling_lattice
from parallelo.polytope import canonical_form, direct_product, dual_description, volume
from parallelo.venkov import red_components, venkov_graph
import oracles

H = Fraction(1, 2)
SMALL = ["segment", "square", "hexagon", "cube", "hexagonal_prism"]


def intrinsic_key(Q):
    return canonical_form(Q.intrinsic()).vertices


def vertex_with_direction(P, direction):
    table = facet_vectors(P)
    return next(k for k, (a, _) in enumerate(table.pairs) if P.facets[a].direction == direction)


def test_sublattice_examples():
    cube = catalog.polytope("cube")
    t = facet_vectors(cube)
    x = vertex_with_direction(cube, (1, 0, 0))
    assert sublattice_of_component(t, [x]).basis == ((1, 0, 0),)
    prism = catalog.polytope("hexagonal_prism")
    tp = facet_vectors(prism)
    cap = vertex_with_direction(prism, (0, 0, 1))
    sides = [k for k in range(4) if k != cap]
    assert sublattice_of_component(tp, sides).basis == ((Fraction(3, 2), 1, 0), (0, 2, 0))
    sq = catalog.polytope("square")
    assert sublattice_of_component(facet_vectors(sq), [0, 1]).basis == ((1, 0), (0, 1))
    with pytest.raises(ValueError):
        sublattice_of_component(t, [])


def test_split_square():
    P1, P2 = split(catalog.polytope("square"), [0], [1])
    pts = sorted(P1.ambient_vertices()) + sorted(P2.ambient_vertices())
    assert sorted(pts) == sorted([(-H, 0), (H, 0), (0, -H), (0, H)])


def test_split_hexagonal_prism():
    P = catalog.polytope("hexagonal_prism")
    cap = vertex_with_direction(P, (0, 0, 1))
    sides = [k for k in range(4) if k != cap]
    hexagon, seg = split(P, sides, [cap])
    assert all(v[2] == 0 for v in hexagon.ambient_vertices())
    assert intrinsic_key(hexagon) == catalog.polytope("hexagon").vertices
    assert sorted(seg.ambient_vertices()) == [(0, 0, -H), (0, 0, H)]


def test_split_cube():
    P = catalog.polytope("cube")
    x = vertex_with_direction(P, (1, 0, 0))
    rest = [k for k in range(3) if k != x]
    seg, sq = split(P, [x], rest)
    assert sorted(seg.ambient_vertices()) == [(-H, 0, 0), (H, 0, 0)]
    assert sorted(sq.ambient_vertices()) == sorted((0, a, b) for a in (-H, H) for b in (-H, H))


def test_split_rejects_red_crossing():
    P = catalog.polytope("hexagon")
    with pytest.raises(SplitPreconditionError):
        split(P, [0], [1, 2])
    with pytest.raises(SplitPreconditionError):
        split(P, [0, 1, 2], [])
    with pytest.raises(SplitPreconditionError):
        split(catalog.polytope("cube"), [0, 1], [1, 2])


@pytest.mark.parametrize("name,count", [("square", 2), ("cube", 3), ("hexagonal_prism", 2),
                                        ("hexagon_x_hexagon", 2), ("square_x_hexagon", 3),
                                        ("segment_x_rhombic_dodecahedron", 2),
                                        ("rhombic_dodecahedron", 1), ("hexagon", 1),
                                        ("truncated_octahedron", 1), ("elongated_dodecahedron", 1),
                                        ("segment", 1)])
def test_factor_counts(name, count):
    P = catalog.polytope(name)
    dec = factor(P)
    assert len(dec.factors) == count == len(red_components(venkov_graph(P)))
    assert dec.reconstruction_ok and dec.reducible == (count > 1)
    assert sum(L.rank for L in dec.sublattices) == P.dim
    for Q in dec.factors:
        inner = Q.intrinsic()
        assert check_parallelohedron(inner).verdict
        assert len(red_components(venkov_graph(inner))) == 1


def test_factor_hexagon_x_hexagon():
    dec = factor(catalog.polytope("hexagon_x_hexagon"))
    hexagon = catalog.polytope("hexagon").vertices
    assert [intrinsic_key(Q) for Q in dec.factors] == [hexagon, hexagon]
    G = venkov_graph(catalog.polytope("hexagon_x_hexagon"))
    assert len(G.red_edges) == 6 and len(G.blue_edges) == 9


def test_factor_order_follows_smallest_facet():
    P = catalog.polytope("hexagonal_prism")
    dec = factor(P)
    firsts = [min(facet_vectors(P).pairs[v][0] for v in comp) for comp in dec.partition]
    assert firsts == sorted(firsts)
    assert dec.summary_lines()[0] == "components=2"


@pytest.mark.parametrize("a,b", list(itertools.product(SMALL, repeat=2)))
def test_round_trip(a, b):
    P1, P2 = catalog.polytope(a), catalog.polytope(b)
    dec = factor(direct_product(P1, P2))
    expected = sorted(intrinsic_key(Q) for Q in factor(P1).factors + factor(P2).factors)
    assert sorted(intrinsic_key(Q) for Q in dec.factors) == expected


@pytest.mark.parametrize("name", ["cube", "hexagonal_prism", "hexagon_x_hexagon",
                                  "square_x_hexagon", "segment_x_rhombic_dodecahedron"])
def test_volume_multiplicative_over_factors(name):
    P = catalog.polytope(name)
    dec = factor(P)
    stacked = [row for Q in dec.factors for row in Q.embedding]
    prod = abs(oracles.det(stacked))
    for Q in dec.factors:
        prod *= volume(Q.intrinsic())
    assert prod == volume(P)


@pytest.mark.parametrize("name", ["square", "cube", "hexagonal_prism", "hexagon_x_hexagon",
                                  "square_x_hexagon", "segment_x_rhombic_dodecahedron"])
def test_red_partition_direct_sum_and_perturbation(name):
    P = catalog.polytope(name)
    table = facet_vectors(P)
    G = venkov_graph(P, table)
    comps = red_components(G)
    A1, A2 = list(comps[0]), [v for c in comps[1:] for v in c]
    lam = tiling_lattice(P, table)
    assert rl.direct_sum_check(lam, sublattice_of_component(table, A1),
                               sublattice_of_component(table, A2))
    for u, w in sorted(G.red_edges):
        # move u to the block that does not hold it; the red edge now crosses
        B1 = [v for v in A1 if v != u] + ([u] if u in A2 else [])
        B2 = [v for v in A2 if v != u] + ([u] if u in A1 else [])
        with pytest.raises(SplitPreconditionError):
            split(P, B1, B2)


@pytest.mark.parametrize("a,b", list(itertools.product(SMALL, repeat=2)))
def test_product_graph(a, b):
    P1, P2 = catalog.polytope(a), catalog.polytope(b)
    diff = product_graph_diff(P1, P2)
    assert diff.ok and not diff.missing and not diff.extra
    G = venkov_graph(direct_product(P1, P2))
    n1, n2 = len(P1.facets) // 2, len(P2.facets) // 2
    cross = [e for e in G.blue_edges if (e[0] < n1) != (e[1] < n1)]
    assert G.order == n1 + n2 and len(cross) == n1 * n2


@pytest.mark.parametrize("a,b", list(itertools.product(SMALL, repeat=2)))
def test_product_belt_cases(a, b):
    cases = classify_product_belts(catalog.polytope(a), catalog.polytope(b))
    assert cases and all(c in (1, 2, 3) for c in cases)


def test_product_graph_rejects_non_parallelohedron():
    tri = dual_description([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(NotParallelohedronError):
        verify_product_graph(tri, catalog.polytope("segment"))
