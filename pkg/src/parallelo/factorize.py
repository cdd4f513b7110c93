"""Splitting a reducible parallelohedron into a direct product of factors."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import ratlin as rl
from .errors import InternalConsistencyError, SplitPreconditionError
from .paratile import FacetVectorTable, belts, check_parallelohedron, facet_vectors, tiling_lattice
from .polytope import Polytope, canonical_form, direct_product, embedded_hull, minkowski_sum
from .ratlin import Lattice
from .venkov import VenkovGraph, red_components, venkov_graph


@dataclass(frozen=True)
class Decomposition:
    """Red-component partition with its sublattices and embedded factors.

    ``factors[i]`` lives in the linear hull of ``sublattices[i]`` (see
    :class:`Polytope` for how embeddings work).
    """

    partition: tuple[tuple[int, ...], ...]
    sublattices: tuple[Lattice, ...]
    factors: tuple[Polytope, ...]
    reconstruction_ok: bool

    @property
    def reducible(self) -> bool:
        return len(self.factors) > 1

    def summary_lines(self) -> list[str]:
        out = [f"components={len(self.partition)}",
               "partition=" + "|".join(",".join(map(str, a)) for a in self.partition)]
        for i, lat in enumerate(self.sublattices):
            out.append(f"sublattice_{i}={lat}")
        out.append("reconstruction=" + ("ok" if self.reconstruction_ok else "failed"))
        return out


def sublattice_of_component(table: FacetVectorTable, component: Iterable[int]) -> Lattice:
    """HNF of the facet vectors belonging to the given Venkov vertices."""
    comp = sorted(set(component))
    if not comp:
        raise ValueError("component must be nonempty")
    gens = [table.vectors[table.pairs[v][0]] for v in comp]
    return rl.hnf(gens)


def check_partition(G: VenkovGraph, A1: Iterable[int], A2: Iterable[int]) -> None:
    """Raise SplitPreconditionError unless {A1, A2} partitions the vertices with
    no red edge between the blocks."""
    a1, a2 = set(A1), set(A2)
    if not a1 or not a2:
        raise SplitPreconditionError("both blocks of the partition must be nonempty")
    if a1 & a2 or a1 | a2 != set(range(G.order)):
        raise SplitPreconditionError("blocks do not partition the Venkov vertices")
    crossing = sorted(e for e in G.red_edges if (e[0] in a1) != (e[1] in a1))
    if crossing:
        raise SplitPreconditionError(f"red edges cross the partition: {crossing}")


def split(P: Polytope, A1: Iterable[int], A2: Iterable[int]) -> tuple[Polytope, Polytope]:
    """Project P onto lin L(A2) along lin L(A1) and vice versa.

    Both factors come back embedded in P's coordinates (P is first moved to
    its canonical, origin-centered position).  Their Minkowski sum is checked
    to reproduce P exactly and each factor is checked to be a parallelohedron.
    """
    P = canonical_form(P)
    A1, A2 = sorted(set(A1)), sorted(set(A2))
    table = facet_vectors(P)
    G = venkov_graph(P, table)
    check_partition(G, A1, A2)
    lam = tiling_lattice(P, table)
    L1 = sublattice_of_component(table, A1)
    L2 = sublattice_of_component(table, A2)
    if not rl.direct_sum_check(lam, L1, L2):
        raise SplitPreconditionError("tiling lattice is not the direct sum of the block sublattices")

    k1 = L1.rank
    inv = rl.inverse(L1.basis + L2.basis)
    first, second = [], []
    for v in P.vertices:
        c = rl.combine(v, inv)
        first.append(rl.combine(c[:k1], L1.basis))
        second.append(rl.combine(c[k1:], L2.basis))
    P1 = embedded_hull(first)
    P2 = embedded_hull(second)

    for Q, L in ((P1, L1), (P2, L2)):
        if Q.embedding != rl.rref(L.basis)[0]:
            raise InternalConsistencyError("factor hull differs from its sublattice span")
        if not check_parallelohedron(Q).verdict:
            raise InternalConsistencyError("projected factor is not a parallelohedron")
    if canonical_form(minkowski_sum([P1, P2])) != canonical_form(P.intrinsic()):
        raise InternalConsistencyError("factors do not reconstruct the polytope")
    return P1, P2


def _compose(Q: Polytope, outer: Sequence | None) -> list:
    """Ambient vertices of Q after applying its own embedding and ``outer``."""
    pts = Q.ambient_vertices()
    if outer is None:
        return list(pts)
    return [rl.combine(p, outer) for p in pts]


def _factor_points(P: Polytope, outer=None) -> list[list]:
    comps = red_components(venkov_graph(P))
    if len(comps) == 1:
        return [_compose(P, outer)]
    A1 = comps[0]
    A2 = [v for c in comps[1:] for v in c]
    P1, P2 = split(P, A1, A2)
    out = []
    for Q in (P1, P2):
        basis = Q.embedding if outer is None else rl.matmul(Q.embedding, outer)
        out.extend(_factor_points(Q.intrinsic(), basis))
    return out


def factor(P: Polytope) -> Decomposition:
    """Split off red components one at a time until every factor's red graph
    is connected, then verify the whole decomposition."""
    P = canonical_form(P)
    table = facet_vectors(P)
    G = venkov_graph(P, table)
    comps = red_components(G)
    lam = tiling_lattice(P, table)
    lattices = [sublattice_of_component(table, c) for c in comps]

    pieces = [embedded_hull(pts) for pts in _factor_points(P)]
    spans = {rl.rref(L.basis)[0]: i for i, L in enumerate(lattices)}
    if len(pieces) != len(comps) or {Q.embedding for Q in pieces} != set(spans):
        raise InternalConsistencyError("factors do not match the red components")
    factors = sorted(pieces, key=lambda Q: spans[Q.embedding])
    if len(factors) == 1:
        factors = [P]

    if sum(L.rank for L in lattices) != P.dim or not _chain_direct_sum(lam, lattices):
        raise InternalConsistencyError("tiling lattice is not the direct sum of component sublattices")
    for Q in factors:
        inner = Q.intrinsic()
        if not check_parallelohedron(inner).verdict:
            raise InternalConsistencyError("factor is not a parallelohedron")
        if len(red_components(venkov_graph(inner))) != 1:
            raise InternalConsistencyError("factor is still reducible")
    if len(factors) > 1 and canonical_form(minkowski_sum(factors)) != canonical_form(P):
        raise InternalConsistencyError("factors do not reconstruct the polytope")
    return Decomposition(tuple(comps), tuple(lattices), tuple(factors), True)


def _chain_direct_sum(lam: Lattice, parts: Sequence[Lattice]) -> bool:
    whole = lam
    for i, L in enumerate(parts[:-1]):
        rest = rl.hnf([b for M in parts[i + 1:] for b in M.basis], lam.ambient_dim)
        if not rl.direct_sum_check(whole, L, rest):
            return False
        whole = rest
    return True


@dataclass
class GraphDiff:
    """Difference between a product's Venkov graph and the predicted one."""

    missing: list = field(default_factory=list)
    extra: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra

    def __bool__(self) -> bool:
        return self.ok


def product_graph_diff(P1: Polytope, P2: Polytope) -> GraphDiff:
    """Compare G(P1 x P2) with G(P1) + G(P2) plus every blue cross edge.

    Product facet ``i`` is ``F_i x P2`` for ``i < m1`` and ``P1 x F_{i-m1}``
    otherwise, which fixes the vertex correspondence.
    """
    P = direct_product(P1, P2)
    t, t1, t2 = facet_vectors(P), facet_vectors(P1), facet_vectors(P2)
    G, G1, G2 = venkov_graph(P, t), venkov_graph(P1, t1), venkov_graph(P2, t2)
    m1 = len(P1.facets)
    from1 = [t.vertex_of(a) for a, _ in t1.pairs]
    from2 = [t.vertex_of(a + m1) for a, _ in t2.pairs]

    def edge(a, b):
        return (min(a, b), max(a, b))

    red = {edge(from1[a], from1[b]) for a, b in G1.red_edges}
    red |= {edge(from2[a], from2[b]) for a, b in G2.red_edges}
    blue = {edge(from1[a], from1[b]) for a, b in G1.blue_edges}
    blue |= {edge(from2[a], from2[b]) for a, b in G2.blue_edges}
    blue |= {edge(a, b) for a in from1 for b in from2}

    diff = GraphDiff()
    for color, want, got in (("red", red, G.red_edges), ("blue", blue, G.blue_edges)):
        diff.missing += [(color, e) for e in sorted(want - got)]
        diff.extra += [(color, e) for e in sorted(got - want)]
    if sorted(from1 + from2) != list(range(G.order)):
        diff.missing.append(("vertex", tuple(sorted(set(range(G.order)) - set(from1 + from2)))))
    return diff


def verify_product_graph(P1: Polytope, P2: Polytope) -> bool:
    return product_graph_diff(P1, P2).ok


def classify_product_belts(P1: Polytope, P2: Polytope) -> list[int]:
    """Case number (1 mixed, 2 from P1, 3 from P2) for each belt of P1 x P2;
    0 marks a belt that fits none of the cases."""
    P = direct_product(P1, P2)
    m1 = len(P1.facets)
    b1 = {b.facet_ids for b in belts(P1)}
    b2 = {tuple(f + m1 for f in b.facet_ids) for b in belts(P2)}
    out = []
    for b in belts(P):
        left = [f for f in b.facet_ids if f < m1]
        right = [f for f in b.facet_ids if f >= m1]
        if len(left) == 2 and len(right) == 2:
            out.append(1)
        elif not right and b.facet_ids in b1:
            out.append(2)
        elif not left and b.facet_ids in b2:
            out.append(3)
        else:
            out.append(0)
    return out
