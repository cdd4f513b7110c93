"""Venkov graph of a parallelohedron and the red-connectivity reducibility test."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .paratile import FacetVectorTable, belts, facet_vectors, require_parallelohedron
from .polytope import Polytope


class UnionFind:
    """Disjoint sets over ``range(n)``; roots are always the smallest member,
    so component labels do not depend on union order."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            lo, hi = min(ra, rb), max(ra, rb)
            self.parent[hi] = lo

    def groups(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return [tuple(out[k]) for k in sorted(out)]


@dataclass(frozen=True)
class VenkovGraph:
    """Vertices are antipodal facet pairs; edge sets hold sorted vertex pairs.

    ``provenance`` maps ``(color, edge)`` to the indices of the belts (in
    :func:`paratile.belts` order) that produced the edge.
    """

    vertices: tuple[tuple[int, int], ...]
    red_edges: frozenset
    blue_edges: frozenset
    provenance: dict
    labels: tuple[str, ...] = ()

    @property
    def order(self) -> int:
        return len(self.vertices)

    def summary(self) -> str:
        k = len(red_components(self))
        return f"vertices={self.order} red={len(self.red_edges)} blue={len(self.blue_edges)} red_components={k}"

    def to_dot(self) -> str:
        lines = ["graph venkov {"]
        for v in range(self.order):
            label = self.labels[v] if self.labels else str(self.vertices[v])
            lines.append(f'  v{v} [label="{label}"];')
        for color, edges in (("red", self.red_edges), ("blue", self.blue_edges)):
            for a, b in sorted(edges):
                lines.append(f"  v{a} -- v{b} [color={color}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def venkov_graph(P: Polytope, table: FacetVectorTable | None = None) -> VenkovGraph:
    """Red edges join pairs lying in a common 6-belt; a blue edge joins the two
    pairs that make up a 4-belt.  Raises NotParallelohedronError otherwise."""
    require_parallelohedron(P)
    table = table or facet_vectors(P)
    red, blue, prov = set(), set(), {}
    for k, belt in enumerate(belts(P)):
        members = sorted({table.vertex_of(f) for f in belt.facet_ids})
        color, target = ("red", red) if belt.length == 6 else ("blue", blue)
        for e in itertools.combinations(members, 2):
            target.add(e)
            prov.setdefault((color, e), []).append(k)
    prov = {key: tuple(v) for key, v in sorted(prov.items())}
    labels = tuple(
        "+-(" + ",".join(str(x) for x in P.facets[a].direction) + ")" for a, _ in table.pairs
    )
    return VenkovGraph(table.pairs, frozenset(red), frozenset(blue), prov, labels)


def red_components(G: VenkovGraph) -> list[tuple[int, ...]]:
    """Connected components of the red subgraph, ordered by smallest vertex."""
    uf = UnionFind(G.order)
    for a, b in sorted(G.red_edges):
        uf.union(a, b)
    return uf.groups()


def is_reducible(P: Polytope) -> bool:
    return len(red_components(venkov_graph(P))) >= 2
