"""Belts, the Minkowski-Venkov conditions, facet vectors and tiling patches."""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import ratlin as rl
from .errors import InternalConsistencyError, NotParallelohedronError
from .polytope import Polytope, center_of_symmetry, memo, ridges, volume
from .ratlin import Lattice, QMat, QVec


@dataclass(frozen=True)
class Belt:
    facet_ids: tuple[int, ...]
    direction_space: QMat

    @property
    def length(self) -> int:
        return len(self.facet_ids)


@dataclass(frozen=True)
class MVReport:
    """Outcome of the three Minkowski-Venkov conditions.

    Belts are computed even when some facet is asymmetric so that all
    failures show up in one report; their lengths are then reported but not
    interpreted.
    """

    centrally_symmetric: bool
    facet_symmetry_failures: tuple[int, ...]
    belt_length_violations: tuple[tuple[Belt, int], ...]
    belts: tuple[Belt, ...] = ()

    @property
    def verdict(self) -> bool:
        return (self.centrally_symmetric and not self.facet_symmetry_failures
                and not self.belt_length_violations)

    def __bool__(self) -> bool:
        return self.verdict

    def lines(self) -> list[str]:
        out = [
            f"center of symmetry: {'yes' if self.centrally_symmetric else 'no'}",
            "facet centers: " + ("ok" if not self.facet_symmetry_failures else
                                 "missing for facets " + _ids(self.facet_symmetry_failures)),
            "belt lengths: " + ("ok" if not self.belt_length_violations else
                                "bad lengths " + _ids(sorted({n for _, n in self.belt_length_violations}))),
        ]
        for k, b in enumerate(self.belts):
            out.append(f"belt {k}: facets {_ids(b.facet_ids)} length {b.length}")
        out.append("verdict: " + ("parallelohedron" if self.verdict else "not a parallelohedron"))
        return out


def _ids(ids) -> str:
    return "[" + ", ".join(str(i) for i in ids) + "]"


@dataclass(frozen=True)
class FacetVectorTable:
    """Facet vectors ``t(F)`` plus the antipodal pairing.

    ``pairs`` lists antipodal facet pairs ``(F, F')`` with ``F < F'``, ordered
    by ``F``; index k in this list is Venkov vertex k.
    """

    vectors: dict
    antipode: dict
    pairs: tuple[tuple[int, int], ...]

    def vertex_of(self, facet_id: int) -> int:
        return self._vertex[facet_id]

    @functools.cached_property
    def _vertex(self) -> dict:
        return {f: k for k, pair in enumerate(self.pairs) for f in pair}

    def facet_for(self, t: QVec) -> int | None:
        return self._by_vector.get(tuple(t))

    @functools.cached_property
    def _by_vector(self) -> dict:
        return {v: f for f, v in self.vectors.items()}


def belts(P: Polytope) -> list[Belt]:
    """Group ridges by direction space; a belt is every facet whose normal is
    orthogonal to that space.  In the plane every vertex has the zero direction
    space, so the single belt is the full edge set."""
    return list(memo(P, "belts", lambda: _belts(P)))


def _belts(P: Polytope) -> tuple[Belt, ...]:
    if P.dim < 2:
        return ()
    seen = {}
    for r in ridges(P):
        key = r.direction_space
        if key in seen:
            continue
        members = tuple(f.id for f in P.facets
                        if all(rl.dot(f.direction, u) == 0 for u in key))
        seen[key] = members
    out = {}
    for space, members in seen.items():
        out.setdefault(members, Belt(members, space))
    return tuple(sorted(out.values(), key=lambda b: b.facet_ids))


def check_parallelohedron(P: Polytope) -> MVReport:
    return memo(P, "mv", lambda: _check(P))


def _check(P: Polytope) -> MVReport:
    sym = center_of_symmetry(P.vertices) is not None
    failures = tuple(f.id for f in P.facets if f.center is None)
    bs = tuple(belts(P))
    bad = tuple((b, b.length) for b in bs if b.length not in (4, 6))
    return MVReport(sym, failures, bad, bs)


def require_parallelohedron(P: Polytope) -> MVReport:
    report = check_parallelohedron(P)
    if not report.verdict:
        raise NotParallelohedronError(report)
    return report


def facet_vectors(P: Polytope) -> FacetVectorTable:
    """``t(F) = 2 (center(F) - center(P))``, each verified to satisfy
    ``P & (P + t(F)) == F`` before it is returned."""
    return memo(P, "facet_vectors", lambda: _facet_vectors(P))


def _facet_vectors(P: Polytope) -> FacetVectorTable:
    require_parallelohedron(P)
    c = center_of_symmetry(P.vertices)
    vectors = {}
    for f in P.facets:
        t = rl.scale(2, rl.sub(f.center, c))
        _verify_neighbor(P, f, t)
        vectors[f.id] = t
    by_normal = {f.normal: f.id for f in P.facets}
    antipode = {}
    for f in P.facets:
        g = by_normal.get(rl.neg(f.normal))
        if g is None or vectors[g] != rl.neg(vectors[f.id]):
            raise InternalConsistencyError(f"facet {f.id} has no antipodal facet")
        antipode[f.id] = g
    pairs = tuple(sorted((min(a, b), max(a, b)) for a, b in antipode.items() if a < b))
    return FacetVectorTable(vectors, antipode, pairs)


def _verify_neighbor(P: Polytope, f, t: QVec) -> None:
    # P + t lies in the closed halfspace beyond F's hyperplane
    n, b = f.normal, f.offset
    if any(rl.dot(n, rl.add(v, t)) < b for v in P.vertices):
        raise InternalConsistencyError(f"translate across facet {f.id} overlaps P")
    # and contains F; together these give P & (P + t) == F
    shifted = [rl.sub(v, t) for v in P.facet_vertices(f)]
    if not all(P.contains(x) for x in shifted):
        raise InternalConsistencyError(f"translate across facet {f.id} does not contain the facet")


def tiling_lattice(P: Polytope, table: FacetVectorTable | None = None) -> Lattice:
    """Lattice generated by the facet vectors; checked to be full rank with
    covolume equal to the volume of P."""
    table = table or facet_vectors(P)
    lat = rl.hnf([table.vectors[k] for k in sorted(table.vectors)], P.dim)
    if not lat.is_full_rank:
        raise InternalConsistencyError(f"facet vectors span rank {lat.rank} < {P.dim}")
    if lat.determinant() != volume(P):
        raise InternalConsistencyError(
            f"lattice determinant {lat.determinant()} differs from volume {volume(P)}")
    return lat


@dataclass(frozen=True)
class Patch:
    """Finite piece of the face-to-face tiling ``P + lattice``.

    Cells are named by their lattice vectors.  ``shared_facets`` holds each
    adjacency once as ``(a, b, facet id)`` with ``a < b``; the facet id is the
    facet of cell ``a`` crossed on the way to ``b``.  ``ridge_cycles`` lists,
    for every (d-2)-face whose surrounding cells all lie in the patch, those
    cells in rotational order starting from the smallest.
    """

    generator: Polytope
    lattice: Lattice
    table: FacetVectorTable
    cells: tuple[QVec, ...]
    shared_facets: tuple[tuple[QVec, QVec, int], ...]
    ridge_cycles: tuple[tuple[QVec, ...], ...]

    def facet_between(self, a: QVec, b: QVec) -> int | None:
        """Facet of cell ``a`` shared with cell ``b``, or None if not adjacent."""
        if a not in self._cellset or b not in self._cellset:
            return None
        return self.table.facet_for(rl.sub(b, a))

    @functools.cached_property
    def _cellset(self) -> frozenset:
        return frozenset(self.cells)

    def neighbors(self, a: QVec) -> list[QVec]:
        out = []
        for f in sorted(self.table.vectors):
            b = rl.add(a, self.table.vectors[f])
            if b in self._cellset:
                out.append(b)
        return out


class _Scaled:
    """Integer copies of a polytope's data at one common scale.

    Ridge-cycle construction compares many translated faces; doing it on
    integers avoids most rational arithmetic.
    """

    def __init__(self, P: Polytope, extra: Sequence[QVec]):
        den, _, ifacets = P.integer_data()
        self.scale = math.lcm(den, *(x.denominator for v in extra for x in v))
        k = self.scale // den
        self.facets = [(n, off * k) for n, off in ifacets]

    def __call__(self, v: QVec) -> tuple[int, ...]:
        return tuple(int(x * self.scale) for x in v)

    def contains(self, y: Sequence[int]) -> bool:
        return all(sum(a * b for a, b in zip(n, y)) <= off for n, off in self.facets)


def _cell_star(ipts: Sequence[tuple], table_ints: Sequence[tuple], sc: _Scaled) -> list[tuple]:
    """Scaled lattice vectors m with the ridge contained in P + m.

    Only 0, facet vectors and sums of two facet vectors are candidates; every
    cell around a ridge of a parallelohedron is of that form.
    """
    cands = {tuple(0 for _ in ipts[0])}
    cands.update(table_ints)
    cands.update(tuple(x + y for x, y in zip(a, b)) for a in table_ints for b in table_ints)
    return sorted(m for m in cands
                  if all(sc.contains([x - y for x, y in zip(p, m)]) for p in ipts))


def _angle_key(u: Sequence[int], w: Sequence[int]):
    """Sort key for vectors by angle in the plane spanned by u and w (exact)."""
    def coords(y):
        return sum(a * b for a, b in zip(u, y)), sum(a * b for a, b in zip(w, y))

    def cmp(a, b):
        (ax, ay), (bx, by) = coords(a), coords(b)
        ha = 0 if (ay > 0 or (ay == 0 and ax > 0)) else 1
        hb = 0 if (by > 0 or (by == 0 and bx > 0)) else 1
        if ha != hb:
            return ha - hb
        cross = ax * by - ay * bx
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return functools.cmp_to_key(cmp)


def build_patch(P: Polytope, radius: int) -> Patch:
    """Cells ``P + sum c_i b_i`` with ``|c_i| <= radius`` over the HNF basis ``b``."""
    if radius < 1:
        raise ValueError("patch radius must be at least 1")
    table = facet_vectors(P)
    lat = tiling_lattice(P, table)
    d = P.dim
    rng = range(-radius, radius + 1)
    cells = sorted({rl.combine(c, lat.basis) for c in itertools.product(rng, repeat=d)})
    cellset = set(cells)

    shared = []
    for a in cells:
        for fid in sorted(table.vectors):
            b = rl.add(a, table.vectors[fid])
            if b in cellset and a < b:
                shared.append((a, b, fid))
    shared.sort()

    sc = _Scaled(P, list(table.vectors.values()) + cells)
    icells = {c: sc(c) for c in cells}
    by_int = {v: c for c, v in icells.items()}
    t_ints = [sc(table.vectors[k]) for k in sorted(table.vectors)]
    icenter = sc(center_of_symmetry(P.vertices))
    cycles = {}
    for r in ridges(P):
        ipts = [sc(P.vertices[i]) for i in sorted(r.vertex_ids)]
        star = _cell_star(ipts, t_ints, sc)
        belt_length = sum(1 for f in P.facets
                          if all(rl.dot(f.direction, x) == 0 for x in r.direction_space))
        if len(star) != {6: 3, 4: 4}[belt_length]:
            raise InternalConsistencyError(
                f"ridge {r.id} is surrounded by {len(star)} cells")
        plane = rl.nullspace(r.direction_space, d) if r.direction_space else \
            tuple(rl.vec(int(i == j) for j in range(d)) for i in range(d))
        key_fn = _angle_key(*(rl.primitive(v) for v in plane))
        n = len(ipts)
        anchor = [sum(col) for col in zip(*ipts)]  # n times the ridge centroid
        for lam in cells:
            il = icells[lam]
            key = tuple(sorted(tuple(a + b for a, b in zip(p, il)) for p in ipts))
            if key in cycles:
                continue
            around = [tuple(a + b for a, b in zip(il, m)) for m in star]
            if not all(x in by_int for x in around):
                cycles[key] = None
                continue
            # cell centers, not lattice names, rotate around the face
            order = sorted(around, key=lambda x: key_fn(
                [n * (c + y - z) - a for c, y, z, a in zip(icenter, x, il, anchor)]))
            order = [by_int[x] for x in order]
            start = order.index(min(order))
            order = order[start:] + order[:start]
            for a, b in zip(order, order[1:] + order[:1]):
                if table.facet_for(rl.sub(b, a)) is None:
                    raise InternalConsistencyError("consecutive cells around a ridge are not adjacent")
            cycles[key] = tuple(order)
    ridge_cycles = tuple(sorted(c for c in cycles.values() if c is not None))
    return Patch(P, lat, table, tuple(cells), tuple(shared), ridge_cycles)
