"""Exact convex polytopes: hull construction, ridges, volume, products.

Coordinates are rational.  Internally every computation that scans many
points (hull updates, ranks, containment) runs on integer copies scaled by
the common denominator, through :mod:`parallelo._kernels`.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import ratlin as rl
from ._kernels import int_det, int_dots, int_normal, int_rank
from .errors import DimensionMismatchError, InternalConsistencyError, NotFullDimensionalError
from .ratlin import QMat, QVec


def memo(obj, key: str, fn: Callable):
    """Cache a derived value on an immutable object."""
    cache = obj.__dict__.setdefault("_memo", {})
    if key not in cache:
        cache[key] = fn()
    return cache[key]


def to_ints(points: Sequence[Sequence[Fraction]]) -> tuple[int, list[tuple[int, ...]]]:
    """Common denominator D and the points scaled by D."""
    den = math.lcm(1, *(x.denominator for p in points for x in p))
    return den, [tuple(int(x * den) for x in p) for p in points]


def _idot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _iprimitive(v):
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


@dataclass(frozen=True)
class Facet:
    """A facet ``normal . x <= offset`` held with equality on ``vertex_ids``.

    ``direction`` is the primitive integer normal with first nonzero entry
    positive; ``sign`` (+1 or -1) turns it into the outward normal.
    """

    id: int
    direction: QVec
    sign: int
    offset: Fraction
    vertex_ids: frozenset
    center: QVec | None = None

    @property
    def normal(self) -> QVec:
        return self.direction if self.sign > 0 else rl.neg(self.direction)

    def value(self, x: QVec) -> Fraction:
        """Signed slack ``normal . x - offset`` (zero on the facet, negative inside)."""
        return rl.dot(self.normal, x) - self.offset


@dataclass(frozen=True)
class Ridge:
    id: int
    facet_pair: tuple[int, int]
    vertex_ids: frozenset
    direction_space: QMat


@dataclass(frozen=True)
class Polytope:
    """Full-dimensional polytope in its own coordinates.

    ``embedding`` (rows spanning a linear subspace, in reduced row echelon
    form) places the polytope inside a larger ambient space: an intrinsic
    point ``x`` sits at ``sum(x[i] * embedding[i])``.  Because the rows are in
    RREF, intrinsic coordinates are the ambient coordinates at the pivot
    columns.
    """

    vertices: tuple[QVec, ...]
    facets: tuple[Facet, ...]
    embedding: QMat | None = None
    name: str | None = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def ambient_dim(self) -> int:
        return len(self.embedding[0]) if self.embedding is not None else self.dim

    @property
    def incidence(self) -> tuple[tuple[bool, ...], ...]:
        """Facet-by-vertex incidence table."""
        n = len(self.vertices)
        return tuple(tuple(i in f.vertex_ids for i in range(n)) for f in self.facets)

    def integer_data(self):
        """``(D, D * vertices, [(normal, D * offset)])`` all as Python ints."""
        def build():
            den, iv = to_ints(self.vertices)
            ifacets = []
            for f in self.facets:
                n = tuple(int(x) for x in f.normal)
                ifacets.append((n, int(f.offset * den)))
            return den, iv, ifacets
        return memo(self, "ints", build)

    def to_ambient(self, x: QVec) -> QVec:
        if self.embedding is None:
            return x
        return rl.combine(x, self.embedding)

    def ambient_vertices(self) -> tuple[QVec, ...]:
        return tuple(self.to_ambient(v) for v in self.vertices)

    def intrinsic(self) -> "Polytope":
        """The same polytope with the embedding dropped."""
        return replace(self, embedding=None)

    def facet_vertices(self, facet: Facet | int) -> list[QVec]:
        if isinstance(facet, int):
            facet = self.facets[facet]
        return [self.vertices[i] for i in sorted(facet.vertex_ids)]

    def contains(self, x: Sequence) -> bool:
        den, _, ifacets = self.integer_data()
        q = math.lcm(1, *(Fraction(a).denominator for a in x))
        xi = [int(Fraction(a) * q) for a in x]
        return all(_idot(n, xi) * den <= off * q for n, off in ifacets)

    def in_lattice_basis(self, basis: Sequence[QVec]) -> "Polytope":
        """Re-express an embedded polytope in coordinates relative to ``basis``.

        ``basis`` must span the same subspace as the embedding (for a factor,
        the HNF basis of its sublattice).
        """
        pts = []
        for v in self.ambient_vertices():
            c = rl.solve_left(basis, v)
            if c is None:
                raise DimensionMismatchError("basis does not span the polytope's hull")
            pts.append(c)
        return dual_description(pts, name=self.name)


def _affine_basis(points: Sequence[tuple[int, ...]], limit: int | None = None) -> list[int]:
    """Indices of a maximal affinely independent subset, chosen greedily in order."""
    if limit is None:
        limit = len(points[0]) + 1
    chosen = [0]
    diffs: list = []
    p0 = points[0]
    for i in range(1, len(points)):
        if len(chosen) == limit:
            break
        cand = diffs + [tuple(a - b for a, b in zip(points[i], p0))]
        if int_rank(cand) == len(cand):
            diffs = cand
            chosen.append(i)
    return chosen


def _affine_rank(points: Sequence[tuple[int, ...]]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return int_rank([tuple(a - b for a, b in zip(p, p0)) for p in points[1:]])


def _ihyperplane(points, inside_sum, weight):
    """Integer outward hyperplane through ``points`` (an affine basis of it).

    The interior reference point is ``inside_sum / weight``.
    """
    p0 = points[0]
    rows = [tuple(a - b for a, b in zip(p, p0)) for p in points[1:]]
    n = int_normal(rows)
    if not any(n):
        raise InternalConsistencyError("hyperplane points are not in general position")
    n = _iprimitive(n)
    off = _idot(n, p0)
    if _idot(n, inside_sum) > off * weight:
        n, off = tuple(-x for x in n), -off
    return n, off


def _center_int(ipoints: Sequence[tuple[int, ...]]):
    """Center of symmetry of integer points as (sum, count), or None."""
    k = len(ipoints)
    s = tuple(map(sum, zip(*ipoints)))
    scaled = {tuple(k * x for x in p) for p in ipoints}
    for p in scaled:
        if tuple(2 * a - b for a, b in zip(s, p)) not in scaled:
            return None
    return s, k


def center_of_symmetry(points: Sequence[QVec]) -> QVec | None:
    """Center ``c`` with ``{2c - p} == {p}``, or None when the set is asymmetric."""
    if not points:
        return None
    den, ip = to_ints(points)
    found = _center_int(ip)
    if found is None:
        return None
    s, k = found
    return tuple(Fraction(x, k * den) for x in s)


def _make_facet(fid, normal, offset, ids, verts, iverts) -> Facet:
    n = _iprimitive(normal)
    sign = 1 if next(x for x in n if x) > 0 else -1
    direction = tuple(Fraction(x * sign) for x in n)
    found = _center_int([iverts[i] for i in sorted(ids)]) if ids else None
    center = None
    if found is not None:
        den = _common_den(verts)
        s, k = found
        center = tuple(Fraction(x, k * den) for x in s)
    return Facet(fid, direction, sign, Fraction(offset), frozenset(ids), center)


def _common_den(points) -> int:
    return math.lcm(1, *(x.denominator for p in points for x in p))


def _assemble(vertices: Sequence[QVec], halfspaces: Iterable[tuple], embedding=None,
              name=None) -> Polytope:
    """Build a Polytope from extreme points and irredundant facet inequalities.

    Normals may be any nonzero rational vectors; they are made primitive.
    Vertices are sorted and facets ordered by outward normal.
    """
    verts = sorted(set(vertices))
    den, iv = to_ints(verts)
    hs = []
    for n, off in halfspaces:
        fn = [Fraction(x) for x in n]
        prim = _iprimitive(rl.primitive(fn))
        ratio = Fraction(next(x for x in prim if x)) / next(x for x in fn if x)
        hs.append((prim, Fraction(off) * ratio))
    hs.sort()
    facets = []
    for fid, (n, off) in enumerate(hs):
        target = off * den
        ids = [i for i, v in enumerate(iv) if _idot(n, v) == target]
        facets.append(_make_facet(fid, n, off, ids, verts, iv))
    return Polytope(tuple(verts), tuple(facets), embedding, name)


def _segment(points: Sequence[QVec], name=None, embedding=None) -> Polytope:
    lo, hi = min(points), max(points)
    if lo == hi:
        raise NotFullDimensionalError(0, 1)
    return _assemble([lo, hi], [((-1,), -lo[0]), ((1,), hi[0])], embedding=embedding, name=name)


def dual_description(points: Iterable[Sequence], name: str | None = None,
                     embedding: QMat | None = None) -> Polytope:
    """Convex hull of a full-dimensional rational point set.

    Points are inserted one at a time (beneath-beyond).  A point that sees
    some facets replaces them with new facets through the horizon ridges;
    facets whose hyperplane contains the point simply absorb it.  Points that
    stop being extreme are dropped after every insertion.

    >>> sq = dual_description([(0, 0), (1, 0), (0, 1), (1, 1), (Fraction(1, 2), 0)])
    >>> len(sq.vertices), len(sq.facets)
    (4, 4)
    """
    pts = list(dict.fromkeys(rl.vec(p) for p in points))
    if not pts:
        raise NotFullDimensionalError(-1, 0)
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionMismatchError("points have differing dimensions")
    if d == 1:
        return _segment(pts, name, embedding)
    den, ip = to_ints(pts)
    base = _affine_basis(ip)
    if len(base) < d + 1:
        raise NotFullDimensionalError(len(base) - 1, d)
    inside = tuple(map(sum, zip(*(ip[i] for i in base))))
    weight = d + 1
    hull = []
    for omit in base:
        hull.append(_ihyperplane([ip[i] for i in base if i != omit], inside, weight))
    current = list(base)
    in_base = set(base)

    for idx in range(len(ip)):
        if idx in in_base:
            continue
        p = ip[idx]
        vals = [_idot(n, p) - off for n, off in hull]
        if all(s <= 0 for s in vals):
            continue
        on = [frozenset(i for i in current if _idot(n, ip[i]) == off) for n, off in hull]
        new = {}
        for fi, s in enumerate(vals):
            if s <= 0:
                continue
            for gi, t in enumerate(vals):
                if t >= 0:
                    continue
                shared = on[fi] & on[gi]
                if len(shared) < d - 1:
                    continue
                ridge = [ip[i] for i in sorted(shared)]
                sub = _affine_basis(ridge, limit=d - 1)
                if len(sub) != d - 1:
                    continue
                plane = _ihyperplane([ridge[i] for i in sub] + [p], inside, weight)
                new.setdefault(plane, None)
        hull = [h for h, s in zip(hull, vals) if s <= 0] + list(new)
        current.append(idx)
        current = [i for i in current if _is_vertex(ip[i], hull, d)]

    return _assemble([pts[i] for i in current], [(n, Fraction(off, den)) for n, off in hull],
                     embedding=embedding, name=name)


def _is_vertex(v, hull, d: int) -> bool:
    normals = [n for n, off in hull if _idot(n, v) == off]
    return len(normals) >= d and int_rank(normals) == d


def ridges(P: Polytope) -> list[Ridge]:
    """(d-2)-faces as intersections of facet pairs.  Empty for d < 2."""
    return list(memo(P, "ridges", lambda: _ridges(P)))


def _ridges(P: Polytope) -> tuple[Ridge, ...]:
    d = P.dim
    if d < 2:
        return ()
    _, iv, _ = P.integer_data()
    out = []
    facets = P.facets
    for a in range(len(facets)):
        f = facets[a]
        for b in range(a + 1, len(facets)):
            g = facets[b]
            shared = f.vertex_ids & g.vertex_ids
            if len(shared) < d - 1:
                continue
            pts = [iv[i] for i in sorted(shared)]
            if _affine_rank(pts) != d - 2:
                continue
            owners = sum(1 for h in facets if shared <= h.vertex_ids)
            if owners != 2:
                raise InternalConsistencyError(f"ridge lies in {owners} facets")
            diffs = [tuple(x - y for x, y in zip(q, pts[0])) for q in pts[1:]]
            direction = rl.rref(diffs)[0] if diffs else ()
            out.append(Ridge(len(out), (f.id, g.id), frozenset(shared), direction))
    return tuple(out)


def _faces_below(face: frozenset, k: int, P: Polytope) -> list[frozenset]:
    """The (k-1)-faces of the k-face ``face`` (given by vertex ids)."""
    _, iv, _ = P.integer_data()
    seen = {}
    for f in P.facets:
        sub = face & f.vertex_ids
        if sub == face or len(sub) < k or sub in seen:
            continue
        if _affine_rank([iv[i] for i in sorted(sub)]) == k - 1:
            seen[sub] = None
    return list(seen)


def _triangulate(face: frozenset, k: int, P: Polytope) -> list[tuple[int, ...]]:
    """Pulling triangulation of a k-face into k-simplices (vertex-id tuples)."""
    ids = sorted(face)
    if k == 0:
        return [(ids[0],)]
    if len(ids) == k + 1:
        return [tuple(ids)]
    apex = ids[0]
    out = []
    for sub in _faces_below(face, k, P):
        if apex in sub:
            continue
        out.extend((apex,) + s for s in _triangulate(sub, k - 1, P))
    return out


def volume(P: Polytope) -> Fraction:
    """Exact volume, measured in the polytope's own (intrinsic) coordinates.

    Cones from the vertex centroid over a triangulation of every facet.  For
    an embedded polytope this is the volume relative to its embedding basis.
    """
    return memo(P, "volume", lambda: _volume(P))


def _volume(P: Polytope) -> Fraction:
    d = P.dim
    if d == 1:
        return max(P.vertices)[0] - min(P.vertices)[0]
    den, iv, _ = P.integer_data()
    n = len(iv)
    s = tuple(map(sum, zip(*iv)))
    total = 0
    for f in P.facets:
        for simplex in _triangulate(f.vertex_ids, d - 1, P):
            rows = [tuple(n * a - b for a, b in zip(iv[i], s)) for i in simplex]
            total += abs(int_det(rows))
    return Fraction(total, math.factorial(d) * (n * den) ** d)


def direct_product(P1: Polytope, P2: Polytope, name: str | None = None) -> Polytope:
    """Cartesian product; facets are ``F x P2`` (P1's order) then ``P1 x F``.

    Vertex ``i * len(P2.vertices) + j`` is the concatenation of the i-th and j-th vertices.
    """
    if P1.embedding is not None or P2.embedding is not None:
        raise DimensionMismatchError("direct_product takes polytopes in their own coordinates")
    d1, d2 = P1.dim, P2.dim
    n2 = len(P2.vertices)
    verts = tuple(a + b for a in P1.vertices for b in P2.vertices)
    _, iv = to_ints(verts)
    facets = []
    for f in P1.facets:
        ids = {i * n2 + j for i in f.vertex_ids for j in range(n2)}
        n = tuple(int(x) for x in f.normal) + (0,) * d2
        facets.append(_make_facet(len(facets), n, f.offset, ids, verts, iv))
    for f in P2.facets:
        ids = {i * n2 + j for i in range(len(P1.vertices)) for j in f.vertex_ids}
        n = (0,) * d1 + tuple(int(x) for x in f.normal)
        facets.append(_make_facet(len(facets), n, f.offset, ids, verts, iv))
    return Polytope(verts, tuple(facets), None, name)


def translate(P: Polytope, t: QVec) -> Polytope:
    verts = tuple(rl.add(v, t) for v in P.vertices)
    facets = tuple(
        replace(f, offset=f.offset + rl.dot(f.normal, t),
                center=None if f.center is None else rl.add(f.center, t))
        for f in P.facets
    )
    return replace(P, vertices=verts, facets=facets)


def canonical_form(P: Polytope) -> Polytope:
    """Translate the center (or vertex centroid) to the origin and sort everything.

    Two polytopes agree up to translation iff their canonical forms are equal.
    """
    c = center_of_symmetry(P.vertices) or rl.centroid(P.vertices)
    verts = [rl.sub(v, c) for v in P.vertices]
    halfspaces = [(f.normal, f.offset - rl.dot(f.normal, c)) for f in P.facets]
    return _assemble(verts, halfspaces, embedding=P.embedding, name=P.name)


def embedded_hull(points: Iterable[Sequence], name: str | None = None) -> Polytope:
    """Hull of points spanning a linear subspace, kept embedded in that subspace."""
    pts = list(dict.fromkeys(rl.vec(p) for p in points))
    basis, pivots = rl.rref(pts)
    if not basis:
        raise NotFullDimensionalError(0, len(pts[0]))
    intrinsic = [tuple(p[j] for j in pivots) for p in pts]
    for p, x in zip(pts, intrinsic):
        if rl.combine(x, basis) != p:
            raise InternalConsistencyError("points do not lie in their linear span")
    return dual_description(intrinsic, name=name, embedding=basis)


def minkowski_sum(polytopes: Sequence[Polytope], name: str | None = None) -> Polytope:
    """Minkowski sum of (possibly embedded) polytopes, in ambient coordinates."""
    sums = [()]
    for Q in polytopes:
        sums = [s + (v,) for s in sums for v in Q.ambient_vertices()]
    pts = [functools.reduce(rl.add, s) for s in sums]
    return dual_description(pts, name=name)
