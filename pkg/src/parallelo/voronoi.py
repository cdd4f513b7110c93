"""Voronoi cells of rational lattices.

A lattice vector ``v`` defines a facet of the Voronoi cell exactly when
``+v`` and ``-v`` are the only shortest vectors of the coset ``v + 2L``.
Each of the ``2^d - 1`` nonzero cosets is searched by bounded enumeration of
basis coefficients; the bound is enlarged until it provably covers every
vector at least as short as the best one found.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import ratlin as rl
from .errors import DimensionMismatchError, InternalConsistencyError
from .paratile import check_parallelohedron, facet_vectors, tiling_lattice
from .polytope import Polytope, canonical_form, dual_description, volume
from .ratlin import Lattice, QVec

DEFAULT_BOUND = 4


@dataclass(frozen=True)
class CosetCertificate:
    """Evidence for one coset ``parity + 2L`` (parity in {0,1}^d).

    ``norm`` is the minimal squared length found, ``argmin`` the coefficient
    vectors attaining it, and ``bound`` the coefficient box half-width that
    was proven sufficient.
    """

    parity: tuple[int, ...]
    norm: Fraction
    argmin: tuple[tuple[int, ...], ...]
    bound: int

    @property
    def relevant(self) -> bool:
        return len(self.argmin) == 2


@dataclass(frozen=True)
class RelevantVectorSet:
    vectors: tuple[QVec, ...]
    certificates: tuple[CosetCertificate, ...]

    def __len__(self) -> int:
        return len(self.vectors)


def _gram(L: Lattice) -> tuple[int, list[list[int]]]:
    """Common denominator D and the integer Gram matrix of D * basis."""
    den = math.lcm(1, *(x.denominator for row in L.basis for x in row))
    b = [[int(x * den) for x in row] for row in L.basis]
    return den, [[sum(p * q for p, q in zip(u, v)) for v in b] for u in b]


def _outside_bound(gram: list[list[int]], B: int) -> Fraction:
    """Lower bound on x^T G x over integer x with some |x_i| > B.

    Fixing one coordinate x_i, the minimum of the quadratic form is
    ``x_i^2 / (G^-1)_ii``.
    """
    inv = rl.inverse(gram)
    worst = max(inv[i][i] for i in range(len(gram)))
    return Fraction((B + 1) ** 2) / worst


def _search(gram: list[list[int]], B: int) -> dict:
    """Minimal norm and argmins per nonzero parity class within ``[-B, B]^d``."""
    d = len(gram)
    best: dict = {}
    for x in itertools.product(range(-B, B + 1), repeat=d):
        parity = tuple(c & 1 for c in x)
        if not any(parity):
            continue
        n = sum(x[i] * gram[i][j] * x[j] for i in range(d) for j in range(d))
        cur = best.get(parity)
        if cur is None or n < cur[0]:
            best[parity] = [n, [x]]
        elif n == cur[0]:
            cur[1].append(x)
    return best


def relevant_vectors(L: Lattice, bound: int = DEFAULT_BOUND) -> RelevantVectorSet:
    """Voronoi-relevant vectors of a full-rank lattice, sorted."""
    if not L.is_full_rank:
        raise DimensionMismatchError(
            f"lattice has rank {L.rank} in dimension {L.ambient_dim}; Voronoi cells need full rank")
    den, gram = _gram(L)
    B = max(1, bound)
    while True:
        found = _search(gram, B)
        top = max(n for n, _ in found.values())
        if top < _outside_bound(gram, B):
            break
        B *= 2
    certs, vectors = [], []
    for parity in sorted(found):
        n, xs = found[parity]
        cert = CosetCertificate(parity, Fraction(n, den * den), tuple(sorted(xs)), B)
        certs.append(cert)
        if cert.relevant:
            vectors.extend(rl.combine(x, L.basis) for x in xs)
    return RelevantVectorSet(tuple(sorted(vectors)), tuple(certs))


def voronoi_cell(L: Lattice, name: str | None = None) -> Polytope:
    """The cell ``{x : 2 x.v <= v.v for every relevant v}``, verified.

    Vertices come from polarity: the cell's polar body is the hull of the
    points ``v / (v.v / 2)``, and each facet ``a.y <= b`` of that hull gives
    the cell vertex ``a / b``.
    """
    rv = relevant_vectors(L)
    polar_pts = [rl.scale(Fraction(2) / rl.dot(v, v), v) for v in rv.vectors]
    polar = dual_description(polar_pts)
    verts = [rl.scale(1 / f.offset, f.normal) for f in polar.facets]
    cell = canonical_form(dual_description(verts, name=name))

    if len(cell.facets) != len(rv.vectors):
        raise InternalConsistencyError(
            f"cell has {len(cell.facets)} facets but {len(rv.vectors)} relevant vectors")
    if not check_parallelohedron(cell).verdict:
        raise InternalConsistencyError("Voronoi cell fails the parallelohedron test")
    table = facet_vectors(cell)
    if sorted(table.vectors.values()) != list(rv.vectors):
        raise InternalConsistencyError("facet vectors differ from the relevant vectors")
    if volume(cell) != L.determinant():
        raise InternalConsistencyError("cell volume differs from the lattice determinant")
    if tiling_lattice(cell, table) != rl.hnf(L.basis, L.ambient_dim):
        raise InternalConsistencyError("cell tiles with a lattice other than the input")
    return cell
