"""Exact rational linear algebra and lattices.

Scalars are :class:`fractions.Fraction`, vectors are tuples of fractions and
matrices are tuples of row vectors.  Nothing here touches floating point.

Lattices are stored in a canonical row Hermite normal form, so two
:class:`Lattice` objects compare equal exactly when they describe the same
set of points.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, FormatError, NotSublatticeError

Rat = Fraction
QVec = tuple  # tuple[Fraction, ...]
QMat = tuple  # tuple[QVec, ...]

_RATIONAL = re.compile(r"-?[0-9]+(/[0-9]+)?")


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal such as ``3/2``, ``-1`` or ``0``."""
    if not _RATIONAL.fullmatch(text):
        raise FormatError(f"bad rational literal {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise FormatError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def vec(values: Iterable) -> QVec:
    return tuple(Fraction(v) for v in values)


def mat(rows: Iterable[Iterable]) -> QMat:
    return tuple(vec(r) for r in rows)


def fmt_vec(v: Sequence[Fraction]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def zero(n: int) -> QVec:
    return (Fraction(0),) * n


def add(u: QVec, v: QVec) -> QVec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: QVec, v: QVec) -> QVec:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: QVec) -> QVec:
    return tuple(-a for a in u)


def scale(c, u: QVec) -> QVec:
    return tuple(c * a for a in u)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def combine(coeffs: Sequence, rows: Sequence[QVec]) -> QVec:
    """Return ``sum(coeffs[i] * rows[i])``; the row-vector times matrix product."""
    n = len(rows[0])
    out = [Fraction(0)] * n
    for c, r in zip(coeffs, rows):
        if c:
            for j in range(n):
                out[j] += c * r[j]
    return tuple(out)


def matmul(a: Sequence[QVec], b: Sequence[QVec]) -> QMat:
    return tuple(combine(row, b) for row in a)


def centroid(points: Sequence[QVec]) -> QVec:
    n = len(points)
    return tuple(sum(col, Fraction(0)) / n for col in zip(*points))


def rref(rows: Sequence[Sequence]) -> tuple[QMat, tuple[int, ...]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns).

    Elimination runs fraction-free on integer rows (each input row scaled by
    its own denominator), then every pivot row is normalized once.
    """
    a = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        den = math.lcm(1, *(x.denominator for x in fr))
        ints = [int(x * den) for x in fr]
        if any(ints):
            a.append(ints)
    if not a:
        return (), ()
    m, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pr = a[r]
        pc = pr[c]
        for i in range(m):
            x = a[i][c]
            if i != r and x:
                row = [pc * u - x * v for u, v in zip(a[i], pr)]
                g = math.gcd(*row)
                a[i] = [u // g for u in row] if g > 1 else row
        pivots.append(c)
        r += 1
        if r == m:
            break
    out = tuple(tuple(Fraction(x, a[i][c]) for x in a[i]) for i, c in enumerate(pivots))
    return out, tuple(pivots)


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def affine_rank(points: Sequence[QVec]) -> int:
    """Dimension of the affine hull of ``points`` (-1 for the empty set)."""
    if not points:
        return -1
    p0 = points[0]
    return rank([sub(p, p0) for p in points[1:]]) if len(points) > 1 else 0


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> QMat:
    """Basis of ``{x : row . x = 0 for every row}``, one basis vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ((), ())
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return tuple(basis)


def det(m: Sequence[Sequence]) -> Fraction:
    a = [list(map(Fraction, r)) for r in m]
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatchError("determinant of a non-square matrix")
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def inverse(m: Sequence[Sequence]) -> QMat:
    n = len(m)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    red, pivots = rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def solve_left(basis: Sequence[QVec], v: QVec) -> QVec | None:
    """Coefficients c with ``combine(c, basis) == v``, or None if v is outside the span.

    ``basis`` must have linearly independent rows.
    """
    k = len(basis)
    n = len(v)
    # columns of the system are basis rows: solve B^T c = v
    aug = [[basis[i][j] for i in range(k)] + [v[j]] for j in range(n)]
    red, pivots = rref(aug)
    if k in pivots:
        return None
    c = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        c[p] = row[k]
    return tuple(c)


def primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector with the same direction."""
    den = math.lcm(*(Fraction(x).denominator for x in v))
    ints = [int(Fraction(x) * den) for x in v]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


def _int_hnf(rows: list[list[int]]) -> list[list[int]]:
    a = [r[:] for r in rows if any(r)]
    if not a:
        return []
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[r], a[p] = a[p], a[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        piv = a[r][c]
        for i in range(r):
            q = a[i][c] // piv
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return a[:r]


@dataclass(frozen=True)
class Lattice:
    """A rational lattice of any rank, held in canonical Hermite normal form.

    Build one with :func:`hnf`; constructing directly skips canonicalization.
    """

    ambient_dim: int
    basis: QMat

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    def determinant(self) -> Fraction:
        """|det| of the basis; only defined for full-rank lattices."""
        if not self.is_full_rank:
            raise DimensionMismatchError("determinant of a rank-deficient lattice")
        return abs(det(self.basis))

    def __contains__(self, v) -> bool:
        return member(self, v)

    def __str__(self) -> str:
        return " ".join(fmt_vec(b) for b in self.basis) or "{0}"


def hnf(generators: Sequence[Sequence], ambient_dim: int | None = None) -> Lattice:
    """Canonical basis of the integer span of ``generators``.

    Denominators are cleared by their common multiple, integer row HNF is run
    (positive pivots, entries above each pivot reduced into ``[0, pivot)``) and
    the result is scaled back.  Zero rows are dropped.

    >>> hnf([(4, 6), (2, 4)]).basis == ((2, 0), (0, 2))
    True
    """
    rows = [tuple(Fraction(x) for x in g) for g in generators]
    if ambient_dim is None:
        if not rows:
            raise DimensionMismatchError("cannot infer ambient dimension from no generators")
        ambient_dim = len(rows[0])
    if any(len(r) != ambient_dim for r in rows):
        raise DimensionMismatchError("generators have differing dimensions")
    den = math.lcm(1, *(x.denominator for r in rows for x in r))
    ints = [[int(x * den) for x in r] for r in rows]
    red = _int_hnf(ints)
    basis = tuple(tuple(Fraction(x, den) for x in r) for r in red)
    return Lattice(ambient_dim, basis)


def member(lattice: Lattice, v: Sequence) -> bool:
    """True iff ``v`` is an integer combination of the lattice basis."""
    if len(v) != lattice.ambient_dim:
        raise DimensionMismatchError(
            f"vector of dimension {len(v)} tested against lattice in dimension {lattice.ambient_dim}"
        )
    w = [Fraction(x) for x in v]
    for row in lattice.basis:
        p = next(j for j, x in enumerate(row) if x != 0)
        if any(w[j] for j in range(p)):
            return False
        q = w[p] / row[p]
        if q.denominator != 1:
            return False
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    return not any(w)


def is_sublattice(sub_lattice: Lattice, lattice: Lattice) -> bool:
    return all(member(lattice, b) for b in sub_lattice.basis)


def direct_sum_check(lattice: Lattice, first: Lattice, second: Lattice) -> bool:
    """Decide whether ``lattice`` is the internal direct sum of two sublattices.

    Raises :class:`NotSublatticeError` if either argument is not contained in
    ``lattice``; that is a misuse, not a negative answer.
    """
    if not (lattice.ambient_dim == first.ambient_dim == second.ambient_dim):
        raise DimensionMismatchError("lattices live in different ambient spaces")
    for name, part in (("first", first), ("second", second)):
        if not is_sublattice(part, lattice):
            raise NotSublatticeError(f"{name} lattice is not contained in the parent lattice")
    union = first.basis + second.basis
    if first.rank + second.rank != lattice.rank:
        return False
    if union and rank(union) != len(union):
        return False
    return hnf(union, lattice.ambient_dim) == lattice
