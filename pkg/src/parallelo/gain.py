"""Gain (increment) functions on finite tiling patches.

A cell function assigns a rational to every cell of a :class:`Patch`; its
gain assigns ``f(b) - f(a)`` to every oriented adjacency ``(a, b)``.  An
arbitrary assignment is a gain exactly when it is antisymmetric and sums to
zero around every interior ridge cycle, which :func:`check_gain` tests and
:func:`integrate_gain` exploits.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import ratlin as rl
from .errors import GainError
from .paratile import Patch

# (cell a, cell b) -> value; cells are lattice vectors
GainAssignment = dict
# cell -> value
CellFunction = dict


def _edges(patch: Patch):
    for a, b, _ in patch.shared_facets:
        yield a, b
        yield b, a


def gain_of(f: CellFunction, patch: Patch) -> GainAssignment:
    """``g(a, b) = f(b) - f(a)`` on every shared facet, both orientations."""
    for c in patch.cells:
        if c not in f:
            raise GainError(f"cell function has no value at cell {rl.fmt_vec(c)}")
    return {(a, b): Fraction(f[b]) - Fraction(f[a]) for a, b in _edges(patch)}


@dataclass
class GainReport:
    """Violations found by :func:`gain_report`.

    ``cycle_violations`` holds ``(cycle, total)`` where the cycle is listed in
    the orientation that was summed; ``total`` is None if a value was missing.
    """

    missing: list = field(default_factory=list)
    antisymmetry_violations: list = field(default_factory=list)
    cycle_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.missing or self.antisymmetry_violations or self.cycle_violations)

    def __bool__(self) -> bool:
        return self.ok

    def lines(self) -> list[str]:
        out = ["verdict: " + ("valid gain" if self.ok else "not a gain")]
        for a, b in self.missing:
            out.append(f"missing: {rl.fmt_vec(a)} ; {rl.fmt_vec(b)}")
        for a, b, s in self.antisymmetry_violations:
            out.append(f"antisymmetry: {rl.fmt_vec(a)} ; {rl.fmt_vec(b)} sum {s}")
        for cyc, total in self.cycle_violations:
            path = " -> ".join(rl.fmt_vec(c) for c in cyc)
            out.append(f"cycle: {path} sum {'undefined' if total is None else total}")
        return out


def _cycle_sum(g: GainAssignment, cycle) -> Fraction | None:
    total = Fraction(0)
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if (a, b) not in g:
            return None
        total += g[(a, b)]
    return total


def gain_report(patch: Patch, g: GainAssignment) -> GainReport:
    rep = GainReport()
    for a, b, _ in patch.shared_facets:
        missing = [e for e in ((a, b), (b, a)) if e not in g]
        if missing:
            rep.missing.extend(missing)
            continue
        s = g[(a, b)] + g[(b, a)]
        if s:
            rep.antisymmetry_violations.append((a, b, s))
    for cyc in patch.ridge_cycles:
        # both orientations, so a one-sided perturbation is caught either way
        for oriented in (tuple(cyc), (cyc[0],) + tuple(reversed(cyc[1:]))):
            total = _cycle_sum(g, oriented)
            if total is None or total != 0:
                rep.cycle_violations.append((oriented, total))
    return rep


def check_gain(patch: Patch, g: GainAssignment) -> bool:
    return gain_report(patch, g).ok


def integrate_gain(patch: Patch, g: GainAssignment, base_cell, base_value) -> CellFunction:
    """Recover the cell function with ``f(base_cell) = base_value`` whose gain is g.

    Integration runs over a breadth-first spanning tree; validity of g is
    checked first, so the result does not depend on the tree.
    """
    base_cell = rl.vec(base_cell)
    rep = gain_report(patch, g)
    if not rep.ok:
        raise GainError("assignment is not a gain function", rep)
    if base_cell not in patch._cellset:
        raise GainError(f"base cell {rl.fmt_vec(base_cell)} is not in the patch")
    f = {base_cell: Fraction(base_value)}
    queue = deque([base_cell])
    while queue:
        a = queue.popleft()
        for b in patch.neighbors(a):
            if b not in f:
                f[b] = f[a] + g[(a, b)]
                queue.append(b)
    if len(f) != len(patch.cells):
        raise GainError("patch is not connected through shared facets")
    return {c: f[c] for c in patch.cells}


def scaled_gain(patch: Patch, f: CellFunction, A1: Iterable[int], A2: Iterable[int],
                alpha) -> GainAssignment:
    """Gain of f, multiplied by alpha on facets whose Venkov vertex is in A2."""
    a1, a2 = set(A1), set(A2)
    if a1 & a2:
        raise GainError(f"vertices {sorted(a1 & a2)} are in both blocks")
    alpha = Fraction(alpha)
    base = gain_of(f, patch)
    out = {}
    for a, b, fid in patch.shared_facets:
        v = patch.table.vertex_of(fid)
        if v in a1:
            k = Fraction(1)
        elif v in a2:
            k = alpha
        else:
            raise GainError(f"Venkov vertex {v} (facet {fid}) is in neither block")
        out[(a, b)] = k * base[(a, b)]
        out[(b, a)] = k * base[(b, a)]
    return out


def linear_cell_function(patch: Patch, functional) -> CellFunction:
    """``f(cell) = functional . cell`` on every cell of the patch."""
    w = rl.vec(functional)
    return {c: rl.dot(w, c) for c in patch.cells}
