"""Reference parallelohedra and lattices.

Each entry has a builder here and a copy in the ``fixtures`` directory in the
polytope or lattice text format; ``python -m parallelo.catalog`` rewrites the
fixture files from the builders.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from pathlib import Path

from . import ratlin as rl
from .formats import read_lattice, read_polytope, write_lattice, write_polytope
from .polytope import Polytope, canonical_form, direct_product, dual_description
from .ratlin import Lattice
from .voronoi import voronoi_cell

FIXTURES = Path(__file__).resolve().parent / "fixtures"

H = Fraction(1, 2)


def _cube_points(d: int):
    return list(itertools.product((-H, H), repeat=d))


def segment() -> Polytope:
    return dual_description(_cube_points(1), name="segment")


def square() -> Polytope:
    return dual_description(_cube_points(2), name="square")


def cube() -> Polytope:
    return dual_description(_cube_points(3), name="cube")


def hexagon() -> Polytope:
    pts = [(1, 0), (H, 1), (-H, 1), (-1, 0), (-H, -1), (H, -1)]
    return dual_description(pts, name="hexagon")


def hexagonal_prism() -> Polytope:
    return direct_product(hexagon(), segment(), name="hexagonal_prism")


def rhombic_dodecahedron() -> Polytope:
    pts = []
    for i in range(3):
        for s in (-1, 1):
            pts.append(tuple(s if j == i else 0 for j in range(3)))
    pts += _cube_points(3)
    return dual_description(pts, name="rhombic_dodecahedron")


def truncated_octahedron() -> Polytope:
    return voronoi_cell(LATTICES["bcc"](), name="truncated_octahedron")


def elongated_dodecahedron() -> Polytope:
    pts = []
    for a, b in itertools.product((-1, 1), (-H, H)):
        pts += [(a, 0, b), (0, a, b)]
    pts += [(a * H, b * H, c) for a, b, c in itertools.product((-1, 1), (-1, 1), (-1, 1))]
    pts += [(0, 0, -3 * H), (0, 0, 3 * H)]
    return dual_description(pts, name="elongated_dodecahedron")


def hexagon_x_hexagon() -> Polytope:
    return direct_product(hexagon(), hexagon(), name="hexagon_x_hexagon")


def square_x_hexagon() -> Polytope:
    return direct_product(square(), hexagon(), name="square_x_hexagon")


def segment_x_rhombic_dodecahedron() -> Polytope:
    return direct_product(segment(), rhombic_dodecahedron(), name="segment_x_rhombic_dodecahedron")


def _lattice(rows) -> Lattice:
    return rl.hnf(rows)


LATTICES = {
    "z2": lambda: _lattice([(1, 0), (0, 1)]),
    "z3": lambda: _lattice([(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
    "hexagonal": lambda: _lattice([(1, 0), (H, 1)]),
    "fcc": lambda: _lattice([(1, 1, 0), (1, 0, 1), (0, 1, 1)]),
    "bcc": lambda: _lattice([(1, 0, 0), (0, 1, 0), (H, H, H)]),
}

POLYTOPES = {
    "segment": segment,
    "square": square,
    "hexagon": hexagon,
    "cube": cube,
    "hexagonal_prism": hexagonal_prism,
    "rhombic_dodecahedron": rhombic_dodecahedron,
    "truncated_octahedron": truncated_octahedron,
    "elongated_dodecahedron": elongated_dodecahedron,
    "hexagon_x_hexagon": hexagon_x_hexagon,
    "square_x_hexagon": square_x_hexagon,
    "segment_x_rhombic_dodecahedron": segment_x_rhombic_dodecahedron,
}


def polytope(name: str) -> Polytope:
    """Load a catalog polytope from its fixture file."""
    path = FIXTURES / f"{name}.poly"
    return read_polytope(path.read_text(encoding="utf-8"), source=str(path))


def lattice(name: str) -> Lattice:
    path = FIXTURES / f"{name}.lat"
    return read_lattice(path.read_text(encoding="utf-8"), source=str(path))


def build(name: str) -> Polytope:
    """Construct a catalog polytope from scratch (ignores the fixture file)."""
    return canonical_form(POLYTOPES[name]())


def regenerate(directory: Path = FIXTURES) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, fn in POLYTOPES.items():
        path = directory / f"{name}.poly"
        path.write_text(write_polytope(fn(), name=name), encoding="utf-8")
        written.append(path)
    for name, fn in LATTICES.items():
        path = directory / f"{name}.lat"
        path.write_text(write_lattice(fn()), encoding="utf-8")
        written.append(path)
    return written


if __name__ == "__main__":
    for p in regenerate():
        print(p.name)
