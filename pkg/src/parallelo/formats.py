"""Text formats for polytopes, lattices and gain assignments.

Polytope::

    polytope d=3
    name=cube
    1/2 1/2 1/2
    ...

Lattice::

    lattice d=2
    1 0
    1/2 1

Gain (one oriented adjacency per line, coordinates comma- or space-separated)::

    (0,0) ; (1,0) ; 1

'#' starts a comment anywhere on a line.  Parse errors carry line and column.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator

from . import ratlin as rl
from .errors import FormatError, NotFullDimensionalError
from .polytope import Polytope, canonical_form, dual_description
from .ratlin import Lattice

_HEADER = re.compile(r"(polytope|lattice) d=([0-9]+)")


def _lines(text: str) -> Iterator[tuple[int, str, int]]:
    """Yield (line number, stripped content, column of content) for non-blank lines."""
    for no, raw in enumerate(text.split("\n"), 1):
        body = raw.split("#", 1)[0].rstrip("\r")
        stripped = body.strip()
        if stripped:
            yield no, stripped, len(body) - len(body.lstrip()) + 1


def _tokens(s: str, col0: int) -> list[tuple[str, int]]:
    return [(m.group(), col0 + m.start()) for m in re.finditer(r"\S+", s)]


def _rat(tok: str, line: int, col: int, source) -> Fraction:
    try:
        return rl.parse_rational(tok)
    except FormatError as e:
        raise FormatError(str(e), line, col, source) from None


def _header(lines: list, kind: str, source) -> tuple[int, int]:
    if not lines:
        raise FormatError(f"empty input, expected '{kind} d=<int>'", 1, 1, source)
    no, s, col = lines[0]
    m = _HEADER.fullmatch(s)
    if not m or m.group(1) != kind:
        raise FormatError(f"expected header '{kind} d=<int>', got {s!r}", no, col, source)
    d = int(m.group(2))
    if d < 1:
        raise FormatError("dimension must be positive", no, col + len(kind) + 3, source)
    return d, 1


def _rows(lines, d: int, source) -> list[tuple]:
    rows = []
    for no, s, col in lines:
        toks = _tokens(s, col)
        if len(toks) != d:
            raise FormatError(f"expected {d} coordinates, found {len(toks)}", no, col, source)
        rows.append(tuple(_rat(t, no, c, source) for t, c in toks))
    return rows


def read_polytope(text: str, source: str | None = None) -> Polytope:
    lines = list(_lines(text))
    d, start = _header(lines, "polytope", source)
    name = None
    body = lines[start:]
    if body and body[0][1].startswith("name="):
        name = body[0][1][len("name="):].strip() or None
        body = body[1:]
    rows = _rows(body, d, source)
    if not rows:
        raise FormatError("no vertices", lines[0][0], 1, source)
    try:
        return dual_description(rows, name=name)
    except NotFullDimensionalError as e:
        raise FormatError(str(e), body[0][0], 1, source) from None


def write_polytope(P: Polytope, name: str | None = None) -> str:
    """Canonical-form text of P in its own coordinates.

    For an embedded polytope the embedding rows follow as ``# basis`` comment
    lines; the ambient point of ``x`` is ``sum(x[i] * basis[i])``.
    """
    C = canonical_form(P)
    name = name if name is not None else P.name
    out = [f"polytope d={C.dim}"]
    if name:
        out.append(f"name={name}")
    if C.embedding is not None:
        for row in C.embedding:
            out.append("# basis " + " ".join(str(x) for x in row))
    for v in C.vertices:
        out.append(" ".join(str(x) for x in v))
    return "\n".join(out) + "\n"


def read_lattice(text: str, source: str | None = None) -> Lattice:
    lines = list(_lines(text))
    d, start = _header(lines, "lattice", source)
    body = lines[start:]
    if len(body) != d:
        where = body[d][0] if len(body) > d else (body[-1][0] if body else lines[0][0]) + 1
        raise FormatError(f"expected {d} basis rows, found {len(body)}", where, 1, source)
    rows = _rows(body, d, source)
    if rl.rank(rows) != d:
        raise FormatError("basis rows are linearly dependent", body[0][0], 1, source)
    return rl.hnf(rows, d)


def write_lattice(L: Lattice) -> str:
    out = [f"lattice d={L.ambient_dim}"]
    out += [" ".join(str(x) for x in row) for row in L.basis]
    return "\n".join(out) + "\n"


def _vector(s: str, line: int, col: int, source) -> tuple:
    inner = s.strip()
    lead = col + (len(s) - len(s.lstrip()))
    if inner.startswith("(") and inner.endswith(")"):
        inner, lead = inner[1:-1], lead + 1
        parts = [(m.group().strip(), lead + m.start() + (len(m.group()) - len(m.group().lstrip())))
                 for m in re.finditer(r"[^,]+", inner)]
    else:
        parts = _tokens(inner, lead)
    if not parts or any(not p for p, _ in parts):
        raise FormatError(f"bad vector {s.strip()!r}", line, col, source)
    return tuple(_rat(p, line, c, source) for p, c in parts)


def read_gain(text: str, dim: int | None = None, source: str | None = None) -> dict:
    """Parse ``a ; b ; value`` lines into ``{(a, b): value}``."""
    g = {}
    for no, s, col in _lines(text):
        fields, pos = [], col
        for part in s.split(";"):
            fields.append((part, pos))
            pos += len(part) + 1
        if len(fields) != 3:
            raise FormatError(f"expected 'cell ; cell ; value', found {len(fields)} fields", no, col, source)
        a = _vector(fields[0][0], no, fields[0][1], source)
        b = _vector(fields[1][0], no, fields[1][1], source)
        vtext, vcol = fields[2]
        value = _rat(vtext.strip(), no, vcol + len(vtext) - len(vtext.lstrip()), source)
        for v, c in ((a, fields[0][1]), (b, fields[1][1])):
            if dim is not None and len(v) != dim:
                raise FormatError(f"expected a vector of dimension {dim}", no, c, source)
        if len(a) != len(b):
            raise FormatError("cells have different dimensions", no, fields[1][1], source)
        if (a, b) in g:
            raise FormatError(f"duplicate entry for {rl.fmt_vec(a)} ; {rl.fmt_vec(b)}", no, col, source)
        g[(a, b)] = value
    return g


def write_gain(g: dict) -> str:
    return "".join(f"{rl.fmt_vec(a)} ; {rl.fmt_vec(b)} ; {g[(a, b)]}\n" for a, b in sorted(g))
