"""Command-line interface.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 malformed
input or bad arguments, 3 internal-consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import ratlin as rl
from .catalog import FIXTURES
from .errors import (FormatError, InternalConsistencyError, NotParallelohedronError,
                     ParalleloError)
from .factorize import factor
from .formats import read_gain, read_lattice, read_polytope, write_gain, write_polytope
from .gain import gain_of, gain_report, linear_cell_function, scaled_gain
from .paratile import build_patch, check_parallelohedron
from .polytope import canonical_form, direct_product
from .venkov import venkov_graph
from .voronoi import voronoi_cell

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(ParalleloError):
    pass


def resolve(path: str, suffix: str) -> Path:
    """Exact path, then path + suffix, then a bundled fixture with the same stem."""
    p = Path(path)
    for cand in (p, p.with_name(p.name + suffix)):
        if cand.is_file():
            return cand
    stem = p.name[:-len(suffix)] if p.name.endswith(suffix) else p.name
    bundled = FIXTURES / f"{stem}{suffix}"
    if bundled.is_file():
        return bundled
    raise UsageError(f"no such file: {path}")


def _read(path: Path) -> str:
    try:
        return path.read_bytes().decode("utf-8")
    except UnicodeDecodeError as e:
        raise FormatError(f"not UTF-8: {e.reason}", source=str(path)) from None


def load_polytope(path: str):
    p = resolve(path, ".poly")
    return canonical_form(read_polytope(_read(p), source=str(p)))


def load_lattice(path: str):
    p = resolve(path, ".lat")
    return read_lattice(_read(p), source=str(p))


def parse_partition(text: str) -> tuple[list[int], list[int]]:
    blocks = text.split("|")
    if len(blocks) != 2:
        raise UsageError(f"partition {text!r} must have two blocks separated by '|'")
    out = []
    for b in blocks:
        try:
            out.append([int(x) for x in b.split(",") if x.strip()])
        except ValueError:
            raise UsageError(f"bad vertex list {b!r} in partition") from None
    return out[0], out[1]


def parse_vector(text: str) -> tuple:
    try:
        return tuple(rl.parse_rational(x.strip()) for x in text.strip("()").split(","))
    except FormatError:
        raise UsageError(f"bad vector {text!r}") from None


def _emit(out, lines) -> None:
    for line in lines:
        out.write(line + "\n")


def _bool(b: bool) -> str:
    return "true" if b else "false"


def cmd_check(args, out) -> int:
    P = load_polytope(args.polytope)
    rep = check_parallelohedron(P)
    if args.summary == "kv":
        _emit(out, [
            f"verdict={_bool(rep.verdict)}",
            f"centrally_symmetric={_bool(rep.centrally_symmetric)}",
            "facet_symmetry_failures=" + ",".join(map(str, rep.facet_symmetry_failures)),
            "belts=" + ",".join(str(b.length) for b in rep.belts),
        ])
    else:
        _emit(out, rep.lines())
    return EXIT_OK if rep.verdict else EXIT_NEGATIVE


def cmd_venkov(args, out) -> int:
    G = venkov_graph(load_polytope(args.polytope))
    if args.summary == "kv":
        _emit(out, G.summary().split(" "))
    else:
        out.write(G.to_dot())
        out.write(G.summary() + "\n")
    return EXIT_OK


def cmd_factor(args, out) -> int:
    P = load_polytope(args.polytope)
    dec = factor(P)
    stem = Path(args.polytope).name.removesuffix(".poly")
    texts = [write_polytope(Q, name=f"{stem}_factor_{i}") for i, Q in enumerate(dec.factors)]
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        for i, text in enumerate(texts):
            path = d / f"{stem}_factor_{i}.poly"
            path.write_text(text, encoding="utf-8")
            if args.summary != "kv":
                out.write(f"wrote {path.name}\n")
    elif args.summary != "kv":
        for text in texts:
            out.write(text)
    _emit(out, dec.summary_lines())
    return EXIT_OK if dec.reconstruction_ok else EXIT_INTERNAL


def cmd_product(args, out) -> int:
    P1, P2 = load_polytope(args.first), load_polytope(args.second)
    names = [Path(a).name.removesuffix(".poly") for a in (args.first, args.second)]
    out.write(write_polytope(direct_product(P1, P2), name="_x_".join(names)))
    return EXIT_OK


def cmd_voronoi(args, out) -> int:
    L = load_lattice(args.lattice)
    name = Path(args.lattice).name.removesuffix(".lat") + "_voronoi"
    out.write(write_polytope(voronoi_cell(L, name=name)))
    return EXIT_OK


def _check_radius(r: int) -> int:
    if r < 1:
        raise UsageError("--radius must be at least 1")
    return r


def cmd_gain_check(args, out) -> int:
    P = load_polytope(args.polytope)
    patch = build_patch(P, _check_radius(args.radius))
    gp = Path(args.gain)
    if not gp.is_file():
        raise UsageError(f"no such file: {args.gain}")
    g = read_gain(_read(gp), dim=P.dim, source=str(gp))
    rep = gain_report(patch, g)
    if args.summary == "kv":
        _emit(out, [f"valid={_bool(rep.ok)}",
                    f"missing={len(rep.missing)}",
                    f"antisymmetry_violations={len(rep.antisymmetry_violations)}",
                    f"cycle_violations={len(rep.cycle_violations)}"])
    else:
        _emit(out, rep.lines())
    return EXIT_OK if rep.ok else EXIT_NEGATIVE


def cmd_patch(args, out) -> int:
    P = load_polytope(args.polytope)
    patch = build_patch(P, _check_radius(args.radius))
    by_len: dict[int, int] = {}
    for c in patch.ridge_cycles:
        by_len[len(c)] = by_len.get(len(c), 0) + 1
    lines = [f"cells={len(patch.cells)}", f"shared_facets={len(patch.shared_facets)}",
             f"ridge_cycles={len(patch.ridge_cycles)}"]
    lines += [f"ridge_cycles_length_{k}={by_len[k]}" for k in sorted(by_len)]
    _emit(out, lines)

    if args.gain_out:
        if args.functional is None:
            raise UsageError("--gain-out needs --functional")
        w = parse_vector(args.functional)
        if len(w) != P.dim:
            raise UsageError(f"functional has {len(w)} entries, polytope has dimension {P.dim}")
        f = linear_cell_function(patch, w)
        if args.partition is not None:
            A1, A2 = parse_partition(args.partition)
            g = scaled_gain(patch, f, A1, A2, args.alpha)
        elif args.alpha != 1:
            raise UsageError("--alpha needs --partition")
        else:
            g = gain_of(f, patch)
        Path(args.gain_out).write_text(write_gain(g), encoding="utf-8")
    return EXIT_OK


def _rational(text: str) -> Fraction:
    try:
        return rl.parse_rational(text)
    except FormatError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="parallelo",
                                 description="Parallelohedra: verification, Venkov graphs, factorization.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--summary", choices=("text", "kv"), default="text",
                       help="output style; kv prints key=value lines")
        p.set_defaults(func=fn)
        return p

    p = add("check", cmd_check, "test the Minkowski-Venkov conditions")
    p.add_argument("polytope")
    p = add("venkov", cmd_venkov, "print the Venkov graph as DOT plus a summary line")
    p.add_argument("polytope")
    p = add("factor", cmd_factor, "split into irreducible factors")
    p.add_argument("polytope")
    p.add_argument("--out-dir", help="write factor files here instead of standard output")
    p = add("product", cmd_product, "direct product of two polytopes")
    p.add_argument("first")
    p.add_argument("second")
    p = add("voronoi-cell", cmd_voronoi, "Voronoi cell of a lattice")
    p.add_argument("lattice")
    p = add("gain-check", cmd_gain_check, "test a gain assignment on a patch")
    p.add_argument("polytope")
    p.add_argument("gain")
    p.add_argument("--radius", type=int, default=1)
    p = add("patch", cmd_patch, "patch statistics, optionally writing a gain file")
    p.add_argument("polytope")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--functional", help="linear functional w, as 'a,b,...'; f(cell) = w . cell")
    p.add_argument("--alpha", type=_rational, default=Fraction(1))
    p.add_argument("--partition", help="Venkov vertex blocks 'a,b|c,...' for the scaled gain")
    p.add_argument("--gain-out", help="write the gain of f (or its scaled version) here")
    return ap


def run(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except FormatError as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT
    except NotParallelohedronError as e:
        _emit(out, e.report.lines())
        return EXIT_NEGATIVE
    except InternalConsistencyError as e:
        err.write(f"internal consistency failure: {e}\n")
        return EXIT_INTERNAL
    except (ParalleloError, OSError) as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
