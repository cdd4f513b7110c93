import io
import os
import subprocess
import sys
from pathlib import Path

import pytest

from parallelo import catalog
from parallelo.cli import run
from parallelo.formats import read_polytope
from parallelo.polytope import canonical_form

OCTAGON = "polytope d=2\nname=octagon\n2 1\n1 2\n-1 2\n-2 1\n-2 -1\n-1 -2\n1 -2\n2 -1\n"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_check_cube():
    code, out, _ = call("check", "fixtures/cube")
    assert code == 0 and "verdict: parallelohedron" in out.splitlines()


def test_check_negative(tmp_path):
    f = tmp_path / "octagon.poly"
    f.write_text(OCTAGON)
    code, out, _ = call("check", str(f))
    assert code == 1 and out.splitlines()[-1] == "verdict: not a parallelohedron"
    code, out, _ = call("check", str(f), "--summary=kv")
    assert code == 1 and "verdict=false" in out.splitlines() and "belts=8" in out.splitlines()


def test_venkov_rhombic():
    code, out, _ = call("venkov", "fixtures/rhombic_dodecahedron")
    assert code == 0
    assert out.splitlines()[-1] == "vertices=6 red=12 blue=0 red_components=1"
    assert out.startswith("graph venkov {")
    code, out, _ = call("venkov", "rhombic_dodecahedron", "--summary=kv")
    assert out.splitlines() == ["vertices=6", "red=12", "blue=0", "red_components=1"]


def test_venkov_negative(tmp_path):
    f = tmp_path / "octagon.poly"
    f.write_text(OCTAGON)
    code, out, _ = call("venkov", str(f))
    assert code == 1 and "verdict: not a parallelohedron" in out


def test_factor_hexagonal_prism(tmp_path):
    code, out, _ = call("factor", "fixtures/hexagonal_prism", "--out-dir", str(tmp_path))
    assert code == 0
    assert "components=2" in out.splitlines() and "reconstruction=ok" in out.splitlines()
    files = sorted(tmp_path.iterdir())
    assert [f.name for f in files] == ["hexagonal_prism_factor_0.poly", "hexagonal_prism_factor_1.poly"]
    first = read_polytope(files[0].read_text())
    assert first == catalog.polytope("hexagon")
    assert read_polytope(files[1].read_text()) == catalog.polytope("segment")


def test_product_and_voronoi():
    code, out, _ = call("product", "segment", "square")
    assert code == 0 and read_polytope(out) == catalog.polytope("cube")
    code, out, _ = call("voronoi-cell", "fixtures/fcc")
    assert code == 0 and read_polytope(out) == catalog.polytope("rhombic_dodecahedron")


def test_patch_and_gain_check(tmp_path):
    g = tmp_path / "g.txt"
    code, out, _ = call("patch", "square", "--functional", "1,1", "--partition", "0|1",
                        "--alpha", "2", "--gain-out", str(g))
    assert code == 0 and out.splitlines()[:3] == ["cells=9", "shared_facets=12", "ridge_cycles=4"]
    assert call("gain-check", "square", str(g))[0] == 0
    # a red-crossing cut of the hexagon yields an invalid gain
    code, _, _ = call("patch", "hexagon", "--functional", "1,2", "--partition", "0|1,2",
                      "--alpha", "3", "--gain-out", str(g))
    assert code == 0
    code, out, _ = call("gain-check", "hexagon", str(g))
    assert code == 1 and out.startswith("verdict: not a gain")
    assert any(line.startswith("cycle: ") for line in out.splitlines())


def test_malformed_input_exit_2(tmp_path):
    f = tmp_path / "bad.poly"
    f.write_text("polytope d=2\n1 0\n0 1/0\n")
    code, _, err = call("check", str(f))
    assert code == 2 and f"{f}:3:3:" in err
    g = tmp_path / "bad.txt"
    g.write_text("(0,0) ; (1,0)\n")
    code, _, err = call("gain-check", "square", str(g))
    assert code == 2 and ":1:1:" in err
    assert call("check", "no_such_polytope")[0] == 2
    assert call("patch", "square", "--radius", "0")[0] == 2
    assert call("patch", "square", "--functional", "1,x", "--gain-out", str(g))[0] == 2
    assert call("bogus")[0] == 2


def test_internal_failure_exit_3(monkeypatch):
    import parallelo.cli as cli
    from parallelo.errors import InternalConsistencyError

    def broken(P):
        raise InternalConsistencyError("factors do not reconstruct the polytope")

    monkeypatch.setattr(cli, "factor", broken)
    code, _, err = call("factor", "cube")
    assert code == 3 and err.startswith("internal consistency failure")


def test_split_precondition_is_input_error():
    code, _, err = call("patch", "hexagon", "--functional", "1,0", "--partition", "0,1|1,2",
                        "--gain-out", os.devnull)
    assert code == 2


def test_console_script_byte_identical(tmp_path):
    env = dict(os.environ)
    outs = []
    for seed in ("1", "2"):
        env["PYTHONHASHSEED"] = seed
        r = subprocess.run([sys.executable, "-m", "parallelo.cli", "venkov", "hexagonal_prism"],
                           capture_output=True, env=env, cwd=tmp_path)
        assert r.returncode == 0
        outs.append(r.stdout)
    assert outs[0] == outs[1]
