"""Compare the compiled and pure-Python integer kernels.

Two measurements: the kernels alone on random small matrices, and a whole
workload (checks, Venkov graphs, factorization and patches over the catalog)
run in a subprocess once per backend.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from parallelo import _pykernels

try:
    from parallelo import _ckernels
except ImportError:
    _ckernels = None

WORKLOAD = """
import time
t = time.perf_counter()
from parallelo import catalog, _kernels
from parallelo.factorize import factor
from parallelo.paratile import build_patch, check_parallelohedron
from parallelo.venkov import venkov_graph
for name in catalog.POLYTOPES:
    P = catalog.polytope(name)
    check_parallelohedron(P)
    venkov_graph(P)
    factor(P)
    build_patch(P, 1)
print(_kernels.BACKEND, time.perf_counter() - t)
"""


def random_matrices(count, n, m, seed=1):
    rng = random.Random(seed)
    return [[[rng.randint(-20, 20) for _ in range(m)] for _ in range(n)] for _ in range(count)]


def bench_kernels(mod, repeat):
    square = random_matrices(200, 4, 4)
    wide = random_matrices(200, 3, 4)
    x = [3, -1, 4, 1]
    jobs = {
        "int_rank": lambda: [mod.int_rank(a) for a in wide],
        "int_det": lambda: [mod.int_det(a) for a in square],
        "int_normal": lambda: [mod.int_normal(a) for a in wide],
        "int_dots": lambda: [mod.int_dots(a, x) for a in square],
    }
    return {k: min(timeit.repeat(f, number=5, repeat=repeat)) for k, f in jobs.items()}


def bench_workload():
    out = {}
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("PARALLELO_PURE", None)
        if pure:
            env["PARALLELO_PURE"] = "1"
        r = subprocess.run([sys.executable, "-c", WORKLOAD], capture_output=True, text=True,
                           env=env, check=True)
        backend, secs = r.stdout.split()
        out[backend] = float(secs)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    py = bench_kernels(_pykernels, args.repeat)
    if _ckernels is None:
        print("compiled kernels not built; pure timings only")
        c = {}
    else:
        c = bench_kernels(_ckernels, args.repeat)
    print(f"{'kernel':<12}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for k in py:
        if k in c:
            print(f"{k:<12}{py[k] * 1e3:>12.2f}{c[k] * 1e3:>12.2f}{py[k] / c[k]:>9.1f}x")
        else:
            print(f"{k:<12}{py[k] * 1e3:>12.2f}{'-':>12}{'-':>10}")
    w = bench_workload()
    print()
    for backend, secs in sorted(w.items()):
        print(f"catalog workload ({backend}): {secs:.2f} s")


if __name__ == "__main__":
    main()
