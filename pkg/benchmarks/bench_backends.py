"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_backends.py [--repeat N]

Times the CDCL solver on grid encodings of a few requirements and the
interval-set kernels the monitor uses, once per backend.
"""
import argparse
import random
import time

from specdebug import _kernels_py
from specdebug.formula import to_nnf
from specdebug.parser import parse
from specdebug.sat import export_dimacs, parse_dimacs

try:
    from specdebug import _kernels as compiled
except ImportError:
    compiled = None

SAT_CASES = [
    "F[0,40](((p1 || p3) -> F[0,20] p2) && G[0,30] p1)",
    "G[0,40]((p1 || p3) -> G[0,20](p2 -> G[0,30] p1))",
    "G[0,30](p1 && F[0,20] !p1)",
    "F[0,40](p1 || p3) && F[0,40] p2 && F[0,40] G[0,30] p1",
]


def best(fn, repeat):
    out = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        out.append(time.perf_counter() - start)
    return min(out)


def random_set(rng, n, top):
    points = sorted(rng.sample(range(top), 2 * n))
    return points


def sat_bench(k, cnfs):
    for nvars, clauses in cnfs:
        k.solve_cnf(nvars, clauses)


def set_bench(k, sets, top):
    acc = sets[0]
    for s in sets[1:]:
        acc = k.union(k.intersect(acc, k.complement(s, top)), k.eventually(s, 3, 41, top))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)

    backends = [("python", _kernels_py)]
    if compiled is not None:
        backends.append(("cython", compiled))
    else:
        print("compiled kernels not built; timing the pure-Python backend only")

    cnfs = [parse_dimacs(export_dimacs(to_nnf(parse(text)))) for text in SAT_CASES]
    rng = random.Random(0)
    top = 200_000
    sets = [random_set(rng, 2_000, top) for _ in range(20)]

    rows = []
    for label, fn in (("solver (4 grid encodings)", lambda k: sat_bench(k, cnfs)),
                      ("interval sets (20 x 2000 runs)", lambda k: set_bench(k, sets, top))):
        times = {name: best(lambda: fn(k), args.repeat) for name, k in backends}
        rows.append((label, times))

    print(f"{'workload':34} " + " ".join(f"{name:>10}" for name, _ in backends) + "   speedup")
    for label, times in rows:
        cells = " ".join(f"{times[name] * 1e3:8.1f}ms" for name, _ in backends)
        speedup = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{label:34} {cells}   x{speedup:.1f}")


if __name__ == "__main__":
    main()
