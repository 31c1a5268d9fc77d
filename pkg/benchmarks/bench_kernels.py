"""Compare the compiled and pure-Python kernels on the workloads the package runs.

    python benchmarks/bench_kernels.py [--repeat 3] [--seed 0]

Each row times one kernel on one input with both backends and checks the
outputs agree before reporting the speedup.
"""
import argparse
import random
import time

import numpy as np

from coarsetw import generators, kernels


def masks(g):
    return [sum(1 << w for w in g.adj[v]) for v in range(g.n)]


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def workloads(seed):
    rng = random.Random(seed)
    for n in (60, 200, 500):
        g = generators.random_partial_ktree(n, 4, 0.7, rng)
        indptr, indices = g.csr
        yield f"all-pairs BFS, n={n}", lambda impl, a=indptr, b=indices, n=n: kernels.all_pairs_bfs(a, b, n, impl=impl)
    for n in (10, 13, 15):
        g = generators.gnp(n, 0.35, rng)
        m = masks(g)
        yield f"treewidth DP, n={n}", lambda impl, m=m, n=n: kernels.treewidth_dp(m, n, impl=impl)[0]
        yield f"pathwidth DP, n={n}", lambda impl, m=m, n=n: kernels.pathwidth_dp(m, n, impl=impl)[0]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    names = sorted(kernels.backends())
    if "cython" not in names:
        print("compiled extension not built; only the python backend is available")
    print(f"{'workload':<26}" + "".join(f"{n:>12}" for n in names) + "     speedup (python / cython)")
    for label, fn in workloads(args.seed):
        row, outs = [], []
        for name in names:
            t, out = best_of(lambda: fn(name), args.repeat)
            row.append(t)
            outs.append(out)
        agree = all(np.array_equal(np.asarray(o), np.asarray(outs[0])) for o in outs)
        timing = dict(zip(names, row))
        speed = f"{timing['python'] / timing['cython']:10.1f}x" if "cython" in timing else ""
        cells = "".join(f"{t * 1e3:10.2f}ms" for t in row)
        print(f"{label:<26}{cells}{speed}{'' if agree else '  MISMATCH'}")


if __name__ == "__main__":
    main()
