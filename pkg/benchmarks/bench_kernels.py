"""Compiled vs pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--steps N] [--points K] [--repeat R]

Both backends must return identical results; the script checks that before
reporting timings.
"""

import argparse
import time

import numpy as np

from wreathwalk import _pykernel
from wreathwalk.walk import StepDistribution, _program, make_rng
from wreathwalk.wreath import default_group

try:
    from wreathwalk import _ckernel
except ImportError:  # extension not built
    _ckernel = None


def best_of(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_walk(module, prog, atoms, repeat):
    lamp = prog.group.lamp

    def go():
        w = module.TreeWalk(prog.group.base.rank, lamp.mul_table, lamp.identity, prog.lamp_cost)
        nodes = w.run(prog.ops, prog.offsets, atoms)
        return nodes[-1], w.word(w.cursor), w.word_length(), w.max_deviation(nodes[::16])

    return best_of(go, repeat)


def bench_held_karp(module, dist, repeat):
    return best_of(lambda: module.held_karp(dist), repeat)


def tsp_matrix(k, seed):
    # distances of random points in a tree: a metric with many ties
    from wreathwalk.base import FreeGroup
    F = FreeGroup(2)
    rng = make_rng(seed)
    nodes = [F.random_word(rng, int(rng.integers(0, 7))) for _ in range(k + 2)]
    return np.array([[F.distance(u, v) for v in nodes] for u in nodes], dtype=np.int64)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=200_000)
    ap.add_argument("--points", type=int, default=12)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _ckernel is None:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")

    G = default_group()
    mu = StepDistribution.uniform_on_generators(G)
    prog = _program(mu)
    atoms, _ = mu.draw_atoms(make_rng(0), args.steps)
    dist = tsp_matrix(args.points, 1)

    rows = []
    tc, rc = bench_walk(_ckernel, prog, atoms, args.repeat)
    tp, rp = bench_walk(_pykernel, prog, atoms, 1)
    assert rc[0] == rp[0] and rc[1:] == rp[1:], "walk kernels disagree"
    rows.append((f"TreeWalk.run + word_length ({args.steps} steps)", tc, tp))
    tc, rc = bench_held_karp(_ckernel, dist, args.repeat)
    tp, rp = bench_held_karp(_pykernel, dist, 1)
    assert rc == rp, "held_karp disagrees"
    rows.append((f"held_karp ({args.points} points)", tc, tp))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'cython s':>10}  {'python s':>10}  {'speedup':>8}")
    for name, c, p in rows:
        print(f"{name:<{width}}  {c:>10.4f}  {p:>10.4f}  {p / c:>7.1f}x")


if __name__ == "__main__":
    main()
