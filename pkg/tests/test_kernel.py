"""The compiled kernel and its pure-Python twin must agree exactly."""

import numpy as np
import pytest

from wreathwalk import _kernel, _pykernel
from wreathwalk.base import FreeGroup
from wreathwalk.lamps import FiniteLampGroup
from wreathwalk.walk import KernelProgram, StepDistribution
from wreathwalk.wreath import WreathProduct, default_group

ck = pytest.importorskip("wreathwalk._ckernel")


def walkers(group):
    mu = StepDistribution.uniform_on_generators(group)
    prog = KernelProgram(mu)
    lamp = group.lamp
    args = (group.base.rank, lamp.mul_table, lamp.identity, prog.lamp_cost)
    return prog, ck.TreeWalk(*args), _pykernel.TreeWalk(*args)


@pytest.mark.parametrize("spec", [("Z2", "free:2"), ("Z3", "free:3"), ("Z2", "lattice:1")])
def test_walk_parity(spec):
    G = WreathProduct.from_spec(*spec)
    prog, c, p = walkers(G)
    rng = np.random.default_rng(1)
    for trial in range(10):
        c.reset()
        p.reset()
        atoms = rng.integers(0, len(prog.offsets) - 1, size=300)
        pc = c.run(prog.ops, prog.offsets, atoms[:150])
        pp = p.run(prog.ops, prog.offsets, atoms[:150])
        assert np.array_equal(pc, pp)
        assert c.word_length() == p.word_length()
        sc, sp = c.snapshot(), p.snapshot()
        c.run(prog.ops, prog.offsets, atoms[150:])
        p.run(prog.ops, prog.offsets, atoms[150:])
        assert c.distance_from(sc) == p.distance_from(sp)
        assert c.word_length() == p.word_length()
        assert sorted(c.lamps()) == sorted(p.lamps())
        path = np.concatenate([[0], pc])
        assert c.max_deviation(path) == p.max_deviation(path)
        assert c.progress_violations(path, 3.0, 5) == p.progress_violations(path, 3.0, 5)


def test_tail_steps_parity():
    G = default_group()
    prog, c, p = walkers(G)
    atoms = np.array([0, 1, 2, 3, 4, 2, 2, 0], dtype=np.int64)
    ptr = np.array([0, 3, 3, 8], dtype=np.int64)
    assert np.array_equal(c.run(prog.ops, prog.offsets, atoms, ptr), p.run(prog.ops, prog.offsets, atoms, ptr))
    assert c.word_length() == p.word_length()


def test_trie_words_and_tsp():
    G = default_group()
    _, c, p = walkers(G)
    for k in (c, p):
        u = k.node_of([1, 2, -1])
        v = k.node_of([1, 2, 2])
        assert k.word(u) == (1, 2, -1)
        assert k.distance(u, v) == 2
        assert k.lca(u, v) == k.node_of([1, 2])
        assert k.tsp(0, [k.node_of([2]), k.node_of([1, 2])], k.node_of([1])) == 5


def test_held_karp_parity():
    rng = np.random.default_rng(2)
    F2 = FreeGroup(2)
    for k in range(0, 10):
        pts = [F2.random_word(rng, int(rng.integers(0, 6))) for _ in range(k + 2)]
        d = np.array([[F2.distance(x, y) for y in pts] for x in pts])
        assert ck.held_karp(d) == _pykernel.held_karp(d)


def test_held_karp_limits():
    with pytest.raises(ValueError):
        ck.held_karp(np.zeros((1, 1)))
    with pytest.raises(ValueError):
        ck.held_karp(np.zeros((27, 27)))


def test_backend_selection():
    assert _kernel.BACKEND in ("cython", "python")
    assert _kernel.LAMP_OP == _pykernel.LAMP_OP == 1 << 24


def test_pure_python_forced(monkeypatch):
    import importlib

    monkeypatch.setenv("WREATHWALK_PURE", "1")
    mod = importlib.reload(_kernel)
    try:
        assert mod.BACKEND == "python"
        assert mod.TreeWalk is _pykernel.TreeWalk
    finally:
        monkeypatch.delenv("WREATHWALK_PURE")
        importlib.reload(_kernel)


def test_z3_kernel_lamp_values():
    G = WreathProduct(FiniteLampGroup.cyclic(3), FreeGroup(2))
    prog, c, _ = walkers(G)
    gens = G.generators()
    atoms = np.array([0, 0, 2], dtype=np.int64)  # lamp +1 twice then move a
    c.run(prog.ops, prog.offsets, atoms)
    assert prog.element(c) == G.product(gens[i] for i in atoms)


def test_benchmark_script_runs(capsys):
    pytest.importorskip("wreathwalk._ckernel")
    import importlib.util
    import pathlib
    path = pathlib.Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    bench.main(["--steps", "2000", "--points", "6", "--repeat", "1"])
    assert "held_karp" in capsys.readouterr().out
