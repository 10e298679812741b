"""Exit criteria at full scale.

Every criterion is a CLI run (or, for the solver sweep, an equivalent
threaded driver) writing CSV files under a temp directory.  Runs are cached
so the determinism criterion can repeat each one with another thread count
and compare bytes.  Each test appends one ``CRITERION k: PASS|FAIL ...`` line
to the session summary.
"""

import csv
import io
import json
import re
import time
from collections import Counter

import numpy as np
import pytest

from oracles import lamplighter_ball, projected_depth_mean, range_functional, sample_skewness
from wreathwalk import tsp
from wreathwalk.base import FreeGroup
from wreathwalk.cli import run_command
from wreathwalk.output import render_csv
from wreathwalk.walk import make_rng, ordered_map

pytestmark = pytest.mark.acceptance

CLT_SEED = 12345
RERUN_THREADS = 4


def read_csv(path):
    lines = [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def record(verdicts, k, ok, detail):
    verdicts.append(f"CRITERION {k}: {'PASS' if ok else 'FAIL'} {detail}")


# -- solver sweep driver (no single CLI command covers 11000 instances) ---------

F2 = FreeGroup(2)


def solver_row(seed: int, lo: int, hi: int, with_brute: bool):
    rng = make_rng(seed)
    k = int(rng.integers(lo, hi + 1))
    pts = set()
    while len(pts) < k:
        pts.add(F2.random_word(rng, int(rng.integers(1, 7))))
    inst = tsp.TspInstance(F2, F2.random_word(rng, int(rng.integers(0, 5))), pts,
                           F2.random_word(rng, int(rng.integers(0, 5))))
    tree = tsp.solve_tree(inst).value
    dp = tsp.solve_dp(inst).value
    brute = tsp.brute_force(inst).value if with_brute else ""
    ok = tree == dp and (not with_brute or dp == brute)
    return seed, k, tree, dp, brute, int(ok)


def solver_sweep(out_dir, threads):
    small = ordered_map(lambda i: solver_row(20_000 + i, 0, 9, True), range(10_000), threads)
    large = ordered_map(lambda i: solver_row(40_000 + i, 10, 18, False), range(1_000), threads)
    path = out_dir / "solver_sweep.csv"
    prov = {"tool": "solver-sweep", "config_hash": "-", "seed": 20_000}
    path.write_text(render_csv(("seed", "points", "tree", "dp", "brute", "agree"), small + large, prov))
    return {"csv": [path]}


# -- CLI runs --------------------------------------------------------------------

def cli(argv, capsys):
    code = run_command([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def geometric(lo, hi):
    return ",".join(str(2 ** e) for e in range(lo, hi + 1))


RUNS = {
    "bfs": lambda d, t, cs: dict(zip(("code", "out", "err"), cli(
        ["bfs-oracle", "--radius", 5, "--seed", 0, "--threads", t, "--output", d / "bfs.csv"], cs)),
        csv=[d / "bfs.csv"]),
    "solvers": lambda d, t, cs: solver_sweep(d, t),
    "lemma": lambda d, t, cs: dict(zip(("code", "out", "err"), cli(
        ["verify-lemma", "--instances", 10_000, "--D", "1,2,3", "--axis-max", 200, "--max-points", 12,
         "--claim-pairs", 4, "--seed", 1, "--threads", t, "--output", d / "lemma.csv"], cs)),
        csv=[d / "lemma.csv"]),
    "defect_bounds": lambda d, t, cs: dict(zip(("code", "out", "err"), cli(
        ["defect-table", "--grid", geometric(3, 10), "--samples", 12_500, "--p", "1,2", "--seed", 2,
         "--threads", t, "--output", d / "bounds_fit.csv", "--records", d / "bounds.csv"], cs)),
        csv=[d / "bounds_fit.csv", d / "bounds.csv"]),
    "drift": lambda d, t, cs: dict(zip(("code", "out", "err"), cli(
        ["simulate", "--grid", "5000,10000", "--samples", 1000, "--seed", 3, "--threads", t,
         "--output", d / "drift.csv", "--report", d / "drift.json"], cs)),
        csv=[d / "drift.csv"]),
    "defect_growth": lambda d, t, cs: dict(zip(("code", "out", "err"), cli(
        ["defect-table", "--grid", geometric(6, 12), "--samples", 2000, "--p", 2, "--seed", 4,
         "--threads", t, "--output", d / "growth.csv"], cs)),
        csv=[d / "growth.csv"]),
    "tracking": lambda d, t, cs: dict(zip(("code", "out", "err"), cli(
        ["tracking", "--grid", geometric(7, 13), "--samples", 500, "--seed", 5, "--threads", t,
         "--output", d / "tracking.csv", "--report", d / "tracking.json"], cs)),
        csv=[d / "tracking.csv"]),
    "clt": lambda d, t, cs: dict(zip(("code", "out", "err"), cli(
        ["clt-test", "--n", 2000, "--samples", 5000, "--seed", CLT_SEED, "--threads", t, "--format", "json",
         "--output", d / "clt.json", "--records", d / "clt.csv"], cs)),
        csv=[d / "clt.csv"]),
    "control": lambda d, t, cs: dict(zip(("code", "out", "err"), cli(
        ["clt-test", "--base", "lattice:1", "--n", 4000, "--samples", 5000, "--seed", CLT_SEED,
         "--threads", t, "--format", "json", "--output", d / "control.json", "--records", d / "control.csv"], cs)),
        csv=[d / "control.csv"]),
}


class RunCache:
    def __init__(self, factory):
        self.factory = factory
        self.done = {}

    def get(self, name, capsys, threads=1):
        key = (name, threads)
        if key not in self.done:
            out_dir = self.factory.mktemp(f"{name}_t{threads}")
            t0 = time.perf_counter()
            res = RUNS[name](out_dir, threads, capsys)
            res["elapsed"] = time.perf_counter() - t0
            res["dir"] = out_dir
            self.done[key] = res
        return self.done[key]


@pytest.fixture(scope="module")
def runs(tmp_path_factory):
    return RunCache(tmp_path_factory)


# -- criteria --------------------------------------------------------------------

def test_criterion_01_bfs_ball(runs, verdicts, capsys):
    res = runs.get("bfs", capsys)
    rows = read_csv(res["csv"][0])
    agree = sum(r["bfs_distance"] == r["word_length"] for r in rows)
    oracle = Counter(lamplighter_ball(5).values())
    ours = Counter(int(r["bfs_distance"]) for r in rows)
    ok = res["code"] == 0 and agree == len(rows) == 1670 and ours == oracle and res["elapsed"] < 60
    record(verdicts, 1, ok, f"{agree}/{len(rows)} agree, sphere sizes match string BFS: {ours == oracle}, "
                            f"{res['elapsed']:.1f}s")
    assert ok


def test_criterion_02_solver_equivalence(runs, verdicts, capsys):
    res = runs.get("solvers", capsys)
    rows = read_csv(res["csv"][0])
    small = [r for r in rows if int(r["points"]) <= 9]
    large = [r for r in rows if int(r["points"]) >= 10]
    bad = sum(r["agree"] != "1" for r in rows)
    ok = len(small) == 10_000 and len(large) == 1_000 and bad == 0 and res["elapsed"] < 300
    record(verdicts, 2, ok, f"{len(small)} instances |L|<=9 tree=dp=brute, {len(large)} with 10..18 tree=dp, "
                            f"{bad} disagreements, {res['elapsed']:.1f}s")
    assert ok


def test_criterion_03_lemma_sandwich(runs, verdicts, capsys):
    res = runs.get("lemma", capsys)
    rows = read_csv(res["csv"][0])
    m = re.search(r"(\d+) instances, (\d+) failures, (\d+) claim violations", res["err"])
    claim_bad = int(m.group(3))
    checks = 10_000 * 4 * 3
    bounds_ok = all(0 <= int(r["defect"]) <= int(r["bound"]) for r in rows)
    passed = sum(r["verdict"] == "pass" for r in rows)
    Ds = Counter(r["D"] for r in rows)
    ok = (res["code"] == 0 and len(rows) == 10_000 and passed == len(rows) and bounds_ok
          and claim_bad == 0 and set(Ds) == {"1", "2", "3"} and res["elapsed"] < 600)
    record(verdicts, 3, ok, f"{passed}/{len(rows)} sandwich+surgery pass, {claim_bad}/{checks} claim violations, "
                            f"{res['elapsed']:.1f}s")
    assert ok


def test_criterion_04_defect_bounds(runs, verdicts, capsys):
    res = runs.get("defect_bounds", capsys)
    rows = read_csv(res["csv"][1])
    bad = 0
    for r in rows:
        psi, qm, shift = int(r["psi"]), int(r["q_m"]), int(r["shift"])
        bad += not (0 <= psi <= 2 * min(qm, shift))
    ok = res["code"] == 0 and len(rows) >= 100_000 and bad == 0
    record(verdicts, 4, ok, f"{len(rows) - bad}/{len(rows)} samples within [0, 2 min(Q_m, shift)], "
                            f"{res['elapsed']:.1f}s")
    assert ok


def test_criterion_05_projected_drift(runs, verdicts, capsys):
    res = runs.get("drift", capsys)
    rows = [r for r in read_csv(res["csv"][0]) if r["n"] == "10000"]
    speed = float(np.mean([int(r["base_distance"]) for r in rows])) / 10_000
    exact = projected_depth_mean(10_000) / 10_000
    ok = res["code"] == 0 and len(rows) == 1000 and abs(speed - 0.4) <= 0.02 and res["elapsed"] < 120
    record(verdicts, 5, ok, f"speed {speed:.5f} (target 0.4 +- 0.02, birth-death E|Zbar_n|/n = {exact:.5f}), "
                            f"{res['elapsed']:.1f}s")
    assert abs(exact - 0.4) < 0.001
    assert ok


def test_criterion_06_defect_growth(runs, verdicts, capsys):
    res = runs.get("defect_growth", capsys)
    rows = read_csv(res["csv"][0])
    ns = [int(r["n"]) for r in rows]
    moments = [float(r["moment"]) for r in rows]
    exponent = float(rows[0]["fit_exponent"])
    ratios = [mo / n for n, mo in zip(ns, moments)]
    decreasing = all(a > b for a, b in zip(ratios, ratios[1:]))
    ok = res["code"] == 0 and ns == [2 ** e for e in range(6, 13)] and exponent < 0.2 and decreasing \
        and res["elapsed"] < 1800
    record(verdicts, 6, ok, f"exponent {exponent:.4f} (< 0.2), E|Psi|^2/n strictly decreasing: {decreasing} "
                            f"({ratios[0]:.4f} -> {ratios[-1]:.6f}), {res['elapsed']:.1f}s")
    assert ok


def test_criterion_07_tracking(runs, verdicts, capsys):
    res = runs.get("tracking", capsys)
    rows = read_csv(res["csv"][0])
    ns = [2 ** e for e in range(7, 14)]
    med = [float(np.median([int(r["max_deviation"]) for r in rows if int(r["n"]) == n])) for n in ns]
    counts = Counter(int(r["n"]) for r in rows)
    exponent = float(np.polyfit(np.log(ns), np.log(med), 1)[0])
    slope = float(np.polyfit(np.log(ns), med, 1)[0])
    report = json.loads((res["dir"] / "tracking.json").read_text())
    ok = (res["code"] == 0 and all(counts[n] == 500 for n in ns) and exponent < 0.25 and slope > 0
          and res["elapsed"] < 1200)
    record(verdicts, 7, ok, f"medians {med}, log-log exponent {exponent:.4f} (< 0.25), slope vs log n "
                            f"{slope:.3f} (> 0), {res['elapsed']:.1f}s")
    assert abs(report["loglog_exponent"] - exponent) < 1e-9
    assert ok


def test_criterion_08_clt(runs, verdicts, capsys):
    res = runs.get("clt", capsys)
    rep = json.loads((res["dir"] / "clt.json").read_text())["report"]
    ok = (res["code"] == 0 and rep["samples"] == 5000 and abs(rep["skewness"]) < 0.1
          and abs(rep["excess_kurtosis"]) < 0.25 and not rep["rejected"] and res["elapsed"] < 2700)
    record(verdicts, 8, ok, f"skew {rep['skewness']:.4f}, excess kurtosis {rep['excess_kurtosis']:.4f}, "
                            f"KS p {rep['ks_pvalue_smoothed']:.4f} on the span-{rep['lattice_span']} smoothed sample "
                            f"(raw {rep['ks_pvalue']:.4f}), ell {rep['ell']:.5f}, sigma {rep['sigma']:.5f}, "
                            f"{res['elapsed']:.1f}s")
    assert ok


def test_criterion_09_negative_control(runs, verdicts, capsys):
    # oracle first: the limiting range functional is right-skewed for every ratio of constants
    oracle = {r: sample_skewness(range_functional(1.0, r, samples=20_000, steps=1000, seed=7))
              for r in (0.25, 0.5, 1.0, 2.0, 4.0)}
    assert min(oracle.values()) > 0
    res = runs.get("control", capsys)
    rep = json.loads((res["dir"] / "control.json").read_text())["report"]
    ok = res["code"] == 0 and rep["skewness"] > 0.2
    record(verdicts, 9, ok, f"skew {rep['skewness']:.4f} (> 0.2), oracle skew range "
                            f"{min(oracle.values()):.3f}..{max(oracle.values()):.3f}, KS rejected: {rep['rejected']}, "
                            f"{res['elapsed']:.1f}s")
    assert ok


def test_criterion_10_determinism(runs, verdicts, capsys):
    same, total = 0, 0
    differing = []
    for name in RUNS:
        a = runs.get(name, capsys, threads=1)
        b = runs.get(name, capsys, threads=RERUN_THREADS)
        for pa, pb in zip(a["csv"], b["csv"]):
            total += 1
            if pa.read_bytes() == pb.read_bytes():
                same += 1
            else:
                differing.append(pa.name)
    ok = same == total
    record(verdicts, 10, ok, f"{same}/{total} CSV outputs byte-identical at threads 1 vs {RERUN_THREADS}"
                             + (f", differing: {differing}" if differing else ""))
    assert ok
