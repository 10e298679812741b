"""Command-line entry point: ``wreathwalk <command> [options]``.

Configuration is layered: built-in defaults, then ``--config FILE`` (JSON),
then explicit flags.  The merged config is validated before any work starts.

Exit status: 0 success, 1 internal or verification failure, 2 invalid
configuration, 3 resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__, lemma, stats, tsp
from ._kernel import BACKEND
from .errors import ConfigError, InsufficientSamplesError, ResourceGuardError
from .output import config_hash, emit, render_csv, render_json
from .walk import JobSpec, batch, make_rng, measure_from_spec, ordered_map
from .wreath import BALL_GUARD, WreathProduct

THREADS_ENV = "WREATHWALK_THREADS"
# the estimation batch is this many times the test batch; plug-in noise in
# (ell, sigma) otherwise inflates the KS rejection rate well above alpha
ESTIMATE_FACTOR = 10

COMMON = {
    "lamp": "Z2",
    "base": "free:2",
    "measure": "uniform",
    "seed": 0,
    "engine": "auto",
    "format": None,
    "output": None,
    "threads": None,
}

DEFAULTS = {
    "length": {"lamps": "", "position": "", "approximate": False, "cap": tsp.DP_CAP},
    "tsp": {"start": "", "points": "", "end": "", "solver": "auto", "cap": tsp.DP_CAP},
    "bfs-oracle": {"radius": 5, "guard": BALL_GUARD},
    "simulate": {"grid": [1000, 2000, 4000], "samples": 200, "report": None},
    "defect-table": {"grid": [64, 128, 256, 512, 1024], "samples": 200, "p": [1, 2], "records": None},
    "clt-test": {"n": 2000, "samples": 1000, "estimate_samples": None, "alpha": 0.01, "records": None},
    "tracking": {"grid": [128, 256, 512, 1024], "samples": 100, "k0": 10.0, "window": None,
                 "progress": True, "slow_factor": 10.0, "report": None},
    "verify-lemma": {"instances": 100, "D": [1, 2, 3], "axis_max": 200, "max_points": 12, "claim_pairs": 10},
}

FORMATS = {
    "length": ("text", "json"), "tsp": ("text", "json"), "bfs-oracle": ("csv", "json"),
    "simulate": ("csv", "json"), "defect-table": ("csv", "json"), "clt-test": ("text", "json"),
    "tracking": ("csv", "json"), "verify-lemma": ("csv", "json"),
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _list(text: str) -> list:
    return [t for t in (s.strip() for s in text.split(",")) if t]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wreathwalk", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"wreathwalk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    S = argparse.SUPPRESS

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text, argument_default=S)
        p.add_argument("--config", help="JSON config file; flags override its keys")
        p.add_argument("--threads", type=int, help=f"worker threads (default ${THREADS_ENV} or 1)")
        p.add_argument("--dry-run", action="store_true", help="validate and print the plan only")
        p.add_argument("--output", "-o", help="primary output path (default stdout)")
        p.add_argument("--format", help="output format")
        p.add_argument("--seed", type=int)
        p.add_argument("--lamp", help='lamp group: "Z2", "Z<n>", "Zd:<k>" or a JSON table file')
        p.add_argument("--base", help='base group: "free:<k>" or "lattice:<d>"')
        p.add_argument("--measure", type=_measure_arg, help='"uniform" or a JSON object')
        p.add_argument("--engine", help="auto | kernel | reference")
        return p

    p = command("length", "word length of one element")
    p.add_argument("--lamps", help='lamp configuration, e.g. "b=1,ab=1"')
    p.add_argument("--position", help='lamplighter position, e.g. "a"')
    p.add_argument("--approximate", action="store_true")
    p.add_argument("--cap", type=int)

    p = command("tsp", "fixed-endpoint TSP in the base group")
    p.add_argument("--start")
    p.add_argument("--points", help='comma-separated words, e.g. "b,ab"')
    p.add_argument("--end")
    p.add_argument("--solver", help="auto | tree | dp | brute")
    p.add_argument("--cap", type=int)

    p = command("bfs-oracle", "check word lengths against BFS on a ball")
    p.add_argument("--radius", type=int)
    p.add_argument("--guard", type=int)

    p = command("simulate", "sample the length cocycle along trajectories")
    p.add_argument("--grid", type=_list, help="comma-separated horizons")
    p.add_argument("--samples", type=int)
    p.add_argument("--report", help="JSON drift report path")

    p = command("defect-table", "moments of the cocycle defect on a grid")
    p.add_argument("--grid", type=_list, help="comma-separated n (pairs (n, n))")
    p.add_argument("--samples", type=int)
    p.add_argument("--p", type=_list, help="comma-separated moment orders")
    p.add_argument("--records", help="CSV path for the raw defect samples")

    p = command("clt-test", "normality of the standardized word length")
    p.add_argument("--n", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--estimate-samples", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--records", help="CSV path for the test-batch samples")

    p = command("tracking", "geodesic tracking of the base projection")
    p.add_argument("--grid", type=_list, help="comma-separated horizons")
    p.add_argument("--samples", type=int)
    p.add_argument("--k0", type=float)
    p.add_argument("--window", type=int)
    p.add_argument("--no-progress", dest="progress", action="store_false")
    p.add_argument("--slow-factor", type=float)
    p.add_argument("--report", help="JSON summary path")

    p = command("verify-lemma", "randomized check of the TSP defect bound")
    p.add_argument("--instances", type=int)
    p.add_argument("--D", type=_list, help="comma-separated neighbourhood sizes")
    p.add_argument("--axis-max", type=int)
    p.add_argument("--max-points", type=int)
    p.add_argument("--claim-pairs", type=int)
    return parser


def _measure_arg(text: str):
    text = text.strip()
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise argparse.ArgumentTypeError(f"invalid JSON: {exc}") from None
    return text


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


def resolve_config(command: str, flags: dict) -> dict:
    cfg = {**COMMON, **DEFAULTS[command]}
    path = flags.pop("config", None)
    if path is not None:
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("config", f"cannot read {path}: {exc}") from None
        if not isinstance(doc, dict):
            raise ConfigError("config", "config file must hold a JSON object")
        group = doc.pop("group", None)
        if group is not None:
            if not isinstance(group, dict):
                raise ConfigError("group", "group must be an object with lamp and base")
            doc = {**{k: group[k] for k in ("lamp", "base") if k in group}, **doc}
        doc.pop("kind", None)
        for key in doc:
            if key not in cfg:
                raise ConfigError(key, f"unknown key for {command}")
        cfg.update(doc)
    cfg.update(flags)
    if cfg["threads"] is None:
        env = os.environ.get(THREADS_ENV)
        cfg["threads"] = env if env is not None else 1
    cfg["threads"] = _int(cfg, "threads", 1)
    fmt = cfg["format"] or FORMATS[command][0]
    if fmt not in FORMATS[command]:
        raise ConfigError("format", f"{command} supports {', '.join(FORMATS[command])}")
    cfg["format"] = fmt
    return cfg


def _int(cfg, key, lo=None):
    v = cfg[key]
    if isinstance(v, str):
        try:
            v = int(v)
        except ValueError:
            raise ConfigError(key, f"expected an integer, got {v!r}") from None
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(key, f"expected an integer, got {v!r}")
    if lo is not None and v < lo:
        raise ConfigError(key, f"must be at least {lo}, got {v}")
    return v


def _float(cfg, key, lo=None, hi=None):
    try:
        v = float(cfg[key])
    except (TypeError, ValueError):
        raise ConfigError(key, f"expected a number, got {cfg[key]!r}") from None
    if not math.isfinite(v) or (lo is not None and v <= lo) or (hi is not None and v >= hi):
        raise ConfigError(key, f"value {v} out of range")
    return v


def _int_list(cfg, key, lo=None):
    v = cfg[key]
    if not isinstance(v, (list, tuple)) or not v:
        raise ConfigError(key, "expected a non-empty list")
    return [_int({key: x}, key, lo) for x in v]


def _group(cfg) -> WreathProduct:
    from .base import parse_base
    from .lamps import parse_lamp_group

    try:
        lamp = parse_lamp_group(str(cfg["lamp"]))
    except (ValueError, OSError, KeyError, TypeError) as exc:
        raise ConfigError("lamp", str(exc)) from None
    try:
        base = parse_base(str(cfg["base"]))
    except (ValueError, TypeError) as exc:
        raise ConfigError("base", str(exc)) from None
    return WreathProduct(lamp, base)


def _parse_element(G, cfg, lamps_key, pos_key):
    try:
        return G.parse(str(cfg[lamps_key]), str(cfg[pos_key]))
    except (ValueError, KeyError) as exc:
        key = lamps_key if "=" in str(exc) or "lamp" in str(exc) else pos_key
        raise ConfigError(key, str(exc)) from None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


class Context:
    def __init__(self, command, cfg):
        self.command = command
        self.cfg = cfg
        self.hash = config_hash({"command": command, **cfg})
        self.provenance = {"tool": f"wreathwalk-{__version__}", "config_hash": self.hash, "seed": cfg["seed"]}

    def meta(self, **extra):
        return {**self.provenance, "command": self.command, "config": self.cfg,
                "threads": self.cfg["threads"], "backend": BACKEND, **extra}

    def write_csv(self, columns, rows, path):
        emit(render_csv(columns, rows, self.provenance), path, self.meta())

    def write_json(self, payload, path):
        emit(render_json(payload, self.provenance), path, self.meta())

    def dry_run(self, plan: dict) -> int:
        doc = {"command": self.command, "config": self.cfg, "config_hash": self.hash, "plan": plan}
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n")
        return 0


def cmd_length(ctx: Context) -> int:
    cfg = ctx.cfg
    G = _group(cfg)
    g = _parse_element(G, cfg, "lamps", "position")
    cap = _int(cfg, "cap", 0)
    if cfg["dry_run"]:
        return ctx.dry_run({"support": len(g.lamps)})
    value = G.word_length(g, approximate=bool(cfg["approximate"]), cap=cap)
    if cfg["format"] == "json":
        ctx.write_json({"length": value}, cfg["output"])
    else:
        emit(f"{value}\n", cfg["output"])
    return 0


def cmd_tsp(ctx: Context) -> int:
    cfg = ctx.cfg
    G = _group(cfg)
    base = G.base
    try:
        start = base.parse(str(cfg["start"]))
        end = base.parse(str(cfg["end"]))
        points = [base.parse(w) for w in (cfg["points"] if isinstance(cfg["points"], list) else _list(str(cfg["points"])))]
    except ValueError as exc:
        raise ConfigError("points", str(exc)) from None
    solver = cfg["solver"]
    solvers = {"auto": None, "tree": tsp.solve_tree, "dp": tsp.solve_dp, "brute": tsp.brute_force}
    if solver not in solvers:
        raise ConfigError("solver", f"solver must be one of {', '.join(solvers)}")
    if solver == "tree" and not base.is_tree:
        raise ConfigError("solver", "tree solver needs a tree-shaped base")
    cap = _int(cfg, "cap", 0)
    inst = tsp.TspInstance(base, start, points, end)
    if cfg["dry_run"]:
        return ctx.dry_run({"points": len(inst.points), "solver": solver})
    if solver == "auto":
        sol = tsp.solve(inst, cap=cap)
    elif solver == "dp":
        sol = tsp.solve_dp(inst, cap)
    else:
        sol = solvers[solver](inst)
    order = [base.format(x) for x in sol.order]
    if cfg["format"] == "json":
        ctx.write_json({"value": sol.value, "order": order, "solver": sol.solver, "exact": sol.exact}, cfg["output"])
    else:
        emit(f"{sol.value}\norder={','.join(order)}\n", cfg["output"])
    return 0


def cmd_bfs_oracle(ctx: Context) -> int:
    cfg = ctx.cfg
    G = _group(cfg)
    radius = _int(cfg, "radius", 0)
    guard = _int(cfg, "guard", 1)
    if cfg["dry_run"]:
        return ctx.dry_run({"radius": radius, "guard": guard})
    ball = G.bfs_oracle(radius, guard)
    rows = []
    for g, dist in ball.values():
        lamps, pos = G.format(g)
        rows.append((dist, lamps, pos, G.word_length(g)))
    rows.sort()
    bad = sum(1 for d, _, _, w in rows if d != w)
    if cfg["format"] == "json":
        ctx.write_json({"radius": radius, "elements": len(rows), "mismatches": bad}, cfg["output"])
    else:
        ctx.write_csv(("bfs_distance", "lamps", "position", "word_length"), rows, cfg["output"])
    print(f"ball radius {radius}: {len(rows)} elements, {bad} mismatches", file=sys.stderr)
    return 1 if bad else 0


def _measure(cfg, G):
    return measure_from_spec(G, cfg["measure"])


def _job(cfg, kind, grid, **kw) -> JobSpec:
    return JobSpec(kind, tuple(grid), cfg["samples"], cfg["seed"], cfg["engine"], **kw)


def cmd_simulate(ctx: Context) -> int:
    cfg = ctx.cfg
    G = _group(cfg)
    mu = _measure(cfg, G)
    job = _job(cfg, "cocycle", _int_list(cfg, "grid", 1))
    if cfg["dry_run"]:
        return ctx.dry_run({"trajectories": job.samples, "steps_each": max(job.grid)})
    records = batch(mu, job, cfg["threads"])
    payload = _cocycle_summary(records)
    if cfg["format"] == "json":
        ctx.write_json(payload, cfg["output"])
    else:
        ctx.write_csv(records[0].columns(), (r.row() for r in records), cfg["output"])
    if cfg["report"]:
        ctx.write_json(payload, cfg["report"])
    return 0


def _cocycle_summary(records) -> dict:
    by_n: dict = {}
    for r in records:
        by_n.setdefault(r.n, []).append(r)
    horizons = {}
    for n, rs in sorted(by_n.items()):
        q = stats.accumulate([r.q for r in rs], 2)
        h = stats.accumulate([r.base_distance for r in rs], 2)
        horizons[str(n)] = {"samples": q.count, "mean_q": q.mean, "var_q": q.variance() if q.count > 1 else None,
                            "base_speed": h.mean / n if n else None}
    out = {"horizons": horizons}
    try:
        drift = stats.estimate_drift({n: [r.q for r in rs] for n, rs in by_n.items()})
        out["drift"] = {"ell": drift.ell, "stderr": drift.stderr,
                        "stability": {str(k): v for k, v in drift.stability.items()}}
    except InsufficientSamplesError as exc:
        out["drift"] = {"error": str(exc)}
    return out


def cmd_defect_table(ctx: Context) -> int:
    cfg = ctx.cfg
    G = _group(cfg)
    mu = _measure(cfg, G)
    raw = cfg["grid"]
    if not isinstance(raw, (list, tuple)) or not raw:
        raise ConfigError("grid", "expected a non-empty list")
    if all(isinstance(x, (list, tuple)) for x in raw):
        grid = [tuple(x) for x in raw]
    else:
        grid = [(n, n) for n in _int_list(cfg, "grid", 0)]
    ps = _int_list(cfg, "p", 1)
    job = _job(cfg, "defect", grid)
    if cfg["dry_run"]:
        return ctx.dry_run({"grid": [list(x) for x in job.grid], "samples": job.samples, "p": ps})
    records = batch(mu, job, cfg["threads"])
    fits = stats.defect_moment_table(records, ps)
    if cfg["records"]:
        ctx.write_csv(records[0].columns(), (r.row() for r in records), cfg["records"])
    if cfg["format"] == "json":
        payload = {"fits": [{"p": f.p, "grid": [list(k) for k in f.grid], "moments": list(f.moments),
                             "exponent": f.exponent, "coeff": f.coeff, "residuals": list(f.residuals)}
                            for f in fits.values()]}
        ctx.write_json(payload, cfg["output"])
    else:
        rows = [row for f in fits.values() for row in f.rows()]
        ctx.write_csv(("n", "p", "moment", "fit_exponent", "fit_coeff", "residual"), rows, cfg["output"])
    return 0


def cmd_clt_test(ctx: Context) -> int:
    cfg = ctx.cfg
    G = _group(cfg)
    mu = _measure(cfg, G)
    n = _int(cfg, "n", 2)
    samples = _int(cfg, "samples", 1)
    if samples < 1000:
        raise ConfigError("samples", f"the normality test needs at least 1000 samples, got {samples}")
    est = ESTIMATE_FACTOR * samples if cfg["estimate_samples"] is None else _int(cfg, "estimate_samples", 100)
    alpha = _float(cfg, "alpha", 0.0, 1.0)
    est_job = JobSpec("cocycle", (n // 2, n), est, cfg["seed"], cfg["engine"], stream=0)
    test_job = JobSpec("cocycle", (n,), samples, cfg["seed"], cfg["engine"], stream=1)
    if cfg["dry_run"]:
        return ctx.dry_run({"estimate_trajectories": est, "test_trajectories": samples, "n": n})
    report, z, test = run_clt(mu, est_job, test_job, alpha, cfg["threads"])
    if cfg["records"]:
        rows = ((r.sample, r.n, r.q, float(v)) for r, v in zip(test, z))
        ctx.write_csv(("sample", "n", "q", "z"), rows, cfg["records"])
    if cfg["format"] == "json":
        ctx.write_json({"report": report.as_dict()}, cfg["output"])
    else:
        verdict = "rejected" if report.rejected else "not rejected"
        emit(report.text() + f"\nKS at alpha={alpha}: {verdict}\n", cfg["output"])
    return 0


def run_clt(mu, est_job: JobSpec, test_job: JobSpec, alpha: float = 0.01, threads: int = 1):
    """Estimate ``(ell, sigma)`` on one batch, standardize an independent one.

    Lattice smoothing draws from stream ``(seed, test_job.stream + 1, 0)``.
    """
    n = max(test_job.grid)
    est = batch(mu, est_job, threads)
    q_est = {k: [r.q for r in est if r.n == k] for k in est_job.grid}
    drift = stats.estimate_drift(q_est)
    sigma = stats.estimate_sigma(q_est[n], n)
    test = batch(mu, test_job, threads)
    q = [r.q for r in test]
    jitter = make_rng((test_job.seed, test_job.stream + 1, 0))
    report = stats.clt_report(q, n, drift.ell, sigma, jitter_rng=jitter, alpha=alpha)
    return report, stats.standardize(q, n, drift.ell, sigma), test


def cmd_tracking(ctx: Context) -> int:
    cfg = ctx.cfg
    G = _group(cfg)
    mu = _measure(cfg, G)
    k0 = _float(cfg, "k0", 0.0)
    window = None if cfg["window"] is None else _int(cfg, "window", 1)
    slow = _float(cfg, "slow_factor", 0.0)
    job = _job(cfg, "tracking", _int_list(cfg, "grid", 1), k0=k0, window=window, progress=bool(cfg["progress"]))
    if cfg["dry_run"]:
        return ctx.dry_run({"grid": list(job.grid), "samples": job.samples, "k0": k0, "window": window})
    records = batch(mu, job, cfg["threads"])
    summary = tracking_summary(records, slow)
    if cfg["format"] == "json":
        ctx.write_json(summary, cfg["output"])
    else:
        ctx.write_csv(records[0].columns(), (r.row() for r in records), cfg["output"])
    if cfg["report"]:
        ctx.write_json(summary, cfg["report"])
    return 0


def tracking_summary(records, slow_factor: float = 10.0) -> dict:
    per = stats.summarize_tracking(records, slow_factor)
    ns = sorted(per)
    med = [per[n].median_deviation for n in ns]
    out = {"horizons": {str(n): vars(per[n]) for n in ns}}
    if len(ns) >= 3 and min(med) > 0:
        out["loglog_exponent"] = stats.loglog_fit(ns, med)[0]
        out["slope_vs_log_n"] = float(np.polyfit(np.log(ns), med, 1)[0])
    return out


def cmd_verify_lemma(ctx: Context) -> int:
    cfg = ctx.cfg
    instances = _int(cfg, "instances", 1)
    Ds = _int_list(cfg, "D", 1)
    axis_max = _int(cfg, "axis_max", 8 * max(Ds))
    max_points = _int(cfg, "max_points", 0)
    pairs = _int(cfg, "claim_pairs", 0)
    seed = _int(cfg, "seed", 0)
    if cfg["dry_run"]:
        return ctx.dry_run({"instances": instances, "D": Ds, "axis_max": axis_max, "max_points": max_points})
    results = ordered_map(lambda i: verify_one(seed + i, Ds, axis_max, max_points, pairs),
                          range(instances), cfg["threads"])
    rows = [row for row, _ in results]
    bad = sum(1 for r in rows if r[-1] != "pass")
    claim_bad = sum(c for _, c in results)
    columns = ("seed", "R", "D", "N", "t1", "t2", "t3", "defect", "bound", "verdict")
    if cfg["format"] == "json":
        ctx.write_json({"instances": instances, "failures": bad, "claim_failures": claim_bad,
                        "rows": [dict(zip(columns, r)) for r in rows]}, cfg["output"])
    else:
        ctx.write_csv(columns, rows, cfg["output"])
    print(f"{instances} instances, {bad} failures, {claim_bad} claim violations", file=sys.stderr)
    return 1 if bad or claim_bad else 0


def verify_one(seed: int, Ds, axis_max: int, max_points: int, claim_pairs: int = 0) -> tuple[tuple, int]:
    """One random certified instance from stream ``seed``: its CSV row and claim-violation count."""
    rng = make_rng(seed)
    D = Ds[int(rng.integers(len(Ds)))]
    axis = int(rng.integers(8 * D, axis_max + 1))
    k = int(rng.integers(0, max_points + 1))
    inst, L3 = lemma.random_instance(rng, D=D, axis_length=axis, n_points=k)
    v = lemma.verify_instance(inst, L3)
    s = v.sandwich
    row = (seed, inst.R, D, inst.N, s.t1, s.t2, s.t3, s.defect, s.bound, "pass" if v.ok else "fail")
    return row, sum(not ok for ok in claim_checks(inst, rng, claim_pairs))


def claim_checks(inst, rng, pairs: int):
    """Leap and step inequalities on random point pairs near gamma."""
    for _ in range(pairs):
        P = lemma.sample_region_point(inst, rng, "I")
        Q = lemma.sample_region_point(inst, rng, "T")
        M = lemma.sample_region_point(inst, rng, "M")
        lhs, rhs = lemma.claim_leap(inst, P, Q)
        yield lhs <= rhs
        for X in (P, Q):
            lhs, rhs = lemma.claim_step(inst, X, M)
            yield lhs <= rhs


COMMANDS = {
    "length": cmd_length, "tsp": cmd_tsp, "bfs-oracle": cmd_bfs_oracle, "simulate": cmd_simulate,
    "defect-table": cmd_defect_table, "clt-test": cmd_clt_test, "tracking": cmd_tracking,
    "verify-lemma": cmd_verify_lemma,
}


def run_command(argv=None) -> int:
    args = build_parser().parse_args(argv)
    flags = vars(args)
    command = flags.pop("command")
    flags.setdefault("dry_run", False)
    try:
        cfg = resolve_config(command, flags)
        cfg["seed"] = _int(cfg, "seed", 0)
        if "samples" in cfg:
            cfg["samples"] = _int(cfg, "samples", 1)
        return COMMANDS[command](Context(command, cfg))
    except ConfigError as exc:
        print(f"wreathwalk: config error: {exc}", file=sys.stderr)
        return 2
    except ResourceGuardError as exc:
        print(f"wreathwalk: resource guard: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # noqa: BLE001 - last-resort exit status
        print(f"wreathwalk: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> None:
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
