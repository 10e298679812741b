"""Random walks on wreath products: steps, trajectories, defects, batches.

Randomness
----------
Every sample owns an independent Philox4x64 stream keyed by
``SeedSequence(entropy=base_seed, spawn_key=(grid_index, sample_index))``.
Streams are counter based, so a sample's draws never depend on which worker
ran it or in what order.

Draw accounting (all draws are ``Generator.random()`` doubles):

* finitely supported measure: exactly one draw per step, mapped to an atom by
  inverse CDF over the fixed atom order;
* geometric-tail measure: ``1 + L`` draws per step, one for the burst length
  ``L`` and one per constituent atom.

Engines
-------
``kernel`` runs the compiled trie walker and needs a finite lamp group on a
tree-shaped base (free group, or the line ``lattice:1``).  ``reference``
multiplies :class:`~wreathwalk.wreath.WreathElement` objects directly and works
for every group.  ``auto`` picks the kernel whenever it applies.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from . import _kernel
from .errors import ConfigError, ResourceGuardError
from .wreath import WreathElement, WreathProduct

PROB_TOL = 1e-12
NODE_GUARD = 20_000_000
ENGINES = ("auto", "kernel", "reference")
KINDS = ("cocycle", "defect", "tracking")


def make_rng(seed) -> np.random.Generator:
    """Philox generator for ``seed`` = int or ``(base, *key)``."""
    if isinstance(seed, (tuple, list)):
        base, key = int(seed[0]), tuple(int(k) for k in seed[1:])
    else:
        base, key = int(seed), ()
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(base, spawn_key=key)))


# ---------------------------------------------------------------------------
# step distributions
# ---------------------------------------------------------------------------


class StepDistribution:
    """A probability measure on the wreath product.

    ``atoms`` is a list of ``(element, probability)``.  With ``tail_q`` set
    the step is instead a product of ``L`` independent atom draws, where
    ``P(L = l) = (1 - q) q^(l - 1)``.  That law has infinite support and
    ``E exp(a |X|) < inf`` whenever ``exp(a * max|atom|) * q < 1``.
    Reversing a product of i.i.d. symmetric factors and inverting each
    factor leaves its law unchanged, so the tail measure is symmetric
    exactly when the atom measure is.
    """

    def __init__(self, group: WreathProduct, atoms, symmetric: bool = False, tail_q: float | None = None):
        atoms = list(atoms)
        if not atoms:
            raise ValueError("a step distribution needs at least one atom")
        probs = np.array([float(p) for _, p in atoms])
        if not np.all(np.isfinite(probs)) or np.any(probs <= 0):
            raise ValueError("atom probabilities must be positive")
        total = math.fsum(probs)
        if abs(total - 1.0) > PROB_TOL:
            raise ValueError(f"atom probabilities sum to {total!r}, not 1")
        if tail_q is not None and not 0.0 < tail_q < 1.0:
            raise ValueError("tail parameter q must lie in (0, 1)")
        self.group = group
        self.atoms = [g for g, _ in atoms]
        self.probs = probs / total
        cdf = np.cumsum(self.probs)
        cdf[-1] = 1.0
        self.cdf = cdf
        self.tail_q = tail_q
        self.symmetric = bool(symmetric)
        if self.symmetric and not self.is_symmetric():
            raise ValueError("distribution declared symmetric but mu(g) != mu(g^-1)")

    def __len__(self):
        return len(self.atoms)

    @classmethod
    def uniform_on_generators(cls, group: WreathProduct, tail_q: float | None = None) -> "StepDistribution":
        gens = group.generators()
        return cls(group, [(g, 1.0 / len(gens)) for g in gens], symmetric=True, tail_q=tail_q)

    @classmethod
    def point_mass(cls, group: WreathProduct, g: WreathElement) -> "StepDistribution":
        return cls(group, [(g, 1.0)], symmetric=group.invert(g) == g)

    def atom_law(self) -> dict:
        law: dict = defaultdict(float)
        for g, p in zip(self.atoms, self.probs):
            law[self.group.key(g)] += p
        return law

    def is_symmetric(self) -> bool:
        law = self.atom_law()
        inv = {self.group.key(self.group.invert(g)) for g in self.atoms}
        if inv != set(law):
            return False
        for g in self.atoms:
            k, ki = self.group.key(g), self.group.key(self.group.invert(g))
            if abs(law[k] - law[ki]) > PROB_TOL:
                return False
        return True

    def atom_lengths(self) -> np.ndarray:
        return np.array([self.group.word_length(g) for g in self.atoms], dtype=np.int64)

    def mean_burst(self) -> float:
        return 1.0 if self.tail_q is None else 1.0 / (1.0 - self.tail_q)

    def alpha_bound(self) -> float:
        """Supremum of ``a`` with ``E exp(a |X|) < inf`` (inf when finitely supported)."""
        if self.tail_q is None:
            return math.inf
        return -math.log(self.tail_q) / max(1, int(self.atom_lengths().max()))

    # -- sampling -------------------------------------------------------------
    def draw_atoms(self, rng: np.random.Generator, n: int):
        """Atom indices for ``n`` steps plus step boundaries (``None`` when one atom per step)."""
        if self.tail_q is None:
            u = rng.random(n)
            return np.searchsorted(self.cdf, u, side="right").astype(np.int64), None
        logq = math.log(self.tail_q)
        atoms: list[int] = []
        ptr = np.empty(n + 1, dtype=np.int64)
        ptr[0] = 0
        cdf = self.cdf
        for k in range(n):
            burst = 1 + int(math.log1p(-rng.random()) / logq)
            atoms.extend(np.searchsorted(cdf, rng.random(burst), side="right").tolist())
            ptr[k + 1] = len(atoms)
        return np.asarray(atoms, dtype=np.int64), ptr

    def step_element(self, atoms, ptr, k: int) -> WreathElement:
        if ptr is None:
            return self.atoms[int(atoms[k])]
        return self.group.product(self.atoms[int(a)] for a in atoms[ptr[k]:ptr[k + 1]])


def sample_step(mu: StepDistribution, rng: np.random.Generator) -> WreathElement:
    """One increment.  Consumes one draw (``1 + L`` draws with a tail)."""
    if mu.tail_q is None:
        return mu.atoms[bisect_right(mu.cdf, rng.random())]
    atoms, ptr = mu.draw_atoms(rng, 1)
    return mu.step_element(atoms, ptr, 0)


def measure_from_spec(group: WreathProduct, spec) -> StepDistribution:
    """Build a measure from ``"uniform"`` or a JSON-style dict.

    Dict forms: ``{"kind": "uniform"}``, ``{"kind": "geometric", "q": 0.3}``
    and ``{"kind": "atoms", "atoms": [{"lamps": "", "position": "a", "p": 0.5}, ...],
    "symmetric": true, "q": null}``.
    """
    if spec is None or spec == "uniform":
        return StepDistribution.uniform_on_generators(group)
    if isinstance(spec, str):
        raise ConfigError("measure", f"unknown measure {spec!r}")
    if not isinstance(spec, dict):
        raise ConfigError("measure", "measure must be a string or an object")
    kind = spec.get("kind", "uniform")
    q = spec.get("q")
    try:
        if kind == "uniform":
            return StepDistribution.uniform_on_generators(group, tail_q=q)
        if kind == "geometric":
            if q is None:
                raise ConfigError("measure.q", "geometric measure needs q")
            return StepDistribution.uniform_on_generators(group, tail_q=float(q))
        if kind == "atoms":
            atoms = [(group.parse(a.get("lamps", ""), a.get("position", "")), a["p"]) for a in spec["atoms"]]
            return StepDistribution(group, atoms, symmetric=bool(spec.get("symmetric", False)), tail_q=q)
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError("measure", str(exc)) from exc
    raise ConfigError("measure.kind", f"unknown measure kind {kind!r}")


# ---------------------------------------------------------------------------
# engines
# ---------------------------------------------------------------------------


def kernel_supported(group: WreathProduct) -> bool:
    return getattr(group.lamp, "finite", False) and group.base.is_tree


class KernelProgram:
    """Atoms compiled to move/lamp op programs for the trie walker."""

    def __init__(self, mu: StepDistribution):
        g = mu.group
        if not kernel_supported(g):
            raise ValueError(f"kernel engine needs finite lamps on a tree base, got {g!r}")
        self.mu = mu
        self.group = g
        lamp, base = g.lamp, g.base
        self.lamp_cost = np.array([lamp.length(a) for a in range(lamp.order)], dtype=np.int64)
        ops: list[int] = []
        offsets = [0]
        moves = []
        for atom in mu.atoms:
            n_moves = 0
            for x in sorted(atom.lamps, key=base.sort_key):
                w = base.as_letters(x)
                ops.extend(w)
                ops.append(_kernel.LAMP_OP + int(atom.lamps[x]))
                ops.extend(-s for s in reversed(w))
                n_moves += 2 * len(w)
            w = base.as_letters(atom.position)
            ops.extend(w)
            offsets.append(len(ops))
            moves.append(n_moves + len(w))
        self.ops = np.array(ops, dtype=np.int64)
        self.offsets = np.array(offsets, dtype=np.int64)
        self.max_moves = max(moves)

    def walker(self):
        lamp = self.group.lamp
        return _kernel.TreeWalk(self.group.base.rank, lamp.mul_table, lamp.identity, self.lamp_cost)

    def guard(self, steps: int, atoms_per_step: float = 1.0) -> None:
        if steps * atoms_per_step * max(1, self.max_moves) > NODE_GUARD:
            raise ResourceGuardError(
                f"{steps} steps may grow the walk trie past {NODE_GUARD} nodes"
            )

    def run(self, walker, atoms, ptr, lo: int, hi: int) -> np.ndarray:
        """Advance steps ``lo..hi-1``; returns the node after each of them."""
        if ptr is None:
            return walker.run(self.ops, self.offsets, atoms[lo:hi])
        seg = ptr[lo:hi + 1]
        return walker.run(self.ops, self.offsets, atoms[seg[0]:seg[-1]], seg - seg[0])

    def element(self, walker) -> WreathElement:
        base = self.group.base
        pos = base.from_letters(walker.word(walker.cursor))
        lamps = {base.from_letters(walker.word(v)): a for v, a in walker.lamps()}
        return self.group.element(lamps, pos)


def resolve_engine(mu: StepDistribution, engine: str) -> str:
    if engine not in ENGINES:
        raise ConfigError("engine", f"engine must be one of {ENGINES}, got {engine!r}")
    if engine == "auto":
        return "kernel" if kernel_supported(mu.group) else "reference"
    if engine == "kernel" and not kernel_supported(mu.group):
        raise ConfigError("engine", "kernel engine needs a finite lamp group on free:k or lattice:1")
    return engine


def _program(mu: StepDistribution) -> KernelProgram:
    prog = getattr(mu, "_program", None)
    if prog is None:
        prog = mu._program = KernelProgram(mu)
    return prog


# ---------------------------------------------------------------------------
# trajectories
# ---------------------------------------------------------------------------


def default_checkpoints(n: int) -> tuple[int, ...]:
    """``0``, the powers of two up to ``n``, and ``n``."""
    pts = {0, n}
    k = 1
    while k <= n:
        pts.add(k)
        k *= 2
    return tuple(sorted(pts))


@dataclass
class Trajectory:
    seed: object
    n: int
    atoms: np.ndarray
    step_ptr: np.ndarray | None
    checkpoints: tuple
    cocycle: dict = field(default_factory=dict)
    base_distance: dict = field(default_factory=dict)
    positions: dict = field(default_factory=dict)

    def increments(self, mu: StepDistribution) -> list[WreathElement]:
        return [mu.step_element(self.atoms, self.step_ptr, k) for k in range(self.n)]


def run_trajectory(mu: StepDistribution, n: int, seed, checkpoints=None, engine: str = "auto",
                   keep_positions: bool = True) -> Trajectory:
    """Walk ``n`` steps; record ``Q_k = |Z_k|`` at each checkpoint (``Q_0 = 0``)."""
    if n < 0:
        raise ValueError("horizon must be non-negative")
    pts = default_checkpoints(n) if checkpoints is None else tuple(sorted(set(int(k) for k in checkpoints)))
    if pts and (pts[0] < 0 or pts[-1] > n):
        raise ValueError(f"checkpoints must lie in [0, {n}]")
    engine = resolve_engine(mu, engine)
    atoms, ptr = mu.draw_atoms(make_rng(seed), n)
    traj = Trajectory(seed, n, atoms, ptr, pts)
    G = mu.group
    if engine == "kernel":
        prog = _program(mu)
        prog.guard(n, len(atoms) / max(n, 1))
        w = prog.walker()
        done = 0
        for k in pts:
            prog.run(w, atoms, ptr, done, k)
            done = k
            traj.cocycle[k] = int(w.word_length())
            traj.base_distance[k] = int(w.node_depth(w.cursor))
            if keep_positions:
                traj.positions[k] = prog.element(w)
        return traj
    z = G.identity()
    wanted = set(pts)
    for k in range(n + 1):
        if k:
            z = G.multiply(z, mu.step_element(atoms, ptr, k - 1))
        if k in wanted:
            traj.cocycle[k] = G.word_length(z)
            traj.base_distance[k] = G.base.length(z.position)
            if keep_positions:
                traj.positions[k] = z
    return traj


# ---------------------------------------------------------------------------
# per-sample records
# ---------------------------------------------------------------------------


class Record:
    """Mixin: CSV header and row helpers for flat integer records."""

    @classmethod
    def columns(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def row(self) -> tuple:
        return tuple(getattr(self, c) for c in self.columns())


@dataclass(frozen=True)
class CocycleRecord(Record):
    sample: int
    n: int
    q: int
    base_distance: int


@dataclass(frozen=True)
class DefectSample(Record):
    """``psi = Q_m + d(Z_m, Z_{m+n}) - Q_{m+n}``."""

    sample: int
    m: int
    n: int
    psi: int
    q_m: int
    shift: int
    q_total: int


@dataclass(frozen=True)
class TrackingSample(Record):
    sample: int
    n: int
    max_deviation: int
    base_distance: int
    violations: int


def sample_defect(mu: StepDistribution, m: int, n: int, seed, engine: str = "auto", sample: int = 0) -> DefectSample:
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    engine = resolve_engine(mu, engine)
    atoms, ptr = mu.draw_atoms(make_rng(seed), m + n)
    if engine == "kernel":
        prog = _program(mu)
        prog.guard(m + n, len(atoms) / max(m + n, 1))
        w = prog.walker()
        prog.run(w, atoms, ptr, 0, m)
        q_m = int(w.word_length())
        snap = w.snapshot()
        prog.run(w, atoms, ptr, m, m + n)
        shift = int(w.distance_from(snap))
        q_total = int(w.word_length())
    else:
        G = mu.group
        zm = G.product(mu.step_element(atoms, ptr, k) for k in range(m))
        tail = G.product(mu.step_element(atoms, ptr, k) for k in range(m, m + n))
        z = G.multiply(zm, tail)
        q_m, q_total = G.word_length(zm), G.word_length(z)
        shift = G.word_length(tail)
    return DefectSample(sample, m, n, q_m + shift - q_total, q_m, shift, q_total)


def default_window(n: int, k0: float) -> int:
    return max(1, math.ceil(k0 * math.log(max(n, 2))))


def sample_tracking(mu: StepDistribution, n: int, seed, k0: float = 10.0, window: int | None = None,
                    engine: str = "auto", sample: int = 0, progress: bool = True) -> TrackingSample:
    """Geodesic tracking of the base projection of one trajectory.

    ``violations`` counts pairs ``i < j`` with ``j - i >= window`` and
    ``k0 * d_H(Zbar_i, Zbar_j) < j - i``; ``progress=False`` skips that
    quadratic scan and reports ``-1``.
    """
    from .stats import tracking_stats

    engine = resolve_engine(mu, engine)
    window = default_window(n, k0) if window is None else int(window)
    atoms, ptr = mu.draw_atoms(make_rng(seed), n)
    if engine == "kernel":
        prog = _program(mu)
        prog.guard(n, len(atoms) / max(n, 1))
        w = prog.walker()
        path = np.concatenate([[0], prog.run(w, atoms, ptr, 0, n)]).astype(np.int64)
        dev = int(w.max_deviation(path))
        viol = int(w.progress_violations(path, k0, window)) if progress else -1
        return TrackingSample(sample, n, dev, int(w.node_depth(w.cursor)), viol)
    G = mu.group
    z = G.identity()
    path = [z.position]
    for k in range(n):
        z = G.multiply(z, mu.step_element(atoms, ptr, k))
        path.append(z.position)
    dev, viol = tracking_stats(G.base, path, k0 if progress else None, window)
    return TrackingSample(sample, n, dev, G.base.length(path[-1]), viol)


# ---------------------------------------------------------------------------
# batches
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JobSpec:
    """One Monte Carlo job.

    ``grid`` holds horizons for ``cocycle``/``tracking`` and ``(m, n)`` pairs
    for ``defect``.  Sample ``s`` at grid index ``g`` uses the stream
    ``(seed, stream + g, s)``; cocycle jobs run one trajectory per sample
    through all horizons on stream ``(seed, stream, s)``.  Jobs that must be
    independent of each other use different ``stream`` offsets.
    """

    kind: str
    grid: tuple
    samples: int
    seed: int
    engine: str = "auto"
    k0: float = 10.0
    window: int | None = None
    progress: bool = True
    stream: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError("kind", f"kind must be one of {KINDS}, got {self.kind!r}")
        if not isinstance(self.samples, int) or isinstance(self.samples, bool) or self.samples < 1:
            raise ConfigError("samples", f"samples must be a positive integer, got {self.samples!r}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or self.seed < 0:
            raise ConfigError("seed", f"seed must be a non-negative integer, got {self.seed!r}")
        if not self.grid:
            raise ConfigError("grid", "grid must not be empty")
        if self.kind == "defect":
            try:
                grid = tuple((int(m), int(n)) for m, n in self.grid)
            except (TypeError, ValueError):
                raise ConfigError("grid", "defect grid entries must be [m, n] pairs") from None
            if any(m < 0 or n < 0 for m, n in grid):
                raise ConfigError("grid", "defect grid entries must be non-negative")
        else:
            try:
                grid = tuple(int(n) for n in self.grid)
            except (TypeError, ValueError):
                raise ConfigError("grid", "grid entries must be integers") from None
            if any(n < 0 for n in grid):
                raise ConfigError("grid", "horizons must be non-negative")
        object.__setattr__(self, "grid", grid)
        if self.engine not in ENGINES:
            raise ConfigError("engine", f"engine must be one of {ENGINES}")
        if not isinstance(self.stream, int) or self.stream < 0:
            raise ConfigError("stream", "stream offset must be a non-negative integer")
        if not self.k0 > 0:
            raise ConfigError("k0", "k0 must be positive")

    def tasks(self) -> list[tuple[int, int]]:
        if self.kind == "cocycle":
            return [(0, s) for s in range(self.samples)]
        return [(g, s) for g in range(len(self.grid)) for s in range(self.samples)]


def _run_task(mu: StepDistribution, job: JobSpec, g: int, s: int) -> list:
    seed = (job.seed, job.stream + g, s)
    if job.kind == "cocycle":
        horizons = sorted(set(job.grid))
        traj = run_trajectory(mu, horizons[-1], seed, horizons, job.engine, keep_positions=False)
        return [CocycleRecord(s, n, traj.cocycle[n], traj.base_distance[n]) for n in job.grid]
    if job.kind == "defect":
        m, n = job.grid[g]
        return [sample_defect(mu, m, n, seed, job.engine, sample=s)]
    return [sample_tracking(mu, job.grid[g], seed, job.k0, job.window, job.engine, s, job.progress)]


def batch(mu: StepDistribution, job: JobSpec, threads: int = 1) -> list:
    """Run every sample of ``job``; records come back in task order.

    Tasks are split into contiguous chunks, one per worker, and concatenated
    in order, so the output does not depend on ``threads``.
    """
    resolve_engine(mu, job.engine)
    if kernel_supported(mu.group) and job.engine != "reference":
        horizon = max(m + n for m, n in job.grid) if job.kind == "defect" else max(job.grid)
        _program(mu).guard(horizon, mu.mean_burst())
    parts = ordered_map(lambda task: _run_task(mu, job, *task), job.tasks(), threads)
    return [r for part in parts for r in part]


def ordered_map(fn, items, threads: int = 1) -> list:
    """``[fn(x) for x in items]`` over contiguous chunks on a thread pool."""
    items = list(items)
    threads = max(1, min(int(threads), len(items)))
    if threads == 1:
        return [fn(x) for x in items]
    size = -(-len(items) // threads)
    chunks = [items[i:i + size] for i in range(0, len(items), size)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda chunk: [fn(x) for x in chunk], chunks))
    return [r for part in parts for r in part]
