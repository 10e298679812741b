"""Deterministic TSP-defect bound along a geodesic, checked constructively.

Setting: points A, B, C of the base group, a geodesic ``gamma`` from A to C,
``R = d(A, B)`` and a positive integer ``D`` with ``d(B, gamma) <= D``,
``R >= 4D`` and ``d(A, C) >= R + 4D``.  Two finite sets ``L1``, ``L2`` lie in
the D-neighbourhood of gamma, points of L1 satisfy ``d(A, x) <= R + 4D`` and
points of L2 satisfy ``d(A, y) >= R - 4D``.  With ``N`` the number of points of
``L1 | L2`` in the closed window ``R - 4D <= d(A, x) <= R + 4D``, every ``L3``
with ``L1 ^ L2 <= L3 <= L1 | L2`` satisfies

    0 <= TSP(A, L1, B) + TSP(B, L2, C) - TSP(A, L3, C) <= 24 (N + 1) D.

:func:`surgery` rebuilds an optimal path for ``TSP(A, L1 ^ L2, C)`` into a
path that visits L1, passes B, then visits L2, at the stated extra cost.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import tsp
from .base import FreeGroup, GeodesicSegment, project_to_geodesic
from .errors import LemmaHypothesisError


@dataclass(frozen=True)
class NodePath:
    """Piecewise geodesic through ``nodes``; ``pivot`` marks the B-visit if any."""

    group: object
    nodes: tuple
    pivot: int | None = None

    @property
    def length(self) -> int:
        d = self.group.distance
        return sum(d(u, v) for u, v in zip(self.nodes, self.nodes[1:]))


@dataclass(frozen=True)
class LemmaInstance:
    group: object
    A: object
    B: object
    C: object
    gamma: GeodesicSegment
    L1: frozenset
    L2: frozenset
    D: int

    def __post_init__(self):
        object.__setattr__(self, "L1", frozenset(self.L1))
        object.__setattr__(self, "L2", frozenset(self.L2))

    @property
    def R(self) -> int:
        return self.group.distance(self.A, self.B)

    def dist_from_A(self, x) -> int:
        return self.group.distance(self.A, x)

    def _gamma_at(self, offset: int):
        if self.gamma.start != self.A or not 0 <= offset <= self.gamma.length:
            return None
        return self.gamma.vertices[offset]

    @property
    def B1(self):
        return self._gamma_at(self.R - 4 * self.D)

    @property
    def B2(self):
        return self._gamma_at(self.R + 4 * self.D)

    def in_window(self, x) -> bool:
        r, d4 = self.R, 4 * self.D
        return r - d4 <= self.dist_from_A(x) <= r + d4

    @property
    def N(self) -> int:
        return sum(1 for x in self.L1 | self.L2 if self.in_window(x))

    @property
    def bound(self) -> int:
        return 24 * (self.N + 1) * self.D

    def distance_to_gamma(self, x) -> int:
        return project_to_geodesic(self.group, x, self.gamma)[1]


@dataclass
class CertificationReport:
    checks: dict = field(default_factory=dict)
    R: int = 0
    N: int = 0
    B1: object = None
    B2: object = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def certify_hypotheses(inst: LemmaInstance) -> CertificationReport:
    """Evaluate every hypothesis; failures are reported, never raised."""
    g, D = inst.group, inst.D
    R = inst.R
    dist_to_gamma = inst.distance_to_gamma
    checks = {
        "D_positive_integer": isinstance(D, int) and D > 0,
        "gamma_connects_A_C": (
            inst.gamma.start == inst.A and inst.gamma.end == inst.C and inst.gamma.is_valid()
        ),
        "points_distinct": len({inst.A, inst.B, inst.C}) == 3,
        "B_near_gamma": dist_to_gamma(inst.B) <= D,
        "R_at_least_4D": R >= 4 * D,
        "AC_at_least_R_plus_4D": g.distance(inst.A, inst.C) >= R + 4 * D,
        "points_near_gamma": all(dist_to_gamma(x) <= D for x in inst.L1 | inst.L2),
        "L1_within_R_plus_4D": all(inst.dist_from_A(x) <= R + 4 * D for x in inst.L1),
        "L2_beyond_R_minus_4D": all(inst.dist_from_A(y) >= R - 4 * D for y in inst.L2),
    }
    return CertificationReport(checks, R, inst.N, inst.B1, inst.B2)


@dataclass(frozen=True)
class Regions:
    initial: tuple
    middle: tuple
    terminal: tuple


def region_of(inst: LemmaInstance, x) -> str:
    """``"I"``, ``"M"`` or ``"T"`` by distance from A (middle window is open)."""
    r, d4 = inst.R, 4 * inst.D
    da = inst.dist_from_A(x)
    if da <= r - d4:
        return "I"
    if da >= r + d4:
        return "T"
    return "M"


def classify_regions(inst: LemmaInstance, points) -> Regions:
    parts = {"I": [], "M": [], "T": []}
    for x in sorted(set(points), key=inst.group.sort_key):
        if inst.distance_to_gamma(x) > inst.D:
            raise ValueError(f"point {x!r} lies outside the D-neighbourhood of gamma")
        parts[region_of(inst, x)].append(x)
    return Regions(tuple(parts["I"]), tuple(parts["M"]), tuple(parts["T"]))


def claim_leap(inst: LemmaInstance, P, Q) -> tuple[int, int]:
    """For P in I and Q in T: returns ``(|PB1| + |B2Q|, |PQ|)``; the first never exceeds the second."""
    d = inst.group.distance
    return d(P, inst.B1) + d(inst.B2, Q), d(P, Q)


def claim_step(inst: LemmaInstance, P, Q) -> tuple[int, int]:
    """For P in I (resp. T) and Q in M: ``(|P B1|, |PQ| + 6D)`` (resp. with B2)."""
    d = inst.group.distance
    anchor = inst.B1 if region_of(inst, P) == "I" else inst.B2
    return d(P, anchor), d(P, Q) + 6 * inst.D


@dataclass(frozen=True)
class SandwichResult:
    t1: int
    t2: int
    t3: int
    defect: int
    bound: int
    verdict: bool


def _tsp(group, start, points, end) -> tsp.TspSolution:
    return tsp.solve(tsp.TspInstance(group, start, points, end))


def _require_certified(inst: LemmaInstance) -> CertificationReport:
    report = certify_hypotheses(inst)
    if not report.ok:
        raise LemmaHypothesisError(f"hypotheses fail: {', '.join(report.failures)}")
    return report


def defect_sandwich(inst: LemmaInstance, L3) -> SandwichResult:
    L3 = frozenset(L3)
    if not (inst.L1 ^ inst.L2) <= L3 <= (inst.L1 | inst.L2):
        raise ValueError("L3 must contain L1 ^ L2 and lie inside L1 | L2")
    _require_certified(inst)
    g = inst.group
    t1 = _tsp(g, inst.A, inst.L1, inst.B).value
    t2 = _tsp(g, inst.B, inst.L2, inst.C).value
    t3 = _tsp(g, inst.A, L3, inst.C).value
    defect = t1 + t2 - t3
    return SandwichResult(t1, t2, t3, defect, inst.bound, 0 <= defect <= inst.bound)


def optimal_alpha(inst: LemmaInstance) -> NodePath:
    """An optimal node path for ``TSP(A, L1 ^ L2, C)``."""
    sol = _tsp(inst.group, inst.A, inst.L1 ^ inst.L2, inst.C)
    return NodePath(inst.group, (inst.A, *sol.order, inst.C))


def _maximal_runs(labels, nodes, region):
    runs, cur = [], []
    for lab, v in zip(labels, nodes):
        if lab == region:
            cur.append(v)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def surgery(inst: LemmaInstance, alpha: NodePath) -> NodePath:
    """Rebuild ``alpha`` into a path through L1, then B, then L2.

    Runs of alpha inside the initial region are chained through B1, runs
    inside the terminal region through B2, and every middle-region segment
    is dropped.  The gap from B1 to B2 is then bridged by optimal sub-tours
    over the L1 points not yet visited, B, and the L2 points not yet visited.
    """
    _require_certified(inst)
    g = inst.group
    nodes = tuple(alpha.nodes)
    target = inst.L1 ^ inst.L2
    interior = nodes[1:-1]
    if (
        len(nodes) < 2
        or nodes[0] != inst.A
        or nodes[-1] != inst.C
        or len(interior) != len(target)
        or set(interior) != target
    ):
        raise ValueError("alpha must run from A to C visiting each point of L1 ^ L2 once")
    if alpha.length != _tsp(g, inst.A, target, inst.C).value:
        raise ValueError("alpha is not an optimal solution of TSP(A, L1 ^ L2, C)")

    B1, B2 = inst.B1, inst.B2
    labels = [region_of(inst, v) for v in nodes]
    p_runs = _maximal_runs(labels, nodes, "I")
    q_runs = _maximal_runs(labels, nodes, "T")

    beta_i: list = []
    for i, run in enumerate(p_runs):
        if i:
            beta_i.append(B1)
        beta_i.extend(run)
    beta_i.append(B1)

    beta_t: list = []
    for run in q_runs:
        beta_t.append(B2)
        beta_t.extend(run)

    seen_i, seen_t = set(beta_i), set(beta_t)
    first = _tsp(g, B1, [x for x in inst.L1 if x not in seen_i], inst.B).order
    second = _tsp(g, inst.B, [y for y in inst.L2 if y not in seen_t], B2).order
    pivot = len(beta_i) + len(first)
    out = (*beta_i, *first, inst.B, *second, *beta_t)
    return NodePath(g, out, pivot)


def check_visit_contract(inst: LemmaInstance, beta: NodePath) -> bool:
    """beta starts at A, ends at C, visits L1 before its B-visit and L2 after it."""
    nodes, k = beta.nodes, beta.pivot
    if k is None or not nodes or nodes[0] != inst.A or nodes[-1] != inst.C or nodes[k] != inst.B:
        return False
    return inst.L1 <= set(nodes[: k + 1]) and inst.L2 <= set(nodes[k:])


# -- random certified instances in free groups --------------------------------


def _branch_point(group: FreeGroup, rng, A, axis: tuple, t: int, off: int):
    banned = set()
    if t < len(axis):
        banned.add(axis[t])
    if t > 0:
        banned.add(-axis[t - 1])
    base = group.multiply(A, axis[:t])
    return group.multiply(base, group.random_word(rng, off, avoid_first=banned))


def random_instance(
    rng,
    group: FreeGroup | None = None,
    D: int = 1,
    axis_length: int = 40,
    n_points: int = 8,
    window_bias: float = 0.5,
    start_length: int = 3,
) -> tuple[LemmaInstance, frozenset]:
    """A certified instance plus an admissible ``L3``.

    Points hang off uniformly chosen axis vertices by excursions of length at
    most D; with probability ``window_bias`` the anchor is drawn near the
    middle window so that overlaps and steps are exercised.  Points in the
    window go to L1, L2 or both with equal odds.
    """
    group = group or FreeGroup(2)
    if axis_length < 8 * D:
        raise ValueError("axis_length must be at least 8 D")
    A = group.random_word(rng, int(rng.integers(0, start_length + 1)))
    avoid = {-A[-1]} if A else set()
    axis = group.random_word(rng, axis_length, avoid_first=avoid)
    C = group.multiply(A, axis)
    gamma = group.geodesic(A, C)

    e_b = int(rng.integers(0, D + 1))
    t_b = int(rng.integers(max(0, 4 * D - e_b), axis_length - 4 * D - e_b + 1))
    B = _branch_point(group, rng, A, axis, t_b, e_b)
    R = t_b + e_b

    L1, L2 = set(), set()
    for _ in range(n_points):
        if rng.random() < window_bias:
            t = int(rng.integers(max(0, R - 5 * D), min(axis_length, R + 5 * D) + 1))
        else:
            t = int(rng.integers(0, axis_length + 1))
        off = int(rng.integers(0, D + 1))
        x = _branch_point(group, rng, A, axis, t, off)
        da = t + off
        if da < R - 4 * D:
            L1.add(x)
        elif da > R + 4 * D:
            L2.add(x)
        else:
            which = int(rng.integers(3))
            if which != 1:
                L1.add(x)
            if which != 0:
                L2.add(x)
    inst = LemmaInstance(group, A, B, C, gamma, frozenset(L1), frozenset(L2), D)
    both = sorted(inst.L1 & inst.L2, key=group.sort_key)
    keep = {y for y in both if rng.random() < 0.5}
    L3 = (inst.L1 ^ inst.L2) | keep
    return inst, frozenset(L3)


def sample_region_point(inst: LemmaInstance, rng, region: str, tries: int = 1000):
    """A random point within D of gamma lying in ``region`` (``"I"``, ``"M"``, ``"T"``)."""
    g, verts = inst.group, inst.gamma.vertices
    r, d = inst.R, inst.D
    lo, hi = {"I": (0, r - 4 * d), "M": (r - 5 * d, r + 4 * d), "T": (r + 3 * d, len(verts) - 1)}[region]
    lo, hi = max(lo, 0), min(hi, len(verts) - 1)
    for _ in range(tries):
        t = int(rng.integers(lo, hi + 1))
        here = verts[t]
        banned = set()
        for nb in (verts[t - 1] if t > 0 else None, verts[t + 1] if t + 1 < len(verts) else None):
            if nb is not None:
                banned.add(g.multiply(g.inverse(here), nb)[0])
        x = g.multiply(here, g.random_word(rng, int(rng.integers(0, inst.D + 1)), avoid_first=banned))
        if region_of(inst, x) == region:
            return x
    raise ValueError(f"no point of region {region} found near gamma")


@dataclass(frozen=True)
class LemmaVerification:
    sandwich: SandwichResult
    alpha_length: int
    beta_length: int
    contract_ok: bool

    @property
    def surgery_ok(self) -> bool:
        return self.contract_ok and self.beta_length <= self.sandwich.t3 + self.sandwich.bound

    @property
    def ok(self) -> bool:
        return self.sandwich.verdict and self.surgery_ok


def verify_instance(inst: LemmaInstance, L3) -> LemmaVerification:
    """Sandwich inequality plus the surgery length and visit contract."""
    sandwich = defect_sandwich(inst, L3)
    alpha = optimal_alpha(inst)
    beta = surgery(inst, alpha)
    return LemmaVerification(sandwich, alpha.length, beta.length, check_visit_contract(inst, beta))
