"""Fixed-endpoint travelling salesman TSP(A, L, B) in a base group.

Three exact solvers share one objective, the length of the piecewise
geodesic ``A -> l_1 -> ... -> l_k -> B``:

* :func:`solve_dp` Held-Karp subset DP (compiled kernel), any base group;
* :func:`solve_tree` closed form ``2 * |Steiner tree| - d(A, B)`` for tree bases;
* :func:`brute_force` full enumeration, the testing oracle.

:func:`solve_approx` is a labelled non-exact heuristic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernel
from .errors import ResourceGuardError

DP_CAP = 20
BRUTE_FORCE_CAP = 9


@dataclass(frozen=True)
class TspInstance:
    group: object
    start: object
    points: tuple
    end: object

    def __init__(self, group, start, points, end):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "end", end)
        object.__setattr__(self, "points", tuple(sorted(set(points), key=group.sort_key)))

    def __len__(self):
        return len(self.points)

    def nodes(self) -> list:
        return [self.start, *self.points, self.end]

    def distance_matrix(self) -> np.ndarray:
        nodes = self.nodes()
        d = self.group.distance
        n = len(nodes)
        m = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i + 1, n):
                m[i, j] = m[j, i] = d(nodes[i], nodes[j])
        return m

    def path_length(self, order) -> int:
        seq = [self.start, *order, self.end]
        d = self.group.distance
        return sum(d(u, v) for u, v in zip(seq, seq[1:]))


@dataclass(frozen=True)
class TspSolution:
    value: int
    order: tuple
    exact: bool = True
    solver: str = ""

    def nodes(self, inst: TspInstance) -> tuple:
        return (inst.start, *self.order, inst.end)


def solve_dp(inst: TspInstance, cap: int = DP_CAP) -> TspSolution:
    """Held-Karp; among optimal orders the lexicographically smallest is returned."""
    k = len(inst.points)
    if k > cap:
        raise ResourceGuardError(f"TSP with {k} points exceeds the exact-solver cap {cap}")
    value, order = _kernel.held_karp(inst.distance_matrix())
    return TspSolution(int(value), tuple(inst.points[i] for i in order), True, "dp")


@lru_cache(maxsize=None)
def _permutations(k: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(k))), dtype=np.int64).reshape(-1, k)


def brute_force(inst: TspInstance, cap: int = BRUTE_FORCE_CAP) -> TspSolution:
    """Enumerate every visiting order (lexicographic tie-break)."""
    k = len(inst.points)
    if k > cap:
        raise ResourceGuardError(f"brute force limited to {cap} points, got {k}")
    m = inst.distance_matrix()
    if k == 0:
        return TspSolution(int(m[0, 1]), (), True, "brute")
    perms = _permutations(k) + 1
    cost = m[0, perms[:, 0]] + m[perms[:, -1], k + 1]
    for i in range(k - 1):
        cost = cost + m[perms[:, i], perms[:, i + 1]]
    best = int(np.argmin(cost))
    order = tuple(inst.points[i - 1] for i in perms[best])
    return TspSolution(int(cost[best]), order, True, "brute")


def steiner_tree(group, nodes) -> dict:
    """Minimal subtree spanning ``nodes`` in a tree-shaped base group.

    Returns an adjacency map.  Built by marking the union of root paths, then
    trimming the stem above the common ancestor of all nodes.
    """
    root = group.identity()
    up = {root: None}
    for p in nodes:
        v = p
        while v not in up:
            parent = group.parent(v)
            up[v] = parent
            v = parent
    top = nodes[0]
    for p in nodes[1:]:
        top = group.lca(top, p)
    stem = set()
    v = top
    while v != root:
        v = group.parent(v)
        stem.add(v)
    adj: dict = {v: [] for v in up if v not in stem}
    for v, parent in up.items():
        if parent is not None and v in adj and parent in adj and v != top:
            adj[v].append(parent)
            adj[parent].append(v)
    return adj


def solve_tree(inst: TspInstance) -> TspSolution:
    """Exact tree TSP: double the Steiner tree, minus the A-B path walked once.

    The visiting order comes from a depth-first traversal from A that enters
    the branch containing B last.
    """
    g = inst.group
    if not getattr(g, "is_tree", False):
        raise TypeError(f"solve_tree needs a tree-shaped base group, got {g!r}")
    nodes = [inst.start, inst.end, *inst.points]
    adj = steiner_tree(g, nodes)
    n_edges = sum(len(v) for v in adj.values()) // 2
    value = 2 * n_edges - g.distance(inst.start, inst.end)

    on_path = set(g.geodesic(inst.start, inst.end).vertices)
    wanted = set(inst.points)
    order = []
    seen = {inst.start}
    stack = [inst.start]
    while stack:
        v = stack.pop()
        if v in wanted:
            order.append(v)
            wanted.discard(v)
        nbrs = [u for u in adj[v] if u not in seen]
        # explore side branches first and the B-ward neighbour last
        nbrs.sort(key=lambda u: (u in on_path, g.sort_key(u)))
        seen.update(nbrs)
        stack.extend(reversed(nbrs))
    return TspSolution(value, tuple(order), True, "tree")


def solve_approx(inst: TspInstance, max_rounds: int = 50) -> TspSolution:
    """Nearest-neighbour tour improved by 2-opt. Not exact."""
    m = inst.distance_matrix()
    k = len(inst.points)
    todo = set(range(1, k + 1))
    tour = []
    cur = 0
    while todo:
        nxt = min(todo, key=lambda j: (m[cur, j], j))
        tour.append(nxt)
        todo.discard(nxt)
        cur = nxt

    def length(t):
        seq = [0, *t, k + 1]
        return int(sum(m[a, b] for a, b in zip(seq, seq[1:])))

    best = length(tour)
    for _ in range(max_rounds):
        improved = False
        for i in range(k - 1):
            for j in range(i + 1, k):
                cand = tour[:i] + tour[i:j + 1][::-1] + tour[j + 1:]
                c = length(cand)
                if c < best:
                    tour, best, improved = cand, c, True
        if not improved:
            break
    return TspSolution(best, tuple(inst.points[i - 1] for i in tour), False, "approx")


def solve(inst: TspInstance, approximate: bool = False, cap: int = DP_CAP) -> TspSolution:
    """Solver policy: tree bases use the closed form, others Held-Karp up to ``cap``."""
    if getattr(inst.group, "is_tree", False):
        return solve_tree(inst)
    if len(inst.points) <= cap:
        return solve_dp(inst, cap)
    if approximate:
        return solve_approx(inst)
    raise ResourceGuardError(
        f"support of {len(inst.points)} points exceeds the exact cap {cap}; pass approximate=True"
    )
