"""Pure-Python implementation of the hot kernels.

Mirrors ``_ckernel.pyx`` exactly (same API, same results); used when the
compiled extension is unavailable or ``WREATHWALK_PURE=1`` is set.

The walk kernel keeps the visited part of a tree-shaped Cayley graph (free
group of rank ``k``; rank 1 is the integer line) as a trie of reduced words.
Node 0 is the identity, and a parent always has a smaller id than its children.
Increments are executed as small programs of primitive ops:

* ``op`` in ``±1..±k``: move the lamplighter by that generator;
* ``op >= LAMP_OP``: right-multiply the lamp under the lamplighter by
  element ``op - LAMP_OP`` of the lamp table.
"""

from __future__ import annotations

import numpy as np

LAMP_OP = 1 << 24


class TreeWalk:
    def __init__(self, rank, lamp_mul, lamp_identity, lamp_cost):
        self.rank = int(rank)
        self.nletters = 2 * self.rank
        mul = np.asarray(lamp_mul, dtype=np.int64)
        self.order = int(mul.shape[0])
        self.mul = [list(map(int, row)) for row in mul]
        self.ident = int(lamp_identity)
        self.inv = [next(b for b in range(self.order) if self.mul[a][b] == self.ident) for a in range(self.order)]
        self.cost = [int(c) for c in lamp_cost]
        self.reset()

    def reset(self):
        self.child = [[-1] * self.nletters]
        self.parent = [-1]
        self.depth = [0]
        self.last = [0]
        self.val = [self.ident]
        self.litpos = [-1]
        self.lit = []
        self.cur = 0

    # -- trie --------------------------------------------------------------
    def _idx(self, s):
        return s - 1 if s > 0 else self.rank - s - 1

    def _step(self, node, s):
        if self.last[node] == -s:
            return self.parent[node]
        i = self._idx(s)
        c = self.child[node][i]
        if c < 0:
            c = len(self.parent)
            self.child[node][i] = c
            self.child.append([-1] * self.nletters)
            self.parent.append(node)
            self.depth.append(self.depth[node] + 1)
            self.last.append(s)
            self.val.append(self.ident)
            self.litpos.append(-1)
        return c

    def node_of(self, letters):
        v = 0
        for s in letters:
            v = self._step(v, int(s))
        return v

    def word(self, node):
        out = []
        while node > 0:
            out.append(self.last[node])
            node = self.parent[node]
        return tuple(reversed(out))

    @property
    def n_nodes(self):
        return len(self.parent)

    @property
    def cursor(self):
        return self.cur

    def node_depth(self, node):
        return self.depth[node]

    def depths(self, nodes):
        d = self.depth
        return np.array([d[v] for v in nodes], dtype=np.int64)

    # -- lamps -------------------------------------------------------------
    def _lamp(self, a):
        c = self.cur
        old = self.val[c]
        new = self.mul[old][a]
        self.val[c] = new
        if old == self.ident and new != self.ident:
            self.litpos[c] = len(self.lit)
            self.lit.append(c)
        elif old != self.ident and new == self.ident:
            pos = self.litpos[c]
            tail = self.lit.pop()
            if tail != c:
                self.lit[pos] = tail
                self.litpos[tail] = pos
            self.litpos[c] = -1

    def lamps(self):
        return [(v, self.val[v]) for v in self.lit]

    def support_size(self):
        return len(self.lit)

    def lamp_cost(self):
        cost, val = self.cost, self.val
        return sum(cost[val[v]] for v in self.lit)

    # -- stepping ----------------------------------------------------------
    def run(self, ops, offsets, atoms, step_ptr=None):
        """Execute steps; returns the lamplighter node after each step."""
        ops = [int(o) for o in ops]
        offsets = [int(o) for o in offsets]
        atoms = np.asarray(atoms)
        if step_ptr is None:
            nsteps = len(atoms)
            bounds = None
        else:
            bounds = [int(b) for b in step_ptr]
            nsteps = len(bounds) - 1
        out = np.empty(nsteps, dtype=np.int64)
        progs = [ops[offsets[a]:offsets[a + 1]] for a in range(len(offsets) - 1)]
        atom_list = atoms.tolist()
        for k in range(nsteps):
            seq = [atom_list[k]] if bounds is None else atom_list[bounds[k]:bounds[k + 1]]
            for a in seq:
                for op in progs[a]:
                    if op >= LAMP_OP:
                        self._lamp(op - LAMP_OP)
                    else:
                        self.cur = self._step(self.cur, op)
            out[k] = self.cur
        return out

    # -- tree geometry -----------------------------------------------------
    def lca(self, u, v):
        depth, parent = self.depth, self.parent
        while depth[u] > depth[v]:
            u = parent[u]
        while depth[v] > depth[u]:
            v = parent[v]
        while u != v:
            u = parent[u]
            v = parent[v]
        return u

    def distance(self, u, v):
        return self.depth[u] + self.depth[v] - 2 * self.depth[self.lca(u, v)]

    def steiner_edges(self, points):
        """Edge count of the minimal subtree spanning ``points`` (non-empty)."""
        parent = self.parent
        marked = {0}
        for p in points:
            v = p
            while v not in marked:
                marked.add(v)
                v = parent[v]
        total = len(marked) - 1
        flagged = set(points)
        v = 0
        child = self.child
        while v not in flagged:
            nxt = [c for c in child[v] if c >= 0 and c in marked]
            if len(nxt) != 1:
                break
            v = nxt[0]
        return total - self.depth[v]

    def tsp(self, start, points, end):
        pts = [int(start), int(end)] + [int(p) for p in points]
        return 2 * self.steiner_edges(pts) - self.distance(int(start), int(end))

    def word_length(self):
        return self.tsp(0, self.lit, self.cur) + self.lamp_cost()

    # -- snapshots / defects -------------------------------------------------
    def snapshot(self):
        nodes = np.array(self.lit, dtype=np.int64)
        vals = np.array([self.val[v] for v in self.lit], dtype=np.int64)
        return (self.cur, nodes, vals)

    def distance_from(self, snap):
        """Word-metric distance between a snapshotted element and the current one."""
        s_cur, s_nodes, s_vals = snap
        old = dict(zip(s_nodes.tolist(), s_vals.tolist()))
        mul, inv, ident, cost, val = self.mul, self.inv, self.ident, self.cost, self.val
        pts = []
        lamp = 0
        for x in self.lit:
            d = mul[inv[old.get(x, ident)]][val[x]]
            if d != ident:
                pts.append(x)
                lamp += cost[d]
        for x, a in old.items():
            if val[x] == ident:
                pts.append(x)
                lamp += cost[inv[a]]
        return self.tsp(s_cur, pts, self.cur) + lamp

    # -- tracking ------------------------------------------------------------
    def max_deviation(self, path):
        """max_k distance from path[k] to the geodesic from the root to path[-1]."""
        path = [int(v) for v in path]
        if not path:
            return 0
        on = set()
        v = path[-1]
        while v >= 0:
            on.add(v)
            v = self.parent[v]
        dist = [0] * self.n_nodes
        parent = self.parent
        for v in range(1, self.n_nodes):
            dist[v] = 0 if v in on else dist[parent[v]] + 1
        return max(dist[v] for v in path)

    def progress_violations(self, path, k0, window):
        """Pairs i < j with j - i >= window and d(path[i], path[j]) * k0 < j - i."""
        path = [int(v) for v in path]
        n = len(path)
        depth = self.depth
        count = 0
        for i in range(n):
            for j in range(i + int(window), n):
                # depth difference is a lower bound for the distance
                if abs(depth[path[i]] - depth[path[j]]) * k0 >= (j - i):
                    continue
                if self.distance(path[i], path[j]) * k0 < (j - i):
                    count += 1
        return count


def held_karp(dist):
    """Fixed-endpoint TSP by subset dynamic programming.

    ``dist`` is a ``(k+2, k+2)`` integer matrix: row 0 is the start, rows
    ``1..k`` the points, row ``k+1`` the end.  Returns ``(value, order)`` with
    ``order`` the lexicographically smallest optimal visiting order of the
    point indices ``0..k-1``.
    """
    d = np.asarray(dist, dtype=np.int64)
    k = d.shape[0] - 2
    if k < 0:
        raise ValueError("distance matrix must include start and end")
    if k == 0:
        return int(d[0, 1]), []
    pts = d[1:k + 1, 1:k + 1]
    to_end = d[1:k + 1, k + 1]
    from_start = d[0, 1:k + 1]
    full = (1 << k) - 1
    big = np.iinfo(np.int64).max // 4
    # h[S, i]: cheapest path from point i through every point of S to the end
    h = np.full((1 << k, k), big, dtype=np.int64)
    h[0, :] = to_end
    masks = np.arange(1 << k, dtype=np.int64)
    pop = np.zeros(1 << k, dtype=np.int64)
    for j in range(k):
        pop += (masks >> j) & 1
    for c in range(1, k + 1):
        layer = masks[pop == c]
        for j in range(k):
            sel = layer[(layer >> j) & 1 == 1]
            if sel.size == 0:
                continue
            prev = h[sel ^ (1 << j), j]
            cand = pts[:, j][None, :] + prev[:, None]
            h[sel] = np.minimum(h[sel], cand)
    best = big
    for j in range(k):
        best = min(best, int(from_start[j] + h[full ^ (1 << j), j]))
    order = []
    rem = full
    target = best
    cur_row = from_start
    while rem:
        for j in range(k):
            if rem >> j & 1 and int(cur_row[j] + h[rem ^ (1 << j), j]) == target:
                order.append(j)
                rem ^= 1 << j
                target = int(h[rem, j])
                cur_row = pts[j]
                break
    return best, order
