# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: trie walk on tree-shaped base groups and Held-Karp.

Behaviour is identical to ``_pykernel``; see that module for the op encoding.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memset
from libc.stdint cimport int32_t, int64_t

cnp.import_array()

cdef enum:
    LAMP_OP_C = 16777216

LAMP_OP = LAMP_OP_C


cdef class TreeWalk:
    cdef int rank, nletters, order, ident
    cdef int64_t cap, nnodes, litcap, nlit
    cdef int32_t *child
    cdef int32_t *parent_
    cdef int32_t *depth_
    cdef int32_t *last
    cdef int32_t *val
    cdef int32_t *litpos
    cdef int32_t *mark
    cdef int32_t *mark2
    cdef int32_t *scratch
    cdef int32_t *lit
    cdef int32_t epoch
    cdef int32_t *mul
    cdef int32_t *inv
    cdef int32_t *cost
    cdef int64_t cur

    def __cinit__(self, rank, lamp_mul, lamp_identity, lamp_cost):
        cdef cnp.ndarray[cnp.int64_t, ndim=2] m = np.asarray(lamp_mul, dtype=np.int64)
        cdef cnp.ndarray[cnp.int64_t, ndim=1] c = np.asarray(lamp_cost, dtype=np.int64)
        cdef int a, b
        self.rank = rank
        self.nletters = 2 * rank
        self.order = m.shape[0]
        self.ident = lamp_identity
        self.mul = <int32_t *> malloc(self.order * self.order * sizeof(int32_t))
        self.inv = <int32_t *> malloc(self.order * sizeof(int32_t))
        self.cost = <int32_t *> malloc(self.order * sizeof(int32_t))
        for a in range(self.order):
            self.cost[a] = <int32_t> c[a]
            for b in range(self.order):
                self.mul[a * self.order + b] = <int32_t> m[a, b]
        for a in range(self.order):
            for b in range(self.order):
                if self.mul[a * self.order + b] == self.ident:
                    self.inv[a] = b
                    break
        self.cap = 0
        self.child = NULL
        self.parent_ = NULL
        self.depth_ = NULL
        self.last = NULL
        self.val = NULL
        self.litpos = NULL
        self.mark = NULL
        self.mark2 = NULL
        self.scratch = NULL
        self.litcap = 0
        self.lit = NULL
        self._grow(1024)
        self._grow_lit(256)
        self.reset()

    def __dealloc__(self):
        free(self.child); free(self.parent_); free(self.depth_); free(self.last)
        free(self.val); free(self.litpos); free(self.mark); free(self.mark2)
        free(self.scratch); free(self.lit)
        free(self.mul); free(self.inv); free(self.cost)

    cdef int _grow(self, int64_t newcap) except -1 nogil:
        cdef int64_t i
        cdef int64_t old = self.cap
        self.child = <int32_t *> realloc(self.child, newcap * self.nletters * sizeof(int32_t))
        self.parent_ = <int32_t *> realloc(self.parent_, newcap * sizeof(int32_t))
        self.depth_ = <int32_t *> realloc(self.depth_, newcap * sizeof(int32_t))
        self.last = <int32_t *> realloc(self.last, newcap * sizeof(int32_t))
        self.val = <int32_t *> realloc(self.val, newcap * sizeof(int32_t))
        self.litpos = <int32_t *> realloc(self.litpos, newcap * sizeof(int32_t))
        self.mark = <int32_t *> realloc(self.mark, newcap * sizeof(int32_t))
        self.mark2 = <int32_t *> realloc(self.mark2, newcap * sizeof(int32_t))
        self.scratch = <int32_t *> realloc(self.scratch, newcap * sizeof(int32_t))
        if (self.child == NULL or self.parent_ == NULL or self.depth_ == NULL or self.last == NULL
                or self.val == NULL or self.litpos == NULL or self.mark == NULL
                or self.mark2 == NULL or self.scratch == NULL):
            with gil:
                raise MemoryError("trie allocation failed")
        for i in range(old * self.nletters, newcap * self.nletters):
            self.child[i] = -1
        for i in range(old, newcap):
            self.val[i] = self.ident
            self.litpos[i] = -1
            self.mark[i] = 0
            self.mark2[i] = 0
        self.cap = newcap
        return 0

    cdef int _grow_lit(self, int64_t newcap) except -1 nogil:
        self.lit = <int32_t *> realloc(self.lit, newcap * sizeof(int32_t))
        if self.lit == NULL:
            with gil:
                raise MemoryError("lamp list allocation failed")
        self.litcap = newcap
        return 0

    def reset(self):
        cdef int64_t i
        for i in range(self.nnodes * self.nletters if self.nnodes > 0 else self.cap * self.nletters):
            self.child[i] = -1
        for i in range(self.cap):
            self.val[i] = self.ident
            self.litpos[i] = -1
            self.mark[i] = 0
            self.mark2[i] = 0
        self.epoch = 0
        self.nnodes = 1
        self.parent_[0] = -1
        self.depth_[0] = 0
        self.last[0] = 0
        self.nlit = 0
        self.cur = 0

    # -- trie ----------------------------------------------------------------
    cdef inline int64_t _step(self, int64_t node, int s) except -1 nogil:
        cdef int i
        cdef int64_t c
        if self.last[node] == -s:
            return self.parent_[node]
        i = s - 1 if s > 0 else self.rank - s - 1
        c = self.child[node * self.nletters + i]
        if c < 0:
            if self.nnodes == self.cap:
                self._grow(2 * self.cap)
            c = self.nnodes
            self.nnodes += 1
            self.child[node * self.nletters + i] = <int32_t> c
            self.parent_[c] = <int32_t> node
            self.depth_[c] = self.depth_[node] + 1
            self.last[c] = s
        return c

    cdef inline int _lamp(self, int a) except -1 nogil:
        cdef int64_t c = self.cur
        cdef int old = self.val[c]
        cdef int new = self.mul[old * self.order + a]
        cdef int64_t pos
        cdef int32_t tail
        self.val[c] = new
        if old == self.ident and new != self.ident:
            if self.nlit == self.litcap:
                self._grow_lit(2 * self.litcap)
            self.litpos[c] = <int32_t> self.nlit
            self.lit[self.nlit] = <int32_t> c
            self.nlit += 1
        elif old != self.ident and new == self.ident:
            pos = self.litpos[c]
            self.nlit -= 1
            tail = self.lit[self.nlit]
            if tail != c:
                self.lit[pos] = tail
                self.litpos[tail] = <int32_t> pos
            self.litpos[c] = -1
        return 0

    def node_of(self, letters):
        cdef int64_t v = 0
        for s in letters:
            v = self._step(v, int(s))
        return v

    def word(self, int64_t node):
        out = []
        while node > 0:
            out.append(self.last[node])
            node = self.parent_[node]
        return tuple(reversed(out))

    @property
    def n_nodes(self):
        return self.nnodes

    @property
    def cursor(self):
        return self.cur

    def node_depth(self, int64_t node):
        return self.depth_[node]

    def depths(self, nodes):
        cdef cnp.ndarray[cnp.int64_t, ndim=1] v = np.asarray(nodes, dtype=np.int64)
        cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.empty(v.shape[0], dtype=np.int64)
        cdef Py_ssize_t i
        for i in range(v.shape[0]):
            out[i] = self.depth_[v[i]]
        return out

    def lamps(self):
        return [(self.lit[i], self.val[self.lit[i]]) for i in range(self.nlit)]

    def support_size(self):
        return self.nlit

    cdef int64_t _lamp_cost(self) nogil:
        cdef int64_t i, s = 0
        for i in range(self.nlit):
            s += self.cost[self.val[self.lit[i]]]
        return s

    def lamp_cost(self):
        return self._lamp_cost()

    # -- stepping --------------------------------------------------------------
    def run(self, ops, offsets, atoms, step_ptr=None):
        cdef cnp.ndarray[cnp.int64_t, ndim=1] ops_a = np.ascontiguousarray(ops, dtype=np.int64)
        cdef cnp.ndarray[cnp.int64_t, ndim=1] off_a = np.ascontiguousarray(offsets, dtype=np.int64)
        cdef cnp.ndarray[cnp.int64_t, ndim=1] atoms_a = np.ascontiguousarray(atoms, dtype=np.int64)
        cdef cnp.ndarray[cnp.int64_t, ndim=1] ptr_a
        cdef int64_t nsteps, k, t, t0, t1, a, o, op
        cdef int has_ptr = step_ptr is not None
        if has_ptr:
            ptr_a = np.ascontiguousarray(step_ptr, dtype=np.int64)
            nsteps = ptr_a.shape[0] - 1
        else:
            ptr_a = np.zeros(1, dtype=np.int64)
            nsteps = atoms_a.shape[0]
        cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.empty(nsteps, dtype=np.int64)
        cdef int64_t *opp = <int64_t *> ops_a.data
        cdef int64_t *offp = <int64_t *> off_a.data
        cdef int64_t *atp = <int64_t *> atoms_a.data
        cdef int64_t *ptrp = <int64_t *> ptr_a.data
        cdef int64_t *outp = <int64_t *> out.data
        with nogil:
            for k in range(nsteps):
                if has_ptr:
                    t0 = ptrp[k]
                    t1 = ptrp[k + 1]
                else:
                    t0 = k
                    t1 = k + 1
                for t in range(t0, t1):
                    a = atp[t]
                    for o in range(offp[a], offp[a + 1]):
                        op = opp[o]
                        if op >= LAMP_OP_C:
                            self._lamp(<int> (op - LAMP_OP_C))
                        else:
                            self.cur = self._step(self.cur, <int> op)
                outp[k] = self.cur
        return out

    # -- tree geometry -----------------------------------------------------------
    cdef inline int64_t _lca(self, int64_t u, int64_t v) nogil:
        while self.depth_[u] > self.depth_[v]:
            u = self.parent_[u]
        while self.depth_[v] > self.depth_[u]:
            v = self.parent_[v]
        while u != v:
            u = self.parent_[u]
            v = self.parent_[v]
        return u

    cdef inline int64_t _dist(self, int64_t u, int64_t v) nogil:
        return self.depth_[u] + self.depth_[v] - 2 * self.depth_[self._lca(u, v)]

    def lca(self, int64_t u, int64_t v):
        return self._lca(u, v)

    def distance(self, int64_t u, int64_t v):
        return self._dist(u, v)

    cdef int64_t _steiner(self, int32_t *pts, int64_t npts) nogil:
        cdef int64_t i, v, c, nxt, total = 0
        cdef int j, nmarked
        self.epoch += 1
        cdef int32_t ep = self.epoch
        self.mark[0] = ep
        for i in range(npts):
            v = pts[i]
            while self.mark[v] != ep:
                self.mark[v] = ep
                total += 1
                v = self.parent_[v]
        for i in range(npts):
            self.mark2[pts[i]] = ep
        v = 0
        while self.mark2[v] != ep:
            nmarked = 0
            nxt = -1
            for j in range(self.nletters):
                c = self.child[v * self.nletters + j]
                if c >= 0 and self.mark[c] == ep:
                    nmarked += 1
                    nxt = c
            if nmarked != 1:
                break
            v = nxt
        return total - self.depth_[v]

    cdef int64_t _tsp(self, int64_t start, int32_t *pts, int64_t npts, int64_t end) except -1 nogil:
        cdef int32_t *buf = <int32_t *> malloc((npts + 2) * sizeof(int32_t))
        cdef int64_t i, w
        if buf == NULL:
            with gil:
                raise MemoryError()
        buf[0] = <int32_t> start
        buf[1] = <int32_t> end
        for i in range(npts):
            buf[i + 2] = pts[i]
        w = self._steiner(buf, npts + 2)
        free(buf)
        return 2 * w - self._dist(start, end)

    def steiner_edges(self, points):
        cdef cnp.ndarray[cnp.int32_t, ndim=1] p = np.ascontiguousarray(points, dtype=np.int32)
        return self._steiner(<int32_t *> p.data, p.shape[0])

    def tsp(self, int64_t start, points, int64_t end):
        cdef cnp.ndarray[cnp.int32_t, ndim=1] p = np.ascontiguousarray(points, dtype=np.int32)
        return self._tsp(start, <int32_t *> p.data, p.shape[0], end)

    def word_length(self):
        cdef int64_t r
        with nogil:
            r = self._tsp(0, self.lit, self.nlit, self.cur) + self._lamp_cost()
        return r

    # -- snapshots / defects -------------------------------------------------------
    def snapshot(self):
        nodes = np.array([self.lit[i] for i in range(self.nlit)], dtype=np.int64)
        vals = np.array([self.val[self.lit[i]] for i in range(self.nlit)], dtype=np.int64)
        return (self.cur, nodes, vals)

    def distance_from(self, snap):
        s_cur, s_nodes, s_vals = snap
        cdef cnp.ndarray[cnp.int64_t, ndim=1] sn = np.ascontiguousarray(s_nodes, dtype=np.int64)
        cdef cnp.ndarray[cnp.int64_t, ndim=1] sv = np.ascontiguousarray(s_vals, dtype=np.int64)
        cdef int64_t scur = s_cur
        cdef int64_t ns = sn.shape[0]
        cdef int64_t i, x, npts = 0, lampc = 0, r
        cdef int d, old
        cdef int32_t ep
        cdef int32_t *pts = <int32_t *> malloc((ns + self.nlit + 1) * sizeof(int32_t))
        if pts == NULL:
            raise MemoryError()
        with nogil:
            self.epoch += 1
            ep = self.epoch
            for i in range(ns):
                x = sn[i]
                self.mark2[x] = ep
                self.scratch[x] = <int32_t> sv[i]
            for i in range(self.nlit):
                x = self.lit[i]
                old = self.scratch[x] if self.mark2[x] == ep else self.ident
                d = self.mul[self.inv[old] * self.order + self.val[x]]
                if d != self.ident:
                    pts[npts] = <int32_t> x
                    npts += 1
                    lampc += self.cost[d]
            for i in range(ns):
                x = sn[i]
                if self.val[x] == self.ident:
                    pts[npts] = <int32_t> x
                    npts += 1
                    lampc += self.cost[self.inv[sv[i]]]
            r = self._tsp(scur, pts, npts, self.cur) + lampc
        free(pts)
        return r

    # -- tracking ------------------------------------------------------------------
    def max_deviation(self, path):
        cdef cnp.ndarray[cnp.int64_t, ndim=1] p = np.ascontiguousarray(path, dtype=np.int64)
        cdef int64_t n = p.shape[0]
        cdef int64_t v, i, best = 0
        cdef int32_t ep
        if n == 0:
            return 0
        cdef int32_t *dist = <int32_t *> malloc(self.nnodes * sizeof(int32_t))
        if dist == NULL:
            raise MemoryError()
        with nogil:
            self.epoch += 1
            ep = self.epoch
            v = p[n - 1]
            while v >= 0:
                self.mark[v] = ep
                v = self.parent_[v]
            dist[0] = 0
            for v in range(1, self.nnodes):
                dist[v] = 0 if self.mark[v] == ep else dist[self.parent_[v]] + 1
            for i in range(n):
                if dist[p[i]] > best:
                    best = dist[p[i]]
        free(dist)
        return best

    def progress_violations(self, path, double k0, int64_t window):
        cdef cnp.ndarray[cnp.int64_t, ndim=1] p = np.ascontiguousarray(path, dtype=np.int64)
        cdef int64_t n = p.shape[0]
        cdef int64_t i, j, gap, count = 0
        with nogil:
            for i in range(n):
                for j in range(i + window, n):
                    # depth difference is a lower bound for the distance
                    gap = self.depth_[p[i]] - self.depth_[p[j]]
                    if gap < 0:
                        gap = -gap
                    if gap * k0 >= (j - i):
                        continue
                    if self._dist(p[i], p[j]) * k0 < (j - i):
                        count += 1
        return count


def held_karp(dist):
    """Fixed-endpoint Held-Karp; see ``_pykernel.held_karp``."""
    cdef cnp.ndarray[cnp.int64_t, ndim=2] d = np.ascontiguousarray(dist, dtype=np.int64)
    cdef int k = d.shape[0] - 2
    if k < 0:
        raise ValueError("distance matrix must include start and end")
    if k == 0:
        return int(d[0, 1]), []
    if k > 24:
        raise ValueError("held_karp supports at most 24 points")
    cdef int64_t nmask = (<int64_t> 1) << k
    cdef int64_t full = nmask - 1
    cdef int64_t *h = <int64_t *> malloc(nmask * k * sizeof(int64_t))
    cdef int64_t *dm = <int64_t *> malloc((k + 2) * (k + 2) * sizeof(int64_t))
    if h == NULL or dm == NULL:
        free(h); free(dm)
        raise MemoryError("held_karp table allocation failed")
    cdef int64_t S, rest, best, cand, target
    cdef int i, j, w = k + 2
    cdef int64_t big = 1 << 62
    for i in range(w):
        for j in range(w):
            dm[i * w + j] = d[i, j]
    order = []
    with nogil:
        for i in range(k):
            h[i] = dm[(i + 1) * w + k + 1]
        for S in range(1, nmask):
            for i in range(k):
                if (S >> i) & 1:
                    continue
                best = big
                for j in range(k):
                    if (S >> j) & 1:
                        cand = dm[(i + 1) * w + j + 1] + h[(S ^ ((<int64_t> 1) << j)) * k + j]
                        if cand < best:
                            best = cand
                h[S * k + i] = best
        best = big
        for j in range(k):
            cand = dm[j + 1] + h[(full ^ ((<int64_t> 1) << j)) * k + j]
            if cand < best:
                best = cand
    rest = full
    target = best
    i = -1
    while rest:
        for j in range(k):
            if (rest >> j) & 1:
                cand = (dm[j + 1] if i < 0 else dm[(i + 1) * w + j + 1]) + h[(rest ^ ((<int64_t> 1) << j)) * k + j]
                if cand == target:
                    order.append(j)
                    rest ^= (<int64_t> 1) << j
                    target = h[rest * k + j]
                    i = j
                    break
    free(h)
    free(dm)
    return int(best), order
