# cython: boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled hot kernels; same API and results as ``_kernels_py``."""

from libcpp.vector cimport vector

from . import _kernels_py

BACKEND = "cython"

ctypedef long long i64

cdef i64 LIMIT = (<i64>1) << 60


cdef bint _fits(seq):
    for x in seq:
        if x > LIMIT or x < -LIMIT:
            return False
    return True


cdef vector[i64] _vec(seq):
    cdef vector[i64] v
    v.reserve(len(seq))
    for x in seq:
        v.push_back(x)
    return v


cdef list _list(vector[i64]& v):
    return [v[k] for k in range(v.size())]


cdef inline void _push(vector[i64]& out, i64 lo, i64 hi):
    cdef size_t n = out.size()
    if n and lo <= out[n - 1] + 1:
        if hi > out[n - 1]:
            out[n - 1] = hi
    else:
        out.push_back(lo)
        out.push_back(hi)


def from_runs(starts, flags, top):
    if not (_fits(starts) and _fits((top,))):
        return _kernels_py.from_runs(starts, flags, top)
    cdef vector[i64] s
    cdef vector[char] f
    cdef vector[i64] out
    cdef Py_ssize_t n, i, j
    cdef i64 t = top
    s = _vec(starts)
    n = s.size()
    f.reserve(n)
    for x in flags:
        # plain statements: a conditional expression passed to push_back
        # compiles to a dangling reference
        if x:
            f.push_back(1)
        else:
            f.push_back(0)
    i = 0
    while i < n:
        if f[i]:
            j = i
            while j + 1 < n and f[j + 1]:
                j += 1
            out.push_back(s[i])
            if j + 1 < n:
                out.push_back(s[j + 1] - 1)
            else:
                out.push_back(t)
            i = j + 1
        else:
            i += 1
    return _list(out)


def union(a, b):
    if not (_fits(a) and _fits(b)):
        return _kernels_py.union(a, b)
    cdef vector[i64] x = _vec(a), y = _vec(b), out
    cdef size_t i = 0, j = 0, na = x.size(), nb = y.size()
    cdef i64 lo, hi
    while i < na or j < nb:
        if j >= nb or (i < na and x[i] <= y[j]):
            lo = x[i]
            hi = x[i + 1]
            i += 2
        else:
            lo = y[j]
            hi = y[j + 1]
            j += 2
        _push(out, lo, hi)
    return _list(out)


def intersect(a, b):
    if not (_fits(a) and _fits(b)):
        return _kernels_py.intersect(a, b)
    cdef vector[i64] x = _vec(a), y = _vec(b), out
    cdef size_t i = 0, j = 0, na = x.size(), nb = y.size()
    cdef i64 lo, hi
    while i < na and j < nb:
        lo = x[i]
        if y[j] > lo:
            lo = y[j]
        hi = x[i + 1]
        if y[j + 1] < hi:
            hi = y[j + 1]
        if lo <= hi:
            out.push_back(lo)
            out.push_back(hi)
        if x[i + 1] < y[j + 1]:
            i += 2
        else:
            j += 2
    return _list(out)


def complement(a, top):
    if not (_fits(a) and _fits((top,))):
        return _kernels_py.complement(a, top)
    cdef vector[i64] x = _vec(a), out
    cdef i64 prev = 0, t = top
    cdef size_t k
    for k in range(0, x.size(), 2):
        if x[k] > prev:
            out.push_back(prev)
            out.push_back(x[k] - 1)
        prev = x[k + 1] + 1
    if prev <= t:
        out.push_back(prev)
        out.push_back(t)
    return _list(out)


def eventually(a, il, ih, top):
    if not (_fits(a) and _fits((il, ih, top))):
        return _kernels_py.eventually(a, il, ih, top)
    cdef vector[i64] x = _vec(a), out
    cdef i64 l = il, h = ih, t = top, lo, hi
    cdef i64 odd_l = l & 1, odd_h = h & 1
    cdef size_t k
    for k in range(0, x.size(), 2):
        lo = x[k] - h - (x[k] & odd_h)
        hi = x[k + 1] - l + (x[k + 1] & odd_l)
        if lo < 0:
            lo = 0
        if hi > t:
            hi = t
        if lo > hi:
            continue
        _push(out, lo, hi)
    return _list(out)


def contains(a, e):
    return _kernels_py.contains(a, e)


# ------------------------------------------------------------ CDCL

cdef class _Solver:
    cdef int nvars
    cdef vector[signed char] lv
    cdef vector[int] level
    cdef vector[int] reason
    cdef vector[signed char] phase
    cdef vector[char] seen
    cdef vector[vector[int]] watches
    cdef vector[int] lits       # flat clause storage
    cdef vector[int] start
    cdef vector[int] size
    cdef vector[int] trail
    cdef vector[int] trail_lim
    cdef long long decisions, propagations, conflicts

    def __cinit__(self, int nvars):
        self.nvars = nvars
        self.lv.assign(2 * nvars + 2, -1)
        self.level.assign(nvars + 1, 0)
        self.reason.assign(nvars + 1, -1)
        self.phase.assign(nvars + 1, 0)
        self.seen.assign(nvars + 1, 0)
        self.watches.resize(2 * nvars + 2)

    cdef int add(self, vector[int]& c):
        cdef int ci = self.start.size()
        self.start.push_back(self.lits.size())
        self.size.push_back(c.size())
        for x in c:
            self.lits.push_back(x)
        self.watches[c[0]].push_back(ci)
        self.watches[c[1]].push_back(ci)
        return ci

    cdef inline void assign(self, int lit, int why):
        cdef int v = lit >> 1
        self.lv[lit] = 1
        self.lv[lit ^ 1] = 0
        self.level[v] = self.trail_lim.size()
        self.reason[v] = why
        self.trail.push_back(lit)

    cdef int propagate(self, size_t* qhead):
        cdef int fl, ci, first, k, tmp, conflict = -1
        cdef size_t i, j, n, s, sz
        cdef int* c
        cdef bint moved
        while qhead[0] < self.trail.size():
            fl = self.trail[qhead[0]] ^ 1
            qhead[0] += 1
            self.propagations += 1
            i = 0
            j = 0
            n = self.watches[fl].size()
            while i < n:
                ci = self.watches[fl][i]
                i += 1
                s = self.start[ci]
                sz = self.size[ci]
                c = &self.lits[s]
                if c[0] == fl:
                    c[0] = c[1]
                    c[1] = fl
                first = c[0]
                if self.lv[first] == 1:
                    self.watches[fl][j] = ci
                    j += 1
                    continue
                moved = False
                for k in range(2, sz):
                    if self.lv[c[k]] != 0:
                        c[1] = c[k]
                        c[k] = fl
                        self.watches[c[1]].push_back(ci)
                        moved = True
                        break
                if moved:
                    continue
                self.watches[fl][j] = ci
                j += 1
                if self.lv[first] == 0:
                    conflict = ci
                    while i < n:
                        self.watches[fl][j] = self.watches[fl][i]
                        j += 1
                        i += 1
                    break
                self.assign(first, ci)
            self.watches[fl].resize(j)
            if conflict >= 0:
                return conflict
        return -1

    cdef bint run(self):
        cdef size_t qhead = 0
        cdef int dpos = 1, conflict, cur, counter, p, v, q, k, best, back, ci, lit
        cdef Py_ssize_t idx
        cdef size_t s, sz, m, stop
        cdef vector[int] learnt
        while True:
            conflict = self.propagate(&qhead)
            if conflict >= 0:
                self.conflicts += 1
                cur = self.trail_lim.size()
                if cur == 0:
                    return False
                learnt.clear()
                learnt.push_back(0)
                counter = 0
                p = -1
                idx = self.trail.size() - 1
                ci = conflict
                while True:
                    s = self.start[ci]
                    sz = self.size[ci]
                    for m in range(sz):
                        q = self.lits[s + m]
                        if q == p:
                            continue
                        v = q >> 1
                        if not self.seen[v] and self.level[v] > 0:
                            self.seen[v] = 1
                            if self.level[v] == cur:
                                counter += 1
                            else:
                                learnt.push_back(q)
                    while not self.seen[self.trail[idx] >> 1]:
                        idx -= 1
                    p = self.trail[idx]
                    idx -= 1
                    self.seen[p >> 1] = 0
                    counter -= 1
                    if counter == 0:
                        break
                    ci = self.reason[p >> 1]
                learnt[0] = p ^ 1
                for m in range(learnt.size()):
                    self.seen[learnt[m] >> 1] = 0
                back = 0
                if learnt.size() > 1:
                    best = 1
                    for k in range(2, learnt.size()):
                        if self.level[learnt[k] >> 1] > self.level[learnt[best] >> 1]:
                            best = k
                    q = learnt[1]
                    learnt[1] = learnt[best]
                    learnt[best] = q
                    back = self.level[learnt[1] >> 1]
                stop = self.trail_lim[back]
                while self.trail.size() > stop:
                    lit = self.trail.back()
                    self.trail.pop_back()
                    v = lit >> 1
                    self.phase[v] = lit & 1
                    self.lv[lit] = -1
                    self.lv[lit ^ 1] = -1
                    self.reason[v] = -1
                    if v < dpos:
                        dpos = v
                self.trail_lim.resize(back)
                qhead = self.trail.size()
                if learnt.size() == 1:
                    self.assign(learnt[0], -1)
                else:
                    ci = self.add(learnt)
                    self.assign(learnt[0], ci)
                continue
            while dpos <= self.nvars and self.lv[2 * dpos] != -1:
                dpos += 1
            if dpos > self.nvars:
                return True
            self.decisions += 1
            self.trail_lim.push_back(self.trail.size())
            self.assign(2 * dpos + self.phase[dpos], -1)


def solve_cnf(nvars, clauses):
    """Decide a CNF given as lists of nonzero DIMACS literals.

    Returns ``(sat, model, stats)`` where ``model[v]`` is the value of
    variable v (index 0 unused) when sat.
    """
    stats = {"vars": nvars, "clauses": len(clauses), "decisions": 0,
             "propagations": 0, "conflicts": 0}
    cdef _Solver S = _Solver(nvars)
    cdef vector[int] c
    cdef int lit, v
    units = []
    for raw in clauses:
        seen = set()
        taut = False
        c.clear()
        for x in raw:
            v = x if x > 0 else -x
            if v == 0 or v > nvars:
                raise ValueError(f"literal {x} out of range")
            lit = 2 * v + (1 if x < 0 else 0)
            if lit ^ 1 in seen:
                taut = True
                break
            if lit not in seen:
                seen.add(lit)
                c.push_back(lit)
        if taut:
            continue
        if c.size() == 0:
            return False, None, stats
        if c.size() == 1:
            units.append(c[0])
            continue
        S.add(c)
    for lit in units:
        if S.lv[lit] == 0:
            return False, None, stats
        if S.lv[lit] == -1:
            S.assign(lit, -1)
    sat = S.run()
    stats["decisions"] = S.decisions
    stats["propagations"] = S.propagations
    stats["conflicts"] = S.conflicts
    if not sat:
        return False, None, stats
    model = [False] * (nvars + 1)
    for v in range(1, nvars + 1):
        model[v] = S.lv[2 * v] == 1
    return True, model, stats
