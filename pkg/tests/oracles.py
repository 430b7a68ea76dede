"""Independent reference implementations used by the tests.

None of these share code with the package beyond the formula AST.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import lcm

from specdebug.formula import (Always, And, Atom, Bottom, Eventually, Implies, Not, Or,
                               Predicate, Top, iter_nodes)


# ------------------------------------------------------------ continuous monitor

def _window_hits(lo, hi, lo_closed, hi_closed, piece, unit):
    """Does the piece (point x or open segment (x, x+unit)) meet the window?"""
    kind, x = piece
    if kind == "pt":
        above = x >= lo if lo_closed else x > lo
        below = x <= hi if hi_closed else x < hi
        return above and below
    # an open segment meets a window iff it starts before the window's
    # upper end and ends after its lower end
    return x < hi and x + unit > lo


def reference_evaluate(trace, f, t0=0):
    """Definition-style evaluation over points and open unit segments of
    the common time grid, with windows handled as real intervals."""
    values = list(trace.times) + [trace.duration, Fraction(t0)]
    for _, n in iter_nodes(f):
        if isinstance(n, (Eventually, Always)):
            values += [n.interval.lower, n.interval.upper]
    L = lcm(*(Fraction(v).denominator for v in values))
    unit = Fraction(1, L)
    T = trace.duration
    n = int(T * L)
    pieces = [("pt", Fraction(k, L)) for k in range(n + 1)] + \
             [("seg", Fraction(k, L)) for k in range(n)]

    def sample(key, piece):
        t = piece[1]
        idx = max(i for i, s in enumerate(trace.times) if s <= t)
        return trace.values[key][idx]

    memo = {}

    def holds(g, piece):
        key = (g, piece)
        if key in memo:
            return memo[key]
        if isinstance(g, Top):
            r = True
        elif isinstance(g, Bottom):
            r = False
        elif isinstance(g, Atom):
            r = bool(sample(g.name, piece))
        elif isinstance(g, Predicate):
            r = g.holds(sample(g.variable, piece))
        elif isinstance(g, Not):
            r = not holds(g.child, piece)
        elif isinstance(g, And):
            r = holds(g.left, piece) and holds(g.right, piece)
        elif isinstance(g, Or):
            r = holds(g.left, piece) or holds(g.right, piece)
        elif isinstance(g, Implies):
            r = (not holds(g.left, piece)) or holds(g.right, piece)
        else:
            t = piece[1] if piece[0] == "pt" else piece[1] + unit / 2
            iv = g.interval
            lo, hi = t + iv.lower, t + iv.upper
            lo_c, hi_c = iv.lower_closed, iv.upper_closed
            # clip to [0, T]
            if hi > T:
                hi, hi_c = T, True
            inside = [p for p in pieces if _window_hits(lo, hi, lo_c, hi_c, p, unit)
                      and (p[0] == "pt" or p[1] + unit <= T)]
            if lo > hi or (lo == hi and not (lo_c and hi_c)):
                inside = []
            if isinstance(g, Eventually):
                r = any(holds(g.child, p) for p in inside)
            else:
                r = all(holds(g.child, p) for p in inside)
        memo[key] = r
        return r

    return holds(f, ("pt", Fraction(t0)))


# ------------------------------------------------------------ grid brute force

@lru_cache(maxsize=None)
def _bit_masks(nbits: int) -> tuple[int, ...]:
    """mask[b] has bit i set iff bit b of the integer i is set, i < 2**nbits."""
    total = 1 << nbits
    masks = []
    for b in range(nbits):
        block = 1 << b
        pattern = ((1 << block) - 1) << block        # block zeros then block ones
        period = 2 * block
        m = 0
        for start in range(0, total, period):
            m |= pattern << start
        masks.append(m)
    return tuple(masks)


class GridOracle:
    """Every boolean grid trace over ``atoms`` on points 0..N at once.

    Trace number i assigns atom j at point k the bit j*(N+1)+k of i; the
    value holds on [k, k+1). Formulas are evaluated on all points and
    open unit segments with big-integer bitsets, one bit per trace.
    """

    def __init__(self, atoms, N: int, mutex=()):
        self.atoms = sorted(atoms)
        self.N = N
        nbits = len(self.atoms) * (N + 1)
        self.count = 1 << nbits
        self.all = (1 << self.count) - 1
        masks = _bit_masks(nbits)
        self.atom_mask = {a: [masks[j * (N + 1) + k] for k in range(N + 1)]
                          for j, a in enumerate(self.atoms)}
        valid = self.all
        for group in mutex:
            members = [m for m in group if m in self.atom_mask]
            for k in range(N + 1):
                for a, b in itertools.combinations(members, 2):
                    valid &= ~(self.atom_mask[a][k] & self.atom_mask[b][k]) & self.all
        self.valid = valid
        self.memo = {}

    def truth(self, f, pos: int) -> int:
        """Bitset of traces satisfying f at doubled position pos."""
        key = (f, pos)
        if key in self.memo:
            return self.memo[key]
        if isinstance(f, Top):
            r = self.all
        elif isinstance(f, Bottom):
            r = 0
        elif isinstance(f, Atom):
            r = self.atom_mask[f.name][pos // 2]
        elif isinstance(f, Not):
            r = self.all & ~self.truth(f.child, pos)
        elif isinstance(f, And):
            r = self.truth(f.left, pos) & self.truth(f.right, pos)
        elif isinstance(f, Or):
            r = self.truth(f.left, pos) | self.truth(f.right, pos)
        elif isinstance(f, Implies):
            r = (self.all & ~self.truth(f.left, pos)) | self.truth(f.right, pos)
        else:
            iv = f.interval
            assert iv.is_closed and iv.lower.denominator == 1 and iv.upper.denominator == 1
            lo = pos + 2 * int(iv.lower)
            hi = min(pos + 2 * int(iv.upper), 2 * self.N)
            window = range(lo, hi + 1)
            if isinstance(f, Eventually):
                r = 0
                for p in window:
                    r |= self.truth(f.child, p)
            else:
                r = self.all
                for p in window:
                    r &= self.truth(f.child, p)
        self.memo[key] = r
        return r

    def models(self, f) -> int:
        return self.truth(f, 0) & self.valid

    def trace_bits(self, i: int) -> dict:
        return {a: [bool(i >> (j * (self.N + 1) + k) & 1) for k in range(self.N + 1)]
                for j, a in enumerate(self.atoms)}


def grid_satisfiable(f, atoms, N, mutex=()) -> bool:
    return GridOracle(atoms, N, mutex).models(f) != 0


# ------------------------------------------------------------ predicate cells

def sample_points(thresholds):
    """Every threshold plus points strictly between and beyond them."""
    ts = sorted(set(Fraction(t) for t in thresholds))
    if not ts:
        return [Fraction(0)]
    pts = [ts[0] - 1] + ts + [ts[-1] + 1]
    pts += [(a + b) / 2 for a, b in zip(ts, ts[1:])]
    return sorted(set(pts))


def predicate_signature(preds, x):
    return tuple(p.holds(x) for p in preds)
