"""Offline evaluation of formulas on piecewise-constant timed traces.

Times are scaled to integers by the least common denominator of every time
value involved (timestamps, duration, interval bounds, query time). On the
scaled axis, position ``2x`` stands for the instant x and ``2x + 1`` for the
open segment (x, x + 1). A piecewise-constant trace makes every
subformula's truth constant on each of those pieces, so truth sets are
exact finite unions of integer ranges and temporal operators become range
shifts.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from ._backend import kernels
from .errors import MonitorError
from .formula import (Always, And, Atom, Bottom, Eventually, Formula, Implies,
                      Not, Or, Predicate, Top, conj, intervals_of)
from .intervals import Interval, format_number, to_fraction
from .trace import TimedTrace


class _Lattice:
    def __init__(self, trace: TimedTrace, f: Formula, extra=()):
        values = list(trace.times) + [trace.duration] + list(extra)
        for iv in intervals_of(f):
            values += [iv.lower, iv.upper]
        self.scale = lcm(*(v.denominator for v in values)) if values else 1
        self.trace = trace
        self.starts = [self.pos(t) for t in trace.times]
        self.top = self.pos(trace.duration)
        self.memo: dict = {}

    def pos(self, t: Fraction) -> int:
        return 2 * int(t * self.scale)

    def offsets(self, iv: Interval) -> tuple[int, int]:
        il = self.pos(iv.lower) + (0 if iv.lower_closed else 1)
        ih = self.pos(iv.upper) - (0 if iv.upper_closed else 1)
        return il, ih

    def column_set(self, column, test):
        return kernels.from_runs(self.starts, [test(v) for v in column], self.top)

    def truth(self, f: Formula) -> list:
        try:
            return self.memo[f]
        except KeyError:
            pass
        out = self._truth(f)
        self.memo[f] = out
        return out

    def _truth(self, f: Formula) -> list:
        k = kernels
        if isinstance(f, Top):
            return [0, self.top]
        if isinstance(f, Bottom):
            return []
        if isinstance(f, Atom):
            column = self.trace.values.get(f.name)
            if column is None:
                raise MonitorError(f"unknown atom {f.name!r} (trace has {', '.join(self.trace.signals) or 'no signals'})")
            return self.column_set(column, bool)
        if isinstance(f, Predicate):
            column = self.trace.values.get(f.variable)
            if column is None:
                raise MonitorError(f"unknown variable {f.variable!r} in predicate {f.key}")
            return self.column_set(column, lambda v: f.holds(int(v) if isinstance(v, bool) else v))
        if isinstance(f, Not):
            return k.complement(self.truth(f.child), self.top)
        if isinstance(f, And):
            return k.intersect(self.truth(f.left), self.truth(f.right))
        if isinstance(f, Or):
            return k.union(self.truth(f.left), self.truth(f.right))
        if isinstance(f, Implies):
            return k.union(k.complement(self.truth(f.left), self.top), self.truth(f.right))
        if isinstance(f, Eventually):
            il, ih = self.offsets(f.interval)
            return k.eventually(self.truth(f.child), il, ih, self.top)
        if isinstance(f, Always):
            il, ih = self.offsets(f.interval)
            bad = k.complement(self.truth(f.child), self.top)
            return k.complement(k.eventually(bad, il, ih, self.top), self.top)
        raise TypeError(f"not a formula: {f!r}")

    def interval_text(self, lo: int, hi: int) -> str:
        def t(p):
            return format_number(Fraction(p // 2, self.scale))
        left = f"[{t(lo)}" if lo % 2 == 0 else f"({t(lo)}"
        right = f"{t(hi)}]" if hi % 2 == 0 else f"{t(hi + 1)})"
        return f"{left},{right}"


def evaluate(trace: TimedTrace, f: Formula, t0=0) -> bool:
    """Truth of ``f`` on ``trace`` at time ``t0``.

    Temporal windows are ``(t + I)`` intersected with ``[0, duration]``; an
    empty window makes F false and G true. Implications are evaluated
    classically, so the formula need not be in negation normal form.
    Predicate leaves are evaluated directly on real-valued columns.
    """
    t0 = to_fraction(t0)
    if not 0 <= t0 <= trace.duration:
        raise MonitorError(f"t0={format_number(t0)} outside [0, {format_number(trace.duration)}]")
    lat = _Lattice(trace, f, (t0,))
    return kernels.contains(lat.truth(f), lat.pos(t0))


def evaluate_many(trace: TimedTrace, formulas, t0=0) -> list[bool]:
    """Evaluate several formulas sharing one lattice (and subformula cache)."""
    formulas = list(formulas)
    t0 = to_fraction(t0)
    if not 0 <= t0 <= trace.duration:
        raise MonitorError(f"t0={format_number(t0)} outside [0, {format_number(trace.duration)}]")
    lat = _Lattice(trace, conj(formulas), (t0,))
    p = lat.pos(t0)
    return [kernels.contains(lat.truth(f), p) for f in formulas]


def satisfaction_intervals(trace: TimedTrace, f: Formula) -> list[str]:
    """Human-readable maximal time intervals on which ``f`` holds."""
    lat = _Lattice(trace, f)
    s = lat.truth(f)
    return [lat.interval_text(s[i], s[i + 1]) for i in range(0, len(s), 2)]
