"""Finite timed traces with piecewise-constant (sample-and-hold) values."""
from __future__ import annotations

import csv
import io
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

from .errors import TraceError
from .intervals import format_number, to_fraction

_TRUE_TEXT = {"true", "t", "yes"}
_FALSE_TEXT = {"false", "f", "no"}


@dataclass(frozen=True)
class TimedTrace:
    """Samples at strictly increasing timestamps starting at 0.

    The value at time t is the sample taken at the greatest timestamp not
    after t. Boolean atoms hold ``bool`` samples; real variables hold
    ``Fraction`` samples.
    """
    times: tuple[Fraction, ...]
    values: Mapping[str, tuple]
    duration: Fraction
    name: str = field(default="", compare=False)

    def __post_init__(self):
        times = tuple(to_fraction(t) for t in self.times)
        duration = to_fraction(self.duration)
        if not times or times[0] != 0:
            raise TraceError("trace timestamps must start at 0")
        for a, b in zip(times, times[1:]):
            if b <= a:
                raise TraceError(f"timestamps must be strictly increasing ({a} then {b})")
        if times[-1] > duration:
            raise TraceError(f"timestamp {times[-1]} exceeds duration {duration}")
        values = {}
        for key, column in self.values.items():
            column = tuple(_coerce(v) for v in column)
            if len(column) != len(times):
                raise TraceError(f"column {key!r} has {len(column)} samples, expected {len(times)}")
            values[key] = column
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "duration", duration)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_changes(cls, duration, changes: Mapping[str, Iterable[tuple]], name: str = ""):
        """Build a trace from per-signal lists of ``(time, value)`` change
        points. Each signal must define its value at time 0."""
        per_signal = {k: sorted((to_fraction(t), v) for t, v in pts) for k, pts in changes.items()}
        times = sorted({t for pts in per_signal.values() for t, _ in pts} | {Fraction(0)})
        values = {}
        for key, pts in per_signal.items():
            if not pts or pts[0][0] != 0:
                raise TraceError(f"signal {key!r} has no value at time 0")
            ptimes = [t for t, _ in pts]
            values[key] = [pts[bisect_right(ptimes, t) - 1][1] for t in times]
        return cls(tuple(times), values, to_fraction(duration), name)

    @property
    def signals(self) -> list[str]:
        return sorted(self.values)

    def __len__(self):
        return len(self.times)

    def column(self, key: str) -> tuple:
        try:
            return self.values[key]
        except KeyError:
            raise TraceError(f"trace has no signal {key!r}") from None

    def index_at(self, t) -> int:
        t = to_fraction(t)
        if not 0 <= t <= self.duration:
            raise TraceError(f"time {t} outside [0, {self.duration}]")
        return bisect_right(self.times, t) - 1

    def value_at(self, key: str, t):
        return self.column(key)[self.index_at(t)]

    def with_signals(self, extra: Mapping[str, Iterable]) -> "TimedTrace":
        merged = dict(self.values)
        merged.update({k: tuple(v) for k, v in extra.items()})
        return TimedTrace(self.times, merged, self.duration, self.name)

    # --------------------------------------------------------------- csv

    def to_csv(self, target=None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        keys = self.signals
        writer.writerow(["time"] + keys)
        for i, t in enumerate(self.times):
            writer.writerow([format_number(t)] + [_text(self.values[k][i]) for k in keys])
        text = buf.getvalue()
        if target is not None:
            Path(target).write_text(text, encoding="utf-8")
        return text


def _coerce(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, float):
        return Fraction(str(v))
    return to_fraction(v)


def _text(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    return format_number(v)


def _parse_cell(text: str, where: str):
    s = text.strip()
    low = s.lower()
    if low in _TRUE_TEXT:
        return True
    if low in _FALSE_TEXT:
        return False
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise TraceError(f"{where}: cannot parse value {text!r}") from None


def parse_csv(text: str, duration=None, name: str = "") -> TimedTrace:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise TraceError(f"{name or 'trace'}: empty file")
    header = [h.strip() for h in rows[0]]
    if not header or header[0] != "time":
        raise TraceError(f"{name or 'trace'}: header must start with 'time'")
    if len(set(header)) != len(header):
        raise TraceError(f"{name or 'trace'}: duplicate column names")
    times, columns = [], {h: [] for h in header[1:]}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise TraceError(f"{name or 'trace'} line {lineno}: expected {len(header)} fields")
        where = f"{name or 'trace'} line {lineno}"
        t = _parse_cell(row[0], where)
        if isinstance(t, bool):
            raise TraceError(f"{where}: bad timestamp {row[0]!r}")
        times.append(t)
        for h, cell in zip(header[1:], row[1:]):
            columns[h].append(_parse_cell(cell, where))
    if not times:
        raise TraceError(f"{name or 'trace'}: no samples")
    T = times[-1] if duration is None else to_fraction(duration)
    return TimedTrace(tuple(times), columns, T, name)


def load_csv(path, duration=None) -> TimedTrace:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise TraceError(f"cannot read trace {path}: {exc.strerror}") from None
    return parse_csv(text, duration, name=p.name)


def abstract_trace(trace: TimedTrace, table) -> TimedTrace:
    """Boolean view of a real-valued trace: one column per atom in the table.
    Boolean columns already present in the trace are kept."""
    kept = {k: v for k, v in trace.values.items()
            if all(isinstance(x, bool) for x in v)}
    for atom in table.atoms.values():
        try:
            column = trace.values[atom.variable]
        except KeyError:
            raise TraceError(f"trace {trace.name or '<unnamed>'} lacks variable {atom.variable!r}") from None
        kept[atom.name] = tuple(atom.holds(v) for v in column)
    return TimedTrace(trace.times, kept, trace.duration, trace.name)
