"""Satisfiability and entailment of bounded MITL(F, G) under grid semantics.

The trace universe is piecewise-constant boolean traces whose values change
only at multiples of the grid step, over ``[0, horizon]``. SAT answers come
with a witness trace that the continuous-time monitor accepts; UNSAT
answers are exact for the grid universe.
"""
from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ._backend import BACKEND, kernels
from .encoding import encode
from .formula import And, Formula, negate, to_nnf
from .intervals import format_number, to_fraction
from .trace import TimedTrace


class Status(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class GridConfig:
    step: Fraction = Fraction(1)
    horizon_cap: Fraction | None = None
    refine_check: bool = False

    def __post_init__(self):
        step = to_fraction(self.step)
        if step <= 0:
            raise ValueError(f"grid step must be positive, got {format_number(step)}")
        object.__setattr__(self, "step", step)
        if self.horizon_cap is not None:
            object.__setattr__(self, "horizon_cap", to_fraction(self.horizon_cap))

    def to_json(self) -> dict:
        return {"gridStep": format_number(self.step),
                "horizonCap": None if self.horizon_cap is None else format_number(self.horizon_cap),
                "refineCheck": self.refine_check}


@dataclass
class SatVerdict:
    status: Status
    witness: TimedTrace | None = None
    stats: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    @property
    def sat(self) -> bool:
        return self.status is Status.SAT


def _solve(f: Formula, mutex, step: Fraction, cap) -> SatVerdict:
    start = time.perf_counter()
    enc = encode(f, mutex, step, cap)
    sat, model, stats = kernels.solve_cnf(enc.nvars, enc.clauses)
    stats = dict(stats, gridPoints=enc.points + 1, atoms=len(enc.atom_names),
                 backend=BACKEND, seconds=time.perf_counter() - start)
    if not sat:
        return SatVerdict(Status.UNSAT, None, stats)
    changes = {}
    for name in enc.atom_names:
        pts = []
        last = None
        for k in range(enc.points + 1):
            value = model[enc.atom_var(name, k)]
            if value != last:
                pts.append((k * step, value))
                last = value
        changes[name] = pts
    witness = TimedTrace.from_changes(enc.points * step, changes, name="witness")
    return SatVerdict(Status.SAT, witness, stats)


def check_sat(f: Formula, mutex=(), cfg: GridConfig = GridConfig()) -> SatVerdict:
    """Decide ``f`` (NNF, closed grid-aligned intervals, atoms only)."""
    verdict = _solve(f, mutex, cfg.step, cfg.horizon_cap)
    if cfg.refine_check:
        finer = _solve(f, mutex, cfg.step / 2, None)
        if finer.status != verdict.status:
            msg = (f"grid refinement changed the verdict: {verdict.status} at step "
                   f"{format_number(cfg.step)}, {finer.status} at step "
                   f"{format_number(cfg.step / 2)}")
            warnings.warn(msg, RuntimeWarning, stacklevel=2)
            verdict.diagnostics.append(msg)
    return verdict


def entailment_query(lhs: Formula, rhs: Formula) -> Formula:
    return to_nnf(And(lhs, negate(rhs)))


def entails_verdict(lhs: Formula, rhs: Formula, mutex=(), cfg: GridConfig = GridConfig()) -> SatVerdict:
    return check_sat(entailment_query(lhs, rhs), mutex, cfg)


def entails(lhs: Formula, rhs: Formula, mutex=(), cfg: GridConfig = GridConfig()) -> bool:
    """True iff every grid trace satisfying ``lhs`` satisfies ``rhs``."""
    return not entails_verdict(lhs, rhs, mutex, cfg).sat


def export_dimacs(f: Formula, mutex=(), cfg: GridConfig = GridConfig()) -> str:
    return encode(f, mutex, cfg.step, cfg.horizon_cap).to_dimacs()


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    nvars = 0
    clauses, cur = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            nvars = int(line.split()[2])
            continue
        for tok in line.split():
            x = int(tok)
            if x == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(x)
    return nvars, clauses
