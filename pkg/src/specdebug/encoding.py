"""Unfold an NNF formula over the discrete time grid into CNF.

Grid point k stands for time k*step, for k = 0..N with N*step the formula
horizon. Variables 1..N_atoms*(N+1) are atom values, numbered time-major
and then by sorted atom name; definition variables follow. Each composite
subformula at a grid point gets a definition variable d with one-way
clauses ``d -> meaning``, which is enough because every context in an NNF
formula is positive.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError
from .formula import (Always, And, Atom, Bottom, Eventually, Formula, Not, Or,
                      Predicate, Top, atoms, horizon, is_nnf, iter_nodes)
from .intervals import format_number

# constants returned by the unfolder in place of literals
TRUE_LIT = "T"
FALSE_LIT = "F"


@dataclass
class GridEncoding:
    step: Fraction
    points: int                      # N; grid is 0..N
    atom_names: list[str]
    clauses: list[list[int]] = field(default_factory=list)
    nvars: int = 0
    root: object = None

    def __post_init__(self):
        self._index = {name: j for j, name in enumerate(self.atom_names)}

    def atom_var(self, name: str, k: int) -> int:
        return 1 + k * len(self.atom_names) + self._index[name]

    def atom_map(self):
        """Yield ``(name, k, var)`` for every atom variable."""
        for k in range(self.points + 1):
            for j, name in enumerate(self.atom_names):
                yield name, k, 1 + k * len(self.atom_names) + j

    def to_dimacs(self) -> str:
        lines = [f"c atom {name} t={format_number(k * self.step)} var={v}"
                 for name, k, v in self.atom_map()]
        lines.append(f"p cnf {self.nvars} {len(self.clauses)}")
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def check_preconditions(f: Formula, step: Fraction, horizon_cap=None) -> int:
    """Validate engine restrictions and return the number of grid steps."""
    if step <= 0:
        raise PreconditionError(f"grid step must be positive, got {format_number(step)}")
    if not is_nnf(f):
        raise PreconditionError("formula must be in negation normal form")
    for _, node in iter_nodes(f):
        if isinstance(node, Predicate):
            raise PreconditionError(
                f"predicate ({node.key}) must be abstracted to atoms before solving")
        if isinstance(node, (Eventually, Always)):
            iv = node.interval
            if not iv.is_closed:
                raise PreconditionError(f"open interval {iv} is not supported by the engine")
            for bound in (iv.lower, iv.upper):
                if (bound / step).denominator != 1:
                    raise PreconditionError(
                        f"interval endpoint {format_number(bound)} is not a multiple "
                        f"of the grid step {format_number(step)}")
    h = horizon(f)
    if horizon_cap is not None and h > horizon_cap:
        raise PreconditionError(
            f"horizon {format_number(h)} exceeds cap {format_number(Fraction(horizon_cap))}")
    return int(h / step)


class _Unfolder:
    def __init__(self, enc: GridEncoding):
        self.enc = enc
        self.memo: dict = {}

    def fresh(self) -> int:
        self.enc.nvars += 1
        return self.enc.nvars

    def lit(self, f: Formula, k: int):
        key = (f, k)
        hit = self.memo.get(key)
        if hit is None:
            hit = self._lit(f, k)
            self.memo[key] = hit
        return hit

    def _lit(self, f: Formula, k: int):
        if isinstance(f, Top):
            return TRUE_LIT
        if isinstance(f, Bottom):
            return FALSE_LIT
        if isinstance(f, Atom):
            return self.enc.atom_var(f.name, k)
        if isinstance(f, Not):
            return -self.enc.atom_var(f.child.name, k)
        if isinstance(f, And):
            return self.conjunction([self.lit(g, k) for g in _chain(f, And)])
        if isinstance(f, Or):
            return self.disjunction([self.lit(g, k) for g in _chain(f, Or)])
        if isinstance(f, (Eventually, Always)):
            step = self.enc.step
            lo = k + int(f.interval.lower / step)
            hi = min(self.enc.points, k + int(f.interval.upper / step))
            lits = [self.lit(f.child, j) for j in range(lo, hi + 1)]
            if isinstance(f, Eventually):
                return self.disjunction(lits)
            return self.conjunction(lits)
        raise TypeError(f"unexpected node {f!r}")

    def conjunction(self, lits):
        if FALSE_LIT in lits:
            return FALSE_LIT
        lits = _dedupe(x for x in lits if x != TRUE_LIT)
        if not lits:
            return TRUE_LIT
        if len(lits) == 1:
            return lits[0]
        d = self.fresh()
        self.enc.clauses.extend([-d, x] for x in lits)
        return d

    def disjunction(self, lits):
        if TRUE_LIT in lits:
            return TRUE_LIT
        lits = _dedupe(x for x in lits if x != FALSE_LIT)
        if not lits:
            return FALSE_LIT
        if len(lits) == 1:
            return lits[0]
        d = self.fresh()
        self.enc.clauses.append([-d] + lits)
        return d


def _chain(f: Formula, kind) -> list[Formula]:
    if isinstance(f, kind):
        return _chain(f.left, kind) + _chain(f.right, kind)
    return [f]


def _dedupe(lits) -> list:
    seen = set()
    out = []
    for x in lits:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def build(f: Formula, mutex, points: int, step: Fraction, unfolder=_Unfolder) -> GridEncoding:
    """Atom variables, mutex clauses and the unfolded root over positions
    0..points."""
    used = set(atoms(f))
    groups = [g for g in mutex if used & set(g.members)]
    names = sorted(used.union(*(set(g.members) for g in groups)))
    enc = GridEncoding(step, points, names)
    enc.nvars = len(names) * (points + 1)
    for g in groups:
        members = sorted(set(g.members))
        for k in range(points + 1):
            vs = [enc.atom_var(m, k) for m in members]
            for i in range(len(vs)):
                for j in range(i + 1, len(vs)):
                    enc.clauses.append([-vs[i], -vs[j]])
            if getattr(g, "exhaustive", False):
                enc.clauses.append(vs)
    root = unfolder(enc).lit(f, 0)
    enc.root = root
    if root == FALSE_LIT:
        enc.nvars += 1
        enc.clauses += [[enc.nvars], [-enc.nvars]]
    elif root != TRUE_LIT:
        enc.clauses.append([root])
    return enc


def encode(f: Formula, mutex=(), step=Fraction(1), horizon_cap=None) -> GridEncoding:
    step = Fraction(step)
    n = check_preconditions(f, step, horizon_cap)
    return build(f, mutex, n, step)
