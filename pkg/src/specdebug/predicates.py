"""Turn overlapping single-variable predicates into mutually exclusive atoms.

Each predicate denotes a region of the real line. Overlapping regions on
the same variable are split repeatedly into intersection and differences
until the remaining cells are pairwise disjoint; every original predicate is
then rewritten as the disjunction of the cells it covers.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import DecompositionError
from .formula import Atom, Formula, Predicate, disj, predicates
from .intervals import format_number

INF = math.inf


class Span(NamedTuple):
    lo: Fraction | float
    hi: Fraction | float
    lo_closed: bool
    hi_closed: bool

    def contains(self, x) -> bool:
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above and below

    def __str__(self):
        lo = "-inf" if self.lo == -INF else format_number(self.lo)
        hi = "inf" if self.hi == INF else format_number(self.hi)
        return f"{'[' if self.lo_closed else '('}{lo},{hi}{']' if self.hi_closed else ')'}"


Region = tuple[Span, ...]


def _lower_key(s: Span):
    return (s.lo, 0 if s.lo_closed else 1)


def _upper_key(s: Span):
    return (s.hi, 1 if s.hi_closed else 0)


def span_is_empty(s: Span) -> bool:
    return s.lo > s.hi or (s.lo == s.hi and not (s.lo_closed and s.hi_closed))


def span_intersect(a: Span, b: Span) -> Span | None:
    lo = max(a, b, key=_lower_key)
    hi = min(a, b, key=_upper_key)
    s = Span(lo.lo, hi.hi, lo.lo_closed, hi.hi_closed)
    return None if span_is_empty(s) else s


def normalize(spans: Iterable[Span]) -> Region:
    """Sort and merge overlapping or touching spans."""
    items = sorted((s for s in spans if not span_is_empty(s)), key=_lower_key)
    out: list[Span] = []
    for s in items:
        if out:
            cur = out[-1]
            touching = s.lo < cur.hi or (s.lo == cur.hi and (cur.hi_closed or s.lo_closed))
            if touching:
                hi = max(cur, s, key=_upper_key)
                out[-1] = Span(cur.lo, hi.hi, cur.lo_closed, hi.hi_closed)
                continue
        out.append(s)
    return tuple(out)


def region_intersect(a: Region, b: Region) -> Region:
    pieces = []
    for s in a:
        for t in b:
            x = span_intersect(s, t)
            if x is not None:
                pieces.append(x)
    return normalize(pieces)


def region_complement(a: Region) -> Region:
    gaps = []
    lo, lo_closed = -INF, False
    for s in a:
        gaps.append(Span(lo, s.lo, lo_closed, not s.lo_closed))
        lo, lo_closed = s.hi, not s.hi_closed
    gaps.append(Span(lo, INF, lo_closed, False))
    return normalize(g for g in gaps if not (g.lo == g.hi == INF or g.lo == g.hi == -INF))


def region_difference(a: Region, b: Region) -> Region:
    return region_intersect(a, region_complement(b))


def region_union(a: Region, b: Region) -> Region:
    return normalize(a + b)


def region_contains(r: Region, x) -> bool:
    return any(s.contains(x) for s in r)


def region_of(p: Predicate) -> Region:
    t = p.threshold
    if p.op == ">":
        return (Span(t, INF, False, False),)
    if p.op == ">=":
        return (Span(t, INF, True, False),)
    if p.op == "<":
        return (Span(-INF, t, False, False),)
    return (Span(-INF, t, False, True),)


def region_text(r: Region) -> str:
    return " ∪ ".join(str(s) for s in r) if r else "∅"


@dataclass(frozen=True)
class PredicateAtom:
    name: str
    variable: str
    region: Region

    def __post_init__(self):
        object.__setattr__(self, "region", normalize(self.region))
        if not self.region:
            raise DecompositionError(f"atom {self.name} has an empty region")

    def holds(self, value) -> bool:
        return region_contains(self.region, value)

    @classmethod
    def from_predicate(cls, p: Predicate) -> "PredicateAtom":
        return cls(p.key, p.variable, region_of(p))


@dataclass(frozen=True)
class MutexGroup:
    """Atoms of which at most one holds at any instant. ``exhaustive``
    additionally records that the atoms' regions cover the whole real line,
    so exactly one holds."""
    variable: str
    members: tuple[str, ...]
    exhaustive: bool = False

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))


@dataclass
class AtomTable:
    atoms: dict[str, PredicateAtom] = field(default_factory=dict)
    rewrites: dict[str, tuple[str, ...]] = field(default_factory=dict)
    mutex: list[MutexGroup] = field(default_factory=list)

    def rewrite(self, p: Predicate) -> Formula:
        try:
            names = self.rewrites[p.key]
        except KeyError:
            raise DecompositionError(f"unknown predicate {p.key!r}") from None
        return disj(Atom(n) for n in names)

    def to_json(self) -> dict:
        def bound(x):
            return None if x in (INF, -INF) else format_number(x)
        return {
            "atoms": [
                {"name": a.name, "variable": a.variable,
                 "region": [[bound(s.lo), bound(s.hi), s.lo_closed, s.hi_closed]
                            for s in a.region]}
                for a in self.atoms.values()
            ],
            "rewrites": {k: "|".join(v) for k, v in self.rewrites.items()},
            "mutex": [list(g.members) for g in self.mutex],
            "exhaustive": [list(g.members) for g in self.mutex if g.exhaustive],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "AtomTable":
        def bound(x, default):
            return default if x is None else Fraction(x)
        atoms = {}
        for a in doc["atoms"]:
            spans = [Span(bound(lo, -INF), bound(hi, INF), lc, hc)
                     for lo, hi, lc, hc in a["region"]]
            atoms[a["name"]] = PredicateAtom(a["name"], a["variable"], tuple(spans))
        rewrites = {k: tuple(v.split("|")) for k, v in doc["rewrites"].items()}
        exhaustive = {tuple(m) for m in doc.get("exhaustive", [])}
        mutex = [MutexGroup(atoms[m[0]].variable, tuple(m), tuple(m) in exhaustive)
                 for m in doc["mutex"]]
        return cls(atoms, rewrites, mutex)


def decompose_pair(p1: PredicateAtom, p2: PredicateAtom) -> list[PredicateAtom]:
    """Split two overlapping predicates into their intersection and the two
    differences, dropping empty pieces."""
    if p1.variable != p2.variable:
        raise DecompositionError(
            f"cannot decompose predicates over different variables "
            f"({p1.variable}, {p2.variable})")
    both = region_intersect(p1.region, p2.region)
    if not both:
        raise DecompositionError(f"regions of {p1.name} and {p2.name} are disjoint")
    pieces = [
        (f"({p1.name})&({p2.name})", both),
        (f"({p1.name})-({p2.name})", region_difference(p1.region, p2.region)),
        (f"({p2.name})-({p1.name})", region_difference(p2.region, p1.region)),
    ]
    return [PredicateAtom(name, p1.variable, region) for name, region in pieces if region]


def _split_until_disjoint(cells: list[PredicateAtom]) -> list[PredicateAtom]:
    while True:
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                if region_intersect(cells[i].region, cells[j].region):
                    pieces = decompose_pair(cells[i], cells[j])
                    cells = [c for k, c in enumerate(cells) if k not in (i, j)] + pieces
                    break
            else:
                continue
            break
        else:
            return cells


def generate_mutex_predicates(preds: Iterable[Predicate | PredicateAtom]) -> AtomTable:
    originals: dict[str, PredicateAtom] = {}
    for p in preds:
        atom = PredicateAtom.from_predicate(p) if isinstance(p, Predicate) else p
        originals.setdefault(atom.name, atom)

    by_variable: dict[str, list[PredicateAtom]] = defaultdict(list)
    for atom in originals.values():
        by_variable[atom.variable].append(atom)

    table = AtomTable()
    for variable in sorted(by_variable):
        cells = _split_until_disjoint(list(by_variable[variable]))
        cells.sort(key=lambda c: _lower_key(c.region[0]))
        named = [PredicateAtom(f"{variable}_{k}", variable, c.region)
                 for k, c in enumerate(cells)]
        for atom in named:
            table.atoms[atom.name] = atom
        for orig in by_variable[variable]:
            table.rewrites[orig.name] = tuple(
                a.name for a in named if region_intersect(a.region, orig.region))
        if len(named) > 1:
            union = normalize(s for a in named for s in a.region)
            covers = union == (Span(-INF, INF, False, False),)
            table.mutex.append(MutexGroup(variable, tuple(a.name for a in named), covers))
    return table


def build_atom_table(f: Formula) -> AtomTable:
    return generate_mutex_predicates(predicates(f))


def abstract_formula(f: Formula, table: AtomTable) -> Formula:
    """Replace every predicate leaf by the disjunction of its atoms."""
    if isinstance(f, Predicate):
        return table.rewrite(f)
    kids = f.children
    if not kids:
        return f
    return f.with_children(*(abstract_formula(c, table) for c in kids))
