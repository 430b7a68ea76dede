"""Formula AST for bounded MITL(F, G) with STL predicates.

Formulas are immutable values. Transformations (NNF, mutation, effective
interval annotation) always build new trees; effective-interval annotations
live in a field that does not take part in equality or hashing.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator

from .errors import NotNNFError, OccurrenceError
from .intervals import ZERO, Interval, format_number, interval_add

Path = tuple[int, ...]

COMPARATORS = ("<", "<=", ">", ">=")


@dataclass(frozen=True)
class Formula:
    effective_interval: Interval | None = field(
        default=None, compare=False, repr=False, kw_only=True)

    @property
    def children(self) -> tuple["Formula", ...]:
        return ()

    def with_children(self, *children: "Formula") -> "Formula":
        return self

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Predicate(Formula):
    """Single-variable threshold constraint ``variable op threshold``."""
    variable: str
    op: str
    threshold: Fraction

    def __post_init__(self):
        if self.op not in COMPARATORS:
            raise ValueError(f"unsupported comparator {self.op!r}")
        object.__setattr__(self, "threshold", Fraction(self.threshold))

    @property
    def key(self) -> str:
        return f"{self.variable} {self.op} {format_number(self.threshold)}"

    def holds(self, value) -> bool:
        t = self.threshold
        if self.op == "<":
            return value < t
        if self.op == "<=":
            return value <= t
        if self.op == ">":
            return value > t
        return value >= t


@dataclass(frozen=True)
class Not(Formula):
    child: Formula

    @property
    def children(self):
        return (self.child,)

    def with_children(self, child):
        return replace(self, child=child)


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    @property
    def children(self):
        return (self.left, self.right)

    def with_children(self, left, right):
        return replace(self, left=left, right=right)


@dataclass(frozen=True)
class And(_Binary):
    pass


@dataclass(frozen=True)
class Or(_Binary):
    pass


@dataclass(frozen=True)
class Implies(_Binary):
    pass


@dataclass(frozen=True)
class _Temporal(Formula):
    interval: Interval
    child: Formula

    @property
    def children(self):
        return (self.child,)

    def with_children(self, child):
        return replace(self, child=child)


@dataclass(frozen=True)
class Eventually(_Temporal):
    pass


@dataclass(frozen=True)
class Always(_Temporal):
    pass


TRUE = Top()
FALSE = Bottom()

LEAVES = (Top, Bottom, Atom, Predicate)
TEMPORAL = (Eventually, Always)


# ---------------------------------------------------------------- printing

def _leaf_text(f: Formula) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Predicate):
        return f"({f.key})"
    raise TypeError(f)


_BINARY_TEXT = {And: "&&", Or: "||", Implies: "->"}
_BINARY_UNICODE = {And: "∧", Or: "∨", Implies: "⇒"}


def format_formula(f: Formula) -> str:
    """Fully parenthesized text in the parser's grammar."""
    if isinstance(f, LEAVES):
        return _leaf_text(f)
    if isinstance(f, Not):
        return "!" + format_formula(f.child)
    if isinstance(f, _Binary):
        op = _BINARY_TEXT[type(f)]
        return f"({format_formula(f.left)} {op} {format_formula(f.right)})"
    if isinstance(f, _Temporal):
        op = "F" if isinstance(f, Eventually) else "G"
        return f"{op}{f.interval} {format_formula(f.child)}"
    raise TypeError(f"not a formula: {f!r}")


def to_unicode(f: Formula, top: bool = True) -> str:
    """Compact mathematical rendering, for human-facing reports only."""
    if isinstance(f, Top):
        return "⊤"
    if isinstance(f, Bottom):
        return "⊥"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Predicate):
        return f"({f.key})"
    if isinstance(f, Not):
        return "¬" + to_unicode(f.child, False)
    if isinstance(f, _Binary):
        text = f"{to_unicode(f.left, False)} {_BINARY_UNICODE[type(f)]} {to_unicode(f.right, False)}"
        return text if top else f"({text})"
    if isinstance(f, _Temporal):
        op = "◇" if isinstance(f, Eventually) else "□"
        return f"{op}{f.interval}{to_unicode(f.child, False)}"
    raise TypeError(f)


# ---------------------------------------------------------------- traversal

def iter_nodes(f: Formula, path: Path = ()) -> Iterator[tuple[Path, Formula]]:
    """Pre-order, left to right."""
    yield path, f
    for i, child in enumerate(f.children):
        yield from iter_nodes(child, path + (i,))


def subformula_at(f: Formula, path: Path) -> Formula:
    node = f
    for i in path:
        kids = node.children
        if not 0 <= i < len(kids):
            raise OccurrenceError(f"path {list(path)} does not exist in {f}")
        node = kids[i]
    return node


def replace_at(f: Formula, path: Path, new: Formula) -> Formula:
    if not path:
        return new
    kids = list(f.children)
    i = path[0]
    if not 0 <= i < len(kids):
        raise OccurrenceError(f"path {list(path)} does not exist")
    kids[i] = replace_at(kids[i], path[1:], new)
    return f.with_children(*kids)


def atoms(f: Formula) -> list[str]:
    return sorted({n.name for _, n in iter_nodes(f) if isinstance(n, Atom)})


def predicates(f: Formula) -> list[Predicate]:
    seen = {}
    for _, n in iter_nodes(f):
        if isinstance(n, Predicate):
            seen.setdefault(n.key, n)
    return [seen[k] for k in sorted(seen)]


def has_node(f: Formula, kinds) -> bool:
    return any(isinstance(n, kinds) for _, n in iter_nodes(f))


def conjuncts(f: Formula) -> list[Formula]:
    """Flatten a maximal chain of conjunctions into its operands."""
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def conjunct_paths(f: Formula, path: Path = ()) -> list[Path]:
    if isinstance(f, And):
        return conjunct_paths(f.left, path + (0,)) + conjunct_paths(f.right, path + (1,))
    return [path]


def conj(items) -> Formula:
    items = list(items)
    if not items:
        return TRUE
    out = items[0]
    for g in items[1:]:
        out = And(out, g)
    return out


def disj(items) -> Formula:
    items = list(items)
    if not items:
        return FALSE
    out = items[0]
    for g in items[1:]:
        out = Or(out, g)
    return out


# ---------------------------------------------------------------- NNF

def is_literal(f: Formula) -> bool:
    if isinstance(f, (Atom, Predicate)):
        return True
    return isinstance(f, Not) and isinstance(f.child, (Atom, Predicate))


def is_nnf(f: Formula) -> bool:
    if isinstance(f, Implies):
        return False
    if isinstance(f, Not):
        return isinstance(f.child, (Atom, Predicate))
    return all(is_nnf(c) for c in f.children)


def to_nnf(f: Formula) -> Formula:
    """Push negations to the literals and rewrite implications away."""
    if isinstance(f, LEAVES):
        return f
    if isinstance(f, Not):
        return _negated_nnf(f.child)
    if isinstance(f, Implies):
        return Or(_negated_nnf(f.left), to_nnf(f.right))
    if isinstance(f, (And, Or)):
        return type(f)(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, _Temporal):
        return type(f)(f.interval, to_nnf(f.child))
    raise TypeError(f)


def _negated_nnf(f: Formula) -> Formula:
    if isinstance(f, Top):
        return FALSE
    if isinstance(f, Bottom):
        return TRUE
    if isinstance(f, (Atom, Predicate)):
        return Not(f)
    if isinstance(f, Not):
        return to_nnf(f.child)
    if isinstance(f, And):
        return Or(_negated_nnf(f.left), _negated_nnf(f.right))
    if isinstance(f, Or):
        return And(_negated_nnf(f.left), _negated_nnf(f.right))
    if isinstance(f, Implies):
        return And(to_nnf(f.left), _negated_nnf(f.right))
    if isinstance(f, Eventually):
        return Always(f.interval, _negated_nnf(f.child))
    if isinstance(f, Always):
        return Eventually(f.interval, _negated_nnf(f.child))
    raise TypeError(f)


def negate(f: Formula) -> Formula:
    return _negated_nnf(f)


# ---------------------------------------------------------------- literals

@dataclass(frozen=True)
class LiteralOccurrence:
    path: Path
    polarity: str  # "positive" | "negative"
    atom: str

    @property
    def literal(self) -> str:
        return self.atom if self.polarity == "positive" else "!" + self.atom

    def __str__(self):
        return f"{self.literal}@{list(self.path)}"


def _literal_name(node: Formula) -> str:
    return node.name if isinstance(node, Atom) else f"({node.key})"


def lit_occurrences(f: Formula) -> list[LiteralOccurrence]:
    if not is_nnf(f):
        raise NotNNFError(f"formula is not in negation normal form: {f}")
    out = []

    def walk(node, path):
        if isinstance(node, (Atom, Predicate)):
            out.append(LiteralOccurrence(path, "positive", _literal_name(node)))
        elif isinstance(node, Not):
            out.append(LiteralOccurrence(path, "negative", _literal_name(node.child)))
        else:
            for i, child in enumerate(node.children):
                walk(child, path + (i,))

    walk(f, ())
    return out


def substitute_occurrence(f: Formula, occ: LiteralOccurrence, replacement) -> Formula:
    """Replace exactly one literal occurrence by a constant, without
    simplifying the result."""
    if isinstance(replacement, bool):
        replacement = TRUE if replacement else FALSE
    if not isinstance(replacement, (Top, Bottom)):
        raise TypeError("replacement must be true/false")
    node = subformula_at(f, occ.path)
    if not is_literal(node):
        raise OccurrenceError(f"path {list(occ.path)} resolves to {node}, not a literal")
    expected = "negative" if isinstance(node, Not) else "positive"
    if expected != occ.polarity:
        raise OccurrenceError(f"occurrence polarity mismatch at {list(occ.path)}")
    return replace_at(f, occ.path, replacement)


# ---------------------------------------------------------------- time

def annotate_effective_intervals(f: Formula, interval: Interval = ZERO) -> Formula:
    """Return a copy of ``f`` whose nodes carry their effective interval."""
    if isinstance(f, _Temporal):
        child = annotate_effective_intervals(f.child, interval_add(interval, f.interval))
        return replace(f, child=child, effective_interval=interval)
    kids = [annotate_effective_intervals(c, interval) for c in f.children]
    return replace(f.with_children(*kids), effective_interval=interval)


def horizon(f: Formula) -> Fraction:
    if isinstance(f, _Temporal):
        return f.interval.upper + horizon(f.child)
    kids = f.children
    if not kids:
        return Fraction(0)
    return max(horizon(c) for c in kids)


def intervals_of(f: Formula) -> list[Interval]:
    return [n.interval for _, n in iter_nodes(f) if isinstance(n, _Temporal)]


def polarity_nodes(f: Formula, kinds) -> Iterator[tuple[Path, Formula, bool]]:
    """Yield ``(path, node, positive)`` for nodes of the given kinds, where
    ``positive`` tells whether the node sits under an even number of
    negations (implication antecedents count as a negation)."""
    def walk(node, path, positive):
        if isinstance(node, kinds):
            yield path, node, positive
        if isinstance(node, Not):
            yield from walk(node.child, path + (0,), not positive)
        elif isinstance(node, Implies):
            yield from walk(node.left, path + (0,), not positive)
            yield from walk(node.right, path + (1,), positive)
        else:
            for i, c in enumerate(node.children):
                yield from walk(c, path + (i,), positive)
    yield from walk(f, (), True)
