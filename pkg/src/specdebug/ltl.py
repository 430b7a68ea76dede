"""Untimed shortcuts for formulas that use only one kind of temporal operator.

For G-only formulas, a constant trace satisfying the formula with every G
erased satisfies the timed formula too, so a propositional SAT answer
carries over. For F-only formulas, every grid model induces a model of the
untimed formula (F read as "now or later"), and such an untimed model
needs at most one position per F occurrence plus the initial one, so an
UNSAT answer over that many positions carries over. Other answers are
inconclusive.
"""
from __future__ import annotations

from enum import Enum
from fractions import Fraction

from ._backend import kernels
from .encoding import _Unfolder, build
from .errors import NotNNFError, PreconditionError
from .formula import Always, Eventually, Formula, Predicate, has_node, is_nnf, iter_nodes


class Fragment(str, Enum):
    EVENTUALLY_ONLY = "EventuallyOnly"
    ALWAYS_ONLY = "AlwaysOnly"
    MIXED = "Mixed"

    def __str__(self):
        return self.value


class FastPath(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


def fragment_classify(f: Formula) -> Fragment:
    if not is_nnf(f):
        raise NotNNFError(f"formula is not in negation normal form: {f}")
    has_f = has_node(f, Eventually)
    has_g = has_node(f, Always)
    if has_f and has_g:
        return Fragment.MIXED
    if has_f:
        return Fragment.EVENTUALLY_ONLY
    return Fragment.ALWAYS_ONLY


class _UntimedUnfolder(_Unfolder):
    def _lit(self, f, k):
        if isinstance(f, Eventually):
            return self.disjunction([self.lit(f.child, j) for j in range(k, self.enc.points + 1)])
        if isinstance(f, Always):
            # only reached for G-only formulas, evaluated on one position
            return self.lit(f.child, k)
        return super()._lit(f, k)


def _propositional_sat(f: Formula, mutex, positions: int) -> bool:
    enc = build(f, mutex, positions - 1, Fraction(1), _UntimedUnfolder)
    sat, _, _ = kernels.solve_cnf(enc.nvars, enc.clauses)
    return sat


def ltl_fast_path(f: Formula, mutex=()) -> FastPath:
    fragment = fragment_classify(f)
    if fragment is Fragment.MIXED:
        raise PreconditionError("fast path applies only to F-only or G-only formulas")
    if any(isinstance(n, Predicate) for _, n in iter_nodes(f)):
        raise PreconditionError("predicates must be abstracted to atoms first")
    temporal_free = not has_node(f, (Eventually, Always))
    if fragment is Fragment.ALWAYS_ONLY:
        if _propositional_sat(f, mutex, 1):
            return FastPath.SAT
        return FastPath.UNSAT if temporal_free else FastPath.INCONCLUSIVE
    count = sum(isinstance(n, Eventually) for _, n in iter_nodes(f))
    if not _propositional_sat(f, mutex, count + 1):
        return FastPath.UNSAT
    return FastPath.INCONCLUSIVE
