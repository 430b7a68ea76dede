"""Per-trace vacuity analysis: antecedent failure, literal removal and
falsification localization."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .formula import (FALSE, TEMPORAL, TRUE, Always, And, Formula, Implies,
                      LiteralOccurrence, Not, Or, annotate_effective_intervals,
                      conjunct_paths, format_formula, has_node, lit_occurrences,
                      subformula_at, substitute_occurrence, to_nnf)
from .intervals import Interval
from .monitor import evaluate, evaluate_many
from .trace import TimedTrace

ANTECEDENT_FAILURE = "AntecedentFailure"
MUTATION_PASS = "MutationPass"
FALSIFICATION_SOURCE = "FalsificationSource"


@dataclass(frozen=True)
class VacuityFinding:
    kind: str
    trace: str
    mutation: Formula | None = None          # formula the trace satisfies
    implication: Formula | None = None
    path: tuple = ()
    effective_interval: Interval | None = None
    occurrence: LiteralOccurrence | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "trace": self.trace}
        if self.implication is not None:
            out["implication"] = format_formula(self.implication)
            out["implicationPath"] = list(self.path)
            out["effectiveInterval"] = str(self.effective_interval)
        if self.occurrence is not None:
            out["occurrencePath"] = list(self.occurrence.path)
            out["literal"] = self.occurrence.literal
        if self.mutation is not None:
            out["mutated"] = format_formula(self.mutation)
        return out


def _positive_implications(f: Formula):
    """Yield ``(path, node, has_temporal_ancestor)`` for implications under
    an even number of negations, outermost first."""
    def walk(node, path, positive, timed):
        if isinstance(node, Implies) and positive:
            yield path, node, timed
        if isinstance(node, Not):
            yield from walk(node.child, path + (0,), not positive, timed)
        elif isinstance(node, Implies):
            yield from walk(node.left, path + (0,), not positive, timed)
            yield from walk(node.right, path + (1,), positive, timed)
        else:
            inner = timed or isinstance(node, TEMPORAL)
            for i, c in enumerate(node.children):
                yield from walk(c, path + (i,), positive, inner)
    yield from walk(f, (), True, False)


def classify_rr(f: Formula) -> bool:
    """Request-response shape: at least one positive implication, each of
    which sits under a temporal operator or has a timed consequent."""
    found = list(_positive_implications(f))
    return bool(found) and all(timed or has_node(node.right, TEMPORAL)
                               for _, node, timed in found)


def antecedent_mutation(node: Implies, window: Interval) -> Formula:
    """``G_window !antecedent``; a bare negation at the root window [0,0]."""
    if window.singular and window.lower == 0:
        return Not(node.left)
    return Always(window, Not(node.left))


def antecedent_failure_check(f: Formula, trace: TimedTrace) -> list[VacuityFinding]:
    """Implications whose antecedent never holds within its effective
    interval on the trace. ``f`` is used as written (no NNF)."""
    if not classify_rr(f):
        raise PreconditionError(f"not a request-response formula: {format_formula(f)}")
    annotated = annotate_effective_intervals(f)
    candidates = []
    for path, _, _ in _positive_implications(annotated):
        node = subformula_at(annotated, path)
        window = node.effective_interval
        candidates.append((path, subformula_at(f, path), window,
                           antecedent_mutation(node, window)))
    verdicts = evaluate_many(trace, [c[3] for c in candidates])
    return [VacuityFinding(ANTECEDENT_FAILURE, trace.name, mutation, node, path, window)
            for (path, node, window, mutation), ok in zip(candidates, verdicts) if ok]


def literal_removal_check(f: Formula, trace: TimedTrace) -> list[VacuityFinding]:
    """Occurrences l of a root conjunct phi_i such that the trace satisfies
    ``phi_i[l <- false]``. Skipped (empty) when the NNF has no disjunction.
    Paths refer to the NNF of ``f``."""
    g = to_nnf(f)
    if not has_node(g, Or):
        return []
    candidates = []
    for base in conjunct_paths(g):
        phi = subformula_at(g, base)
        for occ in lit_occurrences(phi):
            full = LiteralOccurrence(base + occ.path, occ.polarity, occ.atom)
            candidates.append((full, substitute_occurrence(phi, occ, FALSE)))
    if not candidates:
        return []
    verdicts = evaluate_many(trace, [m for _, m in candidates])
    return [VacuityFinding(MUTATION_PASS, trace.name, mutation, occurrence=occ)
            for (occ, mutation), ok in zip(candidates, verdicts) if ok]


def _under_conjunction(f: Formula, occ: LiteralOccurrence) -> bool:
    return any(isinstance(subformula_at(f, occ.path[:i]), And) for i in range(len(occ.path)))


def falsification_localize(f: Formula, trace: TimedTrace) -> list[VacuityFinding]:
    """Literal occurrences inside conjunctions whose replacement by true
    makes the falsified formula hold. Paths refer to the NNF of ``f``."""
    g = to_nnf(f)
    if evaluate(trace, g):
        raise PreconditionError("the trace satisfies the formula; nothing to localize")
    occs = [o for o in lit_occurrences(g) if _under_conjunction(g, o)]
    if not occs:
        return []
    mutations = [substitute_occurrence(g, o, TRUE) for o in occs]
    verdicts = evaluate_many(trace, mutations)
    return [VacuityFinding(FALSIFICATION_SOURCE, trace.name, m, occurrence=o)
            for o, m, ok in zip(occs, mutations, verdicts) if ok]


def signal_vacuity(f: Formula, trace: TimedTrace) -> tuple[str, list[VacuityFinding]]:
    """Antecedent-failure analysis for request-response formulas, literal
    removal otherwise. Returns the method name and the findings."""
    if classify_rr(f):
        return "antecedent-failure", antecedent_failure_check(f, trace)
    return "literal-removal", literal_removal_check(f, trace)
