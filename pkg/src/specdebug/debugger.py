"""Validity, redundancy and inherent-vacuity checks for a requirement."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum

from .formula import (FALSE, And, Formula, LiteralOccurrence, Path, Predicate,
                      conj, conjunct_paths, format_formula, iter_nodes,
                      lit_occurrences, negate, predicates, subformula_at,
                      substitute_occurrence, to_nnf)
from .ltl import FastPath, Fragment, fragment_classify, ltl_fast_path
from .predicates import AtomTable, abstract_formula, generate_mutex_predicates
from .sat import GridConfig, check_sat


class Validity(str, Enum):
    UNSATISFIABLE = "Unsatisfiable"
    TAUTOLOGY = "Tautology"
    VALID = "Valid"

    def __str__(self):
        return self.value


class Status(str, Enum):
    FAILED_VALIDITY = "FailedValidity"
    FAILED_REDUNDANCY = "FailedRedundancy"
    FAILED_VACUITY = "FailedVacuity"
    PASSED = "Passed"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Redundancy:
    conjunct: Formula
    enclosing: Formula
    conjunct_path: Path
    enclosing_path: Path


@dataclass(frozen=True)
class Vacuity:
    occurrence: LiteralOccurrence     # path relative to the checked formula
    mutated: Formula


class Decider:
    """Answers satisfiability queries, trying the untimed fast path first,
    and keeps a log of every query for the report."""

    def __init__(self, mutex=(), cfg: GridConfig = GridConfig(), fast_path: bool = True):
        self.mutex = tuple(mutex)
        self.cfg = cfg
        self.fast_path = fast_path
        self.log: list[dict] = []
        self.diagnostics: list[str] = []

    def satisfiable(self, query: Formula, label: str) -> bool:
        start = time.perf_counter()
        entry = {"check": label}
        if self.fast_path and not any(isinstance(n, Predicate) for _, n in iter_nodes(query)) \
                and fragment_classify(query) is not Fragment.MIXED:
            answer = ltl_fast_path(query, self.mutex)
            if answer is not FastPath.INCONCLUSIVE:
                entry.update(engine="fast-path", result=str(answer),
                             seconds=time.perf_counter() - start)
                self.log.append(entry)
                return answer is FastPath.SAT
        verdict = check_sat(query, self.mutex, self.cfg)
        self.diagnostics.extend(verdict.diagnostics)
        stats = {k: verdict.stats[k] for k in ("vars", "clauses", "decisions", "propagations", "conflicts")}
        entry.update(engine="grid", result=str(verdict.status), seconds=time.perf_counter() - start, **stats)
        self.log.append(entry)
        return verdict.sat

    def entails(self, lhs: Formula, rhs: Formula, label: str) -> bool:
        return not self.satisfiable(to_nnf(And(lhs, negate(rhs))), label)


def check_validity(f: Formula, mutex=(), cfg: GridConfig = GridConfig(), decider: Decider | None = None) -> Validity:
    d = decider or Decider(mutex, cfg)
    if not d.satisfiable(to_nnf(f), "satisfiable"):
        return Validity.UNSATISFIABLE
    if not d.satisfiable(negate(f), "falsifiable"):
        return Validity.TAUTOLOGY
    return Validity.VALID


def conjunction_chains(f: Formula) -> list[Path]:
    """Paths of maximal conjunction chains, outermost first (pre-order)."""
    out = []

    def walk(node, path, parent_is_and):
        if isinstance(node, And) and not parent_is_and:
            out.append(path)
        for i, c in enumerate(node.children):
            walk(c, path + (i,), isinstance(node, And))
    walk(f, (), False)
    return out


def check_redundancy(f: Formula, mutex=(), cfg: GridConfig = GridConfig(),
                     decider: Decider | None = None, early_stop: bool = False) -> list[Redundancy]:
    d = decider or Decider(mutex, cfg)
    g = to_nnf(f)
    found = []
    for chain in conjunction_chains(g):
        node = subformula_at(g, chain)
        paths = conjunct_paths(node)
        items = [subformula_at(node, p) for p in paths]
        for j, psi in enumerate(items):
            # a later structural duplicate does not count as support, so
            # only the second of two equal conjuncts is reported
            others = [x for i, x in enumerate(items) if i != j and not (i > j and x == psi)]
            label = f"redundancy {format_formula(psi)}"
            if d.entails(conj(others), psi, label):
                found.append(Redundancy(psi, node, chain + paths[j], chain))
                if early_stop:
                    return found
    return found


def check_vacuity(f: Formula, mutex=(), cfg: GridConfig = GridConfig(),
                  decider: Decider | None = None, early_stop: bool = False) -> list[Vacuity]:
    """Occurrences l of a root conjunct phi_i with ``f |= phi_i[l <- false]``.

    Occurrence paths and mutated formulas refer to the NNF of ``f``.
    """
    d = decider or Decider(mutex, cfg)
    g = to_nnf(f)
    found = []
    for base in conjunct_paths(g):
        phi = subformula_at(g, base)
        for occ in lit_occurrences(phi):
            mutated_part = substitute_occurrence(phi, occ, FALSE)
            full = LiteralOccurrence(base + occ.path, occ.polarity, occ.atom)
            label = f"vacuity {full}"
            if d.entails(g, mutated_part, label):
                found.append(Vacuity(full, substitute_occurrence(g, full, FALSE)))
                if early_stop:
                    return found
    return found


@dataclass
class Finding:
    kind: str
    stage: str
    conjunct: Formula | None = None
    enclosing: Formula | None = None
    conjunct_path: Path | None = None
    occurrence: LiteralOccurrence | None = None
    mutated: Formula | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "stage": self.stage}
        if self.conjunct is not None:
            out["conjunct"] = format_formula(self.conjunct)
            out["enclosing"] = format_formula(self.enclosing)
            out["conjunctPath"] = list(self.conjunct_path)
        if self.occurrence is not None:
            out["occurrencePath"] = list(self.occurrence.path)
            out["literal"] = self.occurrence.literal
            out["mutated"] = format_formula(self.mutated)
        return out


@dataclass
class DebugReport:
    formula: Formula
    checked: Formula
    status: Status = Status.PASSED
    findings: list[Finding] = field(default_factory=list)
    stages_run: list[str] = field(default_factory=list)
    checks: list[dict] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    table: AtomTable | None = None
    seconds: float = 0.0

    def of_kind(self, kind: str) -> list[Finding]:
        return [x for x in self.findings if x.kind == kind]

    def to_json(self) -> dict:
        grid = [c for c in self.checks if c["engine"] == "grid"]
        doc = {
            "formula": format_formula(self.formula),
            "checked": format_formula(self.checked),
            "status": str(self.status),
            "findings": [x.to_json() for x in self.findings],
            "stats": {
                "stages": self.stages_run,
                "queries": len(self.checks),
                "fastPathAnswers": len(self.checks) - len(grid),
                "gridQueries": len(grid),
                "seconds": self.seconds,
                "checks": self.checks,
            },
            "config": self.config,
        }
        if self.diagnostics:
            doc["diagnostics"] = self.diagnostics
        if self.table is not None:
            doc["atomTable"] = self.table.to_json()
        return doc


def debug_pipeline(f: Formula, table: AtomTable | None = None, cfg: GridConfig = GridConfig(),
                   *, mutex_enabled: bool = True, extra_mutex=(), early_stop: bool = False,
                   fast_path: bool = True) -> DebugReport:
    start = time.perf_counter()
    if table is None and predicates(f):
        table = generate_mutex_predicates(predicates(f))
    checked = abstract_formula(f, table) if table is not None else f
    mutex = []
    if mutex_enabled:
        mutex = list(extra_mutex) + (list(table.mutex) if table is not None else [])
    d = Decider(mutex, cfg, fast_path)
    report = DebugReport(f, checked, table=table, config=dict(
        cfg.to_json(), earlyStop=early_stop, mutex=mutex_enabled, fastPath=fast_path,
        mutexGroups=[list(g.members) for g in mutex]))

    def finish():
        report.checks = d.log
        report.diagnostics = d.diagnostics
        report.seconds = time.perf_counter() - start
        return report

    report.stages_run.append("validity")
    validity = check_validity(checked, decider=d)
    if validity is not Validity.VALID:
        report.status = Status.FAILED_VALIDITY
        report.findings.append(Finding(str(validity), "validity"))
        return finish()

    report.stages_run.append("redundancy")
    for r in check_redundancy(checked, decider=d, early_stop=early_stop):
        report.findings.append(Finding("RedundantConjunct", "redundancy", r.conjunct,
                                       r.enclosing, r.conjunct_path))
    if report.findings:
        report.status = Status.FAILED_REDUNDANCY
        if early_stop:
            return finish()

    report.stages_run.append("vacuity")
    for v in check_vacuity(checked, decider=d, early_stop=early_stop):
        report.findings.append(Finding("VacuousOccurrence", "vacuity",
                                       occurrence=v.occurrence, mutated=v.mutated))
    if report.status is Status.PASSED and report.findings:
        report.status = Status.FAILED_VACUITY
    return finish()
