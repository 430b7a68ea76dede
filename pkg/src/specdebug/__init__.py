"""Debugging bounded MITL/STL requirements."""
from ._backend import BACKEND
from .debugger import (DebugReport, Decider, Finding, Status, Validity, check_redundancy,
                       check_vacuity, check_validity, debug_pipeline)
from .errors import (DecompositionError, EngineError, FormulaSyntaxError, IntervalError,
                     MonitorError, NotNNFError, OccurrenceError, PreconditionError,
                     ProfileError, SpecDebugError, TraceError)
from .formula import (FALSE, TRUE, Always, And, Atom, Bottom, Eventually, Formula, Implies,
                      LiteralOccurrence, Not, Or, Predicate, Top, annotate_effective_intervals,
                      format_formula, horizon, is_nnf, lit_occurrences, negate,
                      substitute_occurrence, to_nnf, to_unicode)
from .generate import generate_synthetic_traces
from .intervals import Interval, interval_add
from .ltl import FastPath, Fragment, fragment_classify, ltl_fast_path
from .monitor import evaluate, evaluate_many, satisfaction_intervals
from .parser import parse, parse_spec_file
from .predicates import (AtomTable, MutexGroup, PredicateAtom, abstract_formula,
                         decompose_pair, generate_mutex_predicates)
from .sat import GridConfig, SatVerdict, check_sat, entails, export_dimacs
from .signal_vacuity import (VacuityFinding, antecedent_failure_check, classify_rr,
                             falsification_localize, literal_removal_check, signal_vacuity)
from .trace import TimedTrace, abstract_trace, load_csv, parse_csv

__version__ = "0.1.0"
