"""Command-line front end.

Exit status: 0 when the analysis is clean, 1 when it produced findings,
2 on usage, input or precondition errors.
"""
from __future__ import annotations

import argparse
import contextlib
import sys
from pathlib import Path

from .debugger import Status as DebugStatus
from .debugger import debug_pipeline
from .errors import SpecDebugError
from .formula import And, Formula, format_formula, predicates, to_nnf
from .generate import BUILTIN, generate_synthetic_traces
from .intervals import format_number, to_fraction
from .monitor import evaluate, satisfaction_intervals
from .parser import parse, parse_spec_file
from .predicates import MutexGroup, abstract_formula, generate_mutex_predicates
from .report import dumps, render_text, strip_timings, trace_json
from .sat import GridConfig, check_sat, entailment_query
from .signal_vacuity import falsification_localize, signal_vacuity
from .trace import load_csv

EXIT_CLEAN, EXIT_FINDINGS, EXIT_ERROR = 0, 1, 2
SPEC_SUFFIXES = {".stl", ".mitl", ".spec", ".txt", ".req"}


class UsageError(Exception):
    pass


def _rational(text: str):
    try:
        return to_fraction(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _mutex_group(text: str) -> tuple[str, ...]:
    names = tuple(x.strip() for x in text.split(",") if x.strip())
    if len(names) < 2:
        raise argparse.ArgumentTypeError(f"a mutex group needs at least two atoms: {text!r}")
    return names


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid-step", type=_rational, default="1", metavar="R",
                        help="grid step for the SAT engine (default 1)")
    common.add_argument("--horizon-cap", type=_rational, default=None, metavar="R",
                        help="refuse formulas whose horizon exceeds R")
    common.add_argument("--early-stop", action="store_true",
                        help="stop the debugger at the first finding")
    common.add_argument("--refine-check", action="store_true",
                        help="re-solve at half the grid step and warn on disagreement")
    common.add_argument("--no-mutex", action="store_true",
                        help="drop mutual-exclusion constraints between predicate atoms")
    common.add_argument("--mutex", type=_mutex_group, action="append", default=[],
                        metavar="A,B[,..]", help="declare atoms mutually exclusive (repeatable)")
    common.add_argument("--no-fast-path", action="store_true",
                        help="always use the grid engine in the debugger")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timings", action="store_true",
                        help="include wall-clock times in the report")
    common.add_argument("--seed", type=int, default=0, metavar="N")
    common.add_argument("--duration", type=_rational, default=None, metavar="R",
                        help="override trace durations")
    common.add_argument("--out", default=None, metavar="PATH",
                        help="write the report (or generated traces) here")

    p = argparse.ArgumentParser(prog="specdebug",
                                description="Debug bounded MITL/STL requirements.")
    sub = p.add_subparsers(dest="command", required=True)
    spec_help = "requirement file, or the formula text itself"

    s = sub.add_parser("debug", parents=[common], help="validity, redundancy and vacuity checks")
    s.add_argument("spec", help=spec_help)
    s = sub.add_parser("sat", parents=[common], help="satisfiability with a witness trace")
    s.add_argument("spec", help=spec_help)
    s = sub.add_parser("entails", parents=[common], help="does LHS entail RHS")
    s.add_argument("lhs", help=spec_help)
    s.add_argument("rhs", help=spec_help)
    s = sub.add_parser("monitor", parents=[common], help="evaluate a requirement on traces")
    s.add_argument("spec", help=spec_help)
    s.add_argument("traces", nargs="+", metavar="trace.csv")
    s = sub.add_parser("vacuity-signal", parents=[common], help="per-trace vacuity analysis")
    s.add_argument("spec", help=spec_help)
    s.add_argument("traces", nargs="*", metavar="trace.csv")
    s.add_argument("--generate", metavar="PROFILE", default=None,
                   help="analyse generated traces instead of files")
    s.add_argument("--count", type=int, default=100, metavar="N")
    s = sub.add_parser("localize", parents=[common], help="literals responsible for a violation")
    s.add_argument("spec", help=spec_help)
    s.add_argument("trace", metavar="trace.csv")
    s = sub.add_parser("decompose", parents=[common], help="split overlapping predicates")
    s.add_argument("spec", help=spec_help)
    s = sub.add_parser("gen-traces", parents=[common], help="write synthetic CSV traces")
    s.add_argument("profile", help=f"built-in ({', '.join(BUILTIN)}) or a JSON profile file")
    s.add_argument("--count", type=int, default=10, metavar="N")
    return p


# ---------------------------------------------------------------- inputs

def read_spec(arg: str) -> Formula:
    path = Path(arg)
    if path.is_file():
        try:
            return parse_spec_file(path)
        except OSError as exc:
            raise UsageError(f"cannot read {arg}: {exc.strerror}") from None
    if path.suffix in SPEC_SUFFIXES or "/" in arg and " " not in arg:
        raise UsageError(f"no such file: {arg}")
    return parse(arg)


def _config(args) -> GridConfig:
    return GridConfig(args.grid_step, args.horizon_cap, args.refine_check)


def _user_mutex(args) -> list[MutexGroup]:
    return [MutexGroup("", g) for g in args.mutex]


def _prepare(f: Formula, args):
    """Abstract predicates and collect the mutex groups in force."""
    table = generate_mutex_predicates(predicates(f)) if predicates(f) else None
    checked = to_nnf(abstract_formula(f, table) if table else f)
    mutex = [] if args.no_mutex else _user_mutex(args) + (list(table.mutex) if table else [])
    return checked, table, mutex


def _base_config(args, **extra) -> dict:
    cfg = dict(_config(args).to_json(), mutex=not args.no_mutex,
               mutexGroups=[list(g) for g in args.mutex])
    cfg.update(extra)
    return cfg


def _load_traces(paths, duration):
    return [load_csv(p, duration) for p in paths]


# ---------------------------------------------------------------- commands

def cmd_debug(args):
    f = read_spec(args.spec)
    report = debug_pipeline(f, cfg=_config(args), mutex_enabled=not args.no_mutex,
                            extra_mutex=_user_mutex(args), early_stop=args.early_stop,
                            fast_path=not args.no_fast_path)
    doc = dict(command="debug", **report.to_json())
    return doc, EXIT_CLEAN if report.status is DebugStatus.PASSED else EXIT_FINDINGS


def cmd_sat(args):
    f = read_spec(args.spec)
    checked, table, mutex = _prepare(f, args)
    verdict = check_sat(checked, mutex, _config(args))
    doc = {"command": "sat", "formula": format_formula(f), "checked": format_formula(checked),
           "status": str(verdict.status), "findings": [],
           "witness": trace_json(verdict.witness) if verdict.witness else None,
           "stats": verdict.stats, "config": _base_config(args)}
    if table is not None:
        doc["atomTable"] = table.to_json()
    if verdict.diagnostics:
        doc["diagnostics"] = verdict.diagnostics
    return doc, EXIT_CLEAN if verdict.sat else EXIT_FINDINGS


def cmd_entails(args):
    lhs, rhs = read_spec(args.lhs), read_spec(args.rhs)
    both = And(lhs, rhs)
    table = generate_mutex_predicates(predicates(both)) if predicates(both) else None
    a = abstract_formula(lhs, table) if table else lhs
    b = abstract_formula(rhs, table) if table else rhs
    mutex = [] if args.no_mutex else _user_mutex(args) + (list(table.mutex) if table else [])
    verdict = check_sat(entailment_query(a, b), mutex, _config(args))
    doc = {"command": "entails", "lhs": format_formula(lhs), "rhs": format_formula(rhs),
           "status": "NotEntailed" if verdict.sat else "Entailed", "findings": [],
           # a witness here is a counterexample: lhs holds, rhs fails
           "witness": trace_json(verdict.witness) if verdict.witness else None,
           "stats": verdict.stats, "config": _base_config(args)}
    if table is not None:
        doc["atomTable"] = table.to_json()
    if verdict.diagnostics:
        doc["diagnostics"] = verdict.diagnostics
    return doc, EXIT_FINDINGS if verdict.sat else EXIT_CLEAN


def cmd_monitor(args):
    f = read_spec(args.spec)
    rows, bad = [], 0
    for trace in _load_traces(args.traces, args.duration):
        ok = evaluate(trace, f)
        bad += not ok
        rows.append({"trace": trace.name, "verdict": "satisfied" if ok else "violated",
                     "satisfiedOn": satisfaction_intervals(trace, f)})
    doc = {"command": "monitor", "formula": format_formula(f),
           "status": "Violated" if bad else "Satisfied", "findings": [], "traces": rows,
           "stats": {"traces": len(rows), "violated": bad},
           "config": {"duration": None if args.duration is None else format_number(args.duration)}}
    return doc, EXIT_FINDINGS if bad else EXIT_CLEAN


def cmd_vacuity_signal(args):
    f = read_spec(args.spec)
    config = {"duration": None if args.duration is None else format_number(args.duration)}
    if args.generate:
        if args.traces:
            raise UsageError("give trace files or --generate, not both")
        if args.count < 0:
            raise UsageError("--count must be non-negative")
        traces = generate_synthetic_traces(args.generate, args.count, args.seed)
        config.update(profile=args.generate, count=args.count, seed=args.seed)
    elif args.traces:
        traces = _load_traces(args.traces, args.duration)
    else:
        raise UsageError("no traces given (pass CSV files or --generate PROFILE)")
    method, findings, rows = None, [], []
    for trace in traces:
        method, found = signal_vacuity(f, trace)
        findings.extend(x.to_json() for x in found)
        rows.append({"trace": trace.name, "verdict": "vacuous" if found else "clean",
                     "findings": len(found)})
    if method is None:
        method = "antecedent-failure"
    vacuous = sum(r["verdict"] == "vacuous" for r in rows)
    doc = {"command": "vacuity-signal", "formula": format_formula(f), "method": method,
           "status": "Vacuous" if vacuous else "Clean", "findings": findings,
           "counts": {"vacuous": vacuous, "total": len(rows)}, "traces": rows,
           "stats": {"traces": len(rows), "vacuous": vacuous}, "config": config}
    return doc, EXIT_FINDINGS if vacuous else EXIT_CLEAN


def cmd_localize(args):
    f = read_spec(args.spec)
    trace = load_csv(args.trace, args.duration)
    found = falsification_localize(f, trace)
    doc = {"command": "localize", "formula": format_formula(f),
           "checked": format_formula(to_nnf(f)), "method": "falsification",
           "status": "Localized" if found else "NotLocalized",
           "findings": [x.to_json() for x in found],
           "traces": [{"trace": trace.name, "verdict": "violated", "findings": len(found)}],
           "stats": {"candidates": len(found)},
           "config": {"duration": None if args.duration is None else format_number(args.duration)}}
    return doc, EXIT_FINDINGS if found else EXIT_CLEAN


def cmd_decompose(args):
    f = read_spec(args.spec)
    table = generate_mutex_predicates(predicates(f))
    checked = abstract_formula(f, table)
    doc = {"command": "decompose", "formula": format_formula(f), "checked": format_formula(checked),
           "status": "Decomposed", "findings": [], "atomTable": table.to_json(),
           "stats": {"predicates": len(table.rewrites), "atoms": len(table.atoms),
                     "mutexGroups": len(table.mutex)},
           "config": {}}
    return doc, EXIT_CLEAN


def cmd_gen_traces(args):
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    traces = generate_synthetic_traces(args.profile, args.count, args.seed)
    out = Path(args.out or "traces")
    try:
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for trace in traces:
            target = out / f"{trace.name}.csv"
            trace.to_csv(target)
            written.append(str(target))
    except OSError as exc:
        raise UsageError(f"cannot write to {out}: {exc.strerror}") from None
    doc = {"command": "gen-traces", "status": "Written", "findings": [], "written": written,
           "stats": {"traces": len(written)},
           "config": {"profile": str(args.profile), "count": args.count, "seed": args.seed}}
    return doc, EXIT_CLEAN


COMMANDS = {
    "debug": cmd_debug, "sat": cmd_sat, "entails": cmd_entails, "monitor": cmd_monitor,
    "vacuity-signal": cmd_vacuity_signal, "localize": cmd_localize,
    "decompose": cmd_decompose, "gen-traces": cmd_gen_traces,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_CLEAN
    if args.grid_step <= 0:
        print("specdebug: error: --grid-step must be positive", file=stderr)
        return EXIT_ERROR
    if args.horizon_cap is not None and args.horizon_cap < 0:
        print("specdebug: error: --horizon-cap must be non-negative", file=stderr)
        return EXIT_ERROR
    if args.duration is not None and args.duration <= 0:
        print("specdebug: error: --duration must be positive", file=stderr)
        return EXIT_ERROR
    try:
        doc, code = COMMANDS[args.command](args)
    except (UsageError, SpecDebugError) as exc:
        print(f"specdebug: error: {exc}", file=stderr)
        return EXIT_ERROR
    if not args.timings:
        doc = strip_timings(doc)
    text = dumps(doc) if args.format == "json" else render_text(doc)
    if args.out and args.command != "gen-traces":
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"specdebug: error: cannot write {args.out}: {exc.strerror}", file=stderr)
            return EXIT_ERROR
    else:
        stdout.write(text)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
