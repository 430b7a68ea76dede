"""Report documents shared by the command-line tools: JSON schema, witness
encoding and the text rendering."""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .intervals import format_number
from .trace import TimedTrace

TIMING_KEYS = frozenset({"seconds"})


def load_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("report_schema.json")
                      .read_text(encoding="utf-8"))


def _cell(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, Fraction):
        return format_number(v)
    return v


def trace_json(trace: TimedTrace) -> dict:
    """Change-point form: per signal, ``[time, value]`` pairs where the
    value differs from the previous sample."""
    signals = {}
    for key in trace.signals:
        pts, last = [], object()
        for t, v in zip(trace.times, trace.column(key)):
            if v != last:
                pts.append([format_number(t), _cell(v)])
                last = v
        signals[key] = pts
    return {"name": trace.name, "duration": format_number(trace.duration), "signals": signals}


def strip_timings(doc):
    """Copy of ``doc`` without wall-clock fields, so equal inputs give
    byte-identical reports."""
    if isinstance(doc, dict):
        return {k: strip_timings(v) for k, v in doc.items() if k not in TIMING_KEYS}
    if isinstance(doc, list):
        return [strip_timings(v) for v in doc]
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# ------------------------------------------------------------------ text

def _finding_line(f: dict) -> str:
    kind = f["kind"]
    if "conjunct" in f:
        return f"{kind}: {f['conjunct']}  (in {f['enclosing']}, path {f['conjunctPath']})"
    if "implication" in f:
        return (f"{kind} [{f['trace']}]: antecedent of {f['implication']} never holds "
                f"on {f['effectiveInterval']}")
    if "literal" in f:
        where = f" [{f['trace']}]" if "trace" in f else ""
        return f"{kind}{where}: {f['literal']} at {f['occurrencePath']}  ->  {f['mutated']}"
    if "trace" in f:
        return f"{kind} [{f['trace']}]"
    return kind


def _witness_lines(w: dict) -> list[str]:
    lines = [f"witness (duration {w['duration']}):"]
    for key, pts in w["signals"].items():
        changes = ", ".join(f"{t}:{json.dumps(v)}" for t, v in pts)
        lines.append(f"  {key}: {changes}")
    return lines


def render_text(doc: dict) -> str:
    """Plain-text view of a report document. Everything shown comes from
    the document itself."""
    lines = [f"command: {doc['command']}"]
    for key in ("formula", "checked", "lhs", "rhs", "method"):
        if key not in doc or key == "checked" and doc[key] == doc.get("formula"):
            continue
        lines.append(f"{key}: {doc[key]}")
    lines.append(f"status: {doc['status']}")
    if "counts" in doc:
        c = doc["counts"]
        lines.append(f"vacuous signals / all signals: {c['vacuous']} / {c['total']}")
    for r in doc.get("traces", ()):
        extra = f" ({r['findings']} findings)" if "findings" in r else ""
        verdict = r.get("verdict", "")
        lines.append(f"  {r['trace']}: {verdict}{extra}".rstrip())
        for iv in r.get("satisfiedOn", ()):
            lines.append(f"    holds on {iv}")
    if doc["findings"]:
        lines.append("findings:")
        lines.extend(f"  - {_finding_line(f)}" for f in doc["findings"])
    if doc.get("witness"):
        lines.extend(_witness_lines(doc["witness"]))
    if "atomTable" in doc:
        table = doc["atomTable"]
        lines.append("atoms:")
        for a in table["atoms"]:
            spans = " u ".join(_span_text(s) for s in a["region"])
            lines.append(f"  {a['name']}: {a['variable']} in {spans}")
        for key, names in table["rewrites"].items():
            lines.append(f"  {key}  ->  {' | '.join(names.split('|'))}")
        for group in table["mutex"]:
            lines.append(f"  mutex {{{', '.join(group)}}}")
    for path in doc.get("written", ()):
        lines.append(f"wrote {path}")
    for msg in doc.get("diagnostics", ()):
        lines.append(f"warning: {msg}")
    stats = doc["stats"]
    simple = {k: v for k, v in stats.items() if not isinstance(v, (list, dict))}
    if simple:
        lines.append("stats: " + ", ".join(f"{k}={v}" for k, v in simple.items()))
    return "\n".join(lines) + "\n"


def _span_text(s) -> str:
    lo, hi, lc, hc = s
    return f"{'[' if lc else '('}{'-inf' if lo is None else lo},{'inf' if hi is None else hi}{']' if hc else ')'}"
