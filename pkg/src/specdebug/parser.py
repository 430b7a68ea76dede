"""Recursive-descent parser for the requirement text grammar.

Precedence, tightest first: ``!`` and the temporal operators, ``&&``,
``||``, then ``->`` (right associative). Unicode spellings of the
connectives are accepted as aliases.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import FormulaSyntaxError, IntervalError
from .formula import (FALSE, TRUE, Always, And, Atom, Eventually, Formula,
                      Implies, Not, Or, Predicate)
from .intervals import Interval

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>-?(?:\d+\.\d*|\.\d+|\d+)(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<implies>->|=>|⇒|→)
  | (?P<and>&&|&|∧)
  | (?P<or>\|\||\||∨)
  | (?P<cmp><=|>=|<|>|≤|≥)
  | (?P<not>!|¬|~)
  | (?P<temporal>◇|□)
  | (?P<const>⊤|⊥)
  | (?P<punct>[\[\](),])
""", re.VERBOSE)

_CMP_ALIASES = {"≤": "<=", "≥": ">="}


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def _position(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            line, col = _position(text, pos)
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "punct":
                kind = value
            elif kind == "ident" and value in ("true", "false"):
                kind = "const"
            tokens.append(Token(kind, value, pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    # helpers
    def peek(self, offset=0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok: Token | None = None, cls=FormulaSyntaxError):
        tok = tok or self.peek()
        line, col = _position(self.text, tok.pos)
        if cls is IntervalError:
            return IntervalError(f"{message} (line {line}, column {col})")
        return cls(message, line, col)

    def expect(self, kind) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        return self.advance()

    # grammar
    def parse(self) -> Formula:
        if self.peek().kind == "eof":
            raise self.error("empty formula")
        f = self.implication()
        if self.peek().kind != "eof":
            raise self.error(f"unexpected {self.peek().text!r}")
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek().kind == "implies":
            self.advance()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek().kind == "or":
            self.advance()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "and":
            self.advance()
            f = And(f, self.unary())
        return f

    def _at_temporal(self) -> bool:
        tok = self.peek()
        if tok.kind == "temporal":
            return True
        return (tok.kind == "ident" and tok.text in ("F", "G")
                and self.peek(1).kind in ("[", "(")
                and self.peek(2).kind == "number")

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "not":
            self.advance()
            return Not(self.unary())
        if self._at_temporal():
            self.advance()
            interval = self.interval()
            child = self.unary()
            if tok.text in ("F", "◇"):
                return Eventually(interval, child)
            return Always(interval, child)
        return self.primary()

    def interval(self) -> Interval:
        start = self.peek()
        if start.kind not in ("[", "("):
            raise self.error("expected an interval after temporal operator")
        self.advance()
        lo = self.number()
        self.expect(",")
        hi = self.number()
        end = self.peek()
        if end.kind not in ("]", ")"):
            raise self.error("expected ']' or ')' closing the interval")
        self.advance()
        lower_closed = start.kind == "["
        upper_closed = end.kind == "]"
        if lo < 0 or hi < 0:
            raise self.error("malformed interval: negative bound", start, IntervalError)
        if lo > hi:
            raise self.error("malformed interval: lower bound exceeds upper bound",
                             start, IntervalError)
        if lo == hi:
            raise self.error("malformed interval: temporal intervals must be nonsingular",
                             start, IntervalError)
        return Interval(lo, hi, lower_closed, upper_closed)

    def number(self) -> Fraction:
        tok = self.expect("number")
        try:
            return Fraction(tok.text)
        except ZeroDivisionError:
            raise self.error("division by zero in number", tok) from None

    def primary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "const":
            self.advance()
            return TRUE if tok.text in ("true", "⊤") else FALSE
        if tok.kind == "ident":
            self.advance()
            if self.peek().kind == "cmp":
                op = self.advance().text
                value = self.number()
                return Predicate(tok.text, _CMP_ALIASES.get(op, op), value)
            return Atom(tok.text)
        if tok.kind == "(":
            self.advance()
            f = self.implication()
            self.expect(")")
            return f
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse(text: str) -> Formula:
    """Parse a requirement. Raises FormulaSyntaxError or IntervalError."""
    return _Parser(text).parse()


def strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def parse_spec_file(path) -> Formula:
    with open(path, encoding="utf-8") as fh:
        return parse(strip_comments(fh.read()))
