"""Exact rational time intervals and the interval sum used for effective
intervals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import IntervalError


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions and decimal/fraction strings exactly.

    Floats are rejected on purpose: interval bookkeeping must be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not time values")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_number(x: Fraction) -> str:
    """Shortest exact text: integer, terminating decimal, or ``a/b``."""
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    scaled = x * 10**digits
    sign = "-" if scaled < 0 else ""
    n = abs(scaled.numerator)
    whole, frac = divmod(n, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class Interval:
    lower: Fraction
    upper: Fraction
    lower_closed: bool = True
    upper_closed: bool = True

    def __post_init__(self):
        lo = to_fraction(self.lower)
        hi = to_fraction(self.upper)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if lo < 0:
            raise IntervalError(f"negative lower bound {format_number(lo)}")
        if lo > hi:
            raise IntervalError(
                f"lower bound {format_number(lo)} exceeds upper bound {format_number(hi)}")
        if lo == hi and not (self.lower_closed and self.upper_closed):
            raise IntervalError(f"empty interval {self}")

    @classmethod
    def closed(cls, lower, upper) -> "Interval":
        return cls(lower, upper, True, True)

    @property
    def singular(self) -> bool:
        return self.lower == self.upper

    @property
    def is_closed(self) -> bool:
        return self.lower_closed and self.upper_closed

    def __add__(self, other: "Interval") -> "Interval":
        if not isinstance(other, Interval):
            return NotImplemented
        return interval_add(self, other)

    def contains(self, t) -> bool:
        t = to_fraction(t)
        above = t >= self.lower if self.lower_closed else t > self.lower
        below = t <= self.upper if self.upper_closed else t < self.upper
        return above and below

    def __str__(self) -> str:
        left = "[" if self.lower_closed else "("
        right = "]" if self.upper_closed else ")"
        return f"{left}{format_number(self.lower)},{format_number(self.upper)}{right}"


ZERO = Interval(0, 0)


def interval_add(a: Interval, b: Interval) -> Interval:
    """Component-wise sum; an open end on either side stays open."""
    return Interval(
        a.lower + b.lower,
        a.upper + b.upper,
        a.lower_closed and b.lower_closed,
        a.upper_closed and b.upper_closed,
    )
