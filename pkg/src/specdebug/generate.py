"""Seeded synthetic trace generation.

Built-in profiles:

``at``
    A small automatic-transmission-like car: random throttle and braking
    drive the speed, a four-gear shift schedule with hysteresis picks the
    gear, and rpm follows from speed and gear ratio. Columns: speed, rpm,
    gear and the gear indicators g1..g4. Duration 30, step 0.04.
``at-gear3``
    Same columns, but the car cruises in third gear the whole time.

Custom profiles are JSON documents (or dicts)::

    {"duration": 30, "step": "0.1",
     "variables": {"x": {"kind": "real", "range": [0, 100], "rate": 0.5},
                   "m": {"kind": "discrete", "values": [1, 2, 3], "rate": 0.2},
                   "b": {"kind": "bool", "rate": 1}}}

``rate`` is the expected number of value changes per time unit.
"""
from __future__ import annotations

import json
import random
from fractions import Fraction
from pathlib import Path

from .errors import ProfileError
from .intervals import to_fraction
from .trace import TimedTrace

AT_STEP = Fraction(1, 25)
AT_DURATION = Fraction(30)
UPSHIFT = {1: 25, 2: 50, 3: 75}          # gear k -> k+1 above this speed
DOWNSHIFT = {2: 15, 3: 38, 4: 62}        # gear k -> k-1 below this speed
RATIO = {1: 120, 2: 72, 3: 52, 4: 38}
IDLE_RPM = 800

BUILTIN = ("at", "at-gear3")


def _q(x: float) -> Fraction:
    return Fraction(round(x * 100), 100)


def _rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


def _at_trace(rng: random.Random, name: str, fixed_gear: int | None) -> TimedTrace:
    n = int(AT_DURATION / AT_STEP)
    dt = float(AT_STEP)
    throttle = rng.uniform(0, 100)
    brake_left = 0.0
    brake_force = 0.0
    if fixed_gear is None:
        speed = rng.uniform(0, 100)
        gear = 1
        while gear < 4 and speed > UPSHIFT[gear]:
            gear += 1
    else:
        speed = rng.uniform(45, 65)
        gear = fixed_gear
    cols = {"speed": [], "rpm": [], "gear": [], "g1": [], "g2": [], "g3": [], "g4": []}
    for _ in range(n + 1):
        cols["speed"].append(_q(speed))
        cols["rpm"].append(_q(speed * RATIO[gear] + IDLE_RPM))
        cols["gear"].append(gear)
        for k in range(1, 5):
            cols[f"g{k}"].append(gear == k)
        if fixed_gear is None:
            if rng.random() < 0.5 * dt:
                throttle = rng.uniform(0, 80)
            if brake_left <= 0 and rng.random() < 0.3 * dt:
                brake_left = rng.uniform(1, 3)
                brake_force = rng.uniform(4, 10)
            decel = brake_force if brake_left > 0 else 0.0
            brake_left -= dt
            speed = min(160.0, max(0.0, speed + (0.1 * throttle - 0.05 * speed - decel) * dt))
            if gear < 4 and speed > UPSHIFT[gear]:
                gear += 1
            elif gear > 1 and speed < DOWNSHIFT[gear]:
                gear -= 1
        else:
            speed = min(72.0, max(40.0, speed + rng.gauss(0, 1.5) * dt ** 0.5))
    times = tuple(AT_STEP * i for i in range(n + 1))
    return TimedTrace(times, cols, AT_DURATION, name)


def _load_profile(profile) -> dict:
    if isinstance(profile, dict):
        return profile
    path = Path(profile)
    if not path.exists():
        raise ProfileError(f"unknown profile {profile!r} (built-in: {', '.join(BUILTIN)})")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ProfileError(f"cannot read profile {profile}: {exc}") from None


def _custom_trace(rng: random.Random, spec: dict, name: str) -> TimedTrace:
    try:
        duration = to_fraction(str(spec["duration"]))
        step = to_fraction(str(spec.get("step", 1)))
        variables = spec["variables"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ProfileError(f"invalid profile: {exc}") from None
    if duration <= 0 or step <= 0 or not variables:
        raise ProfileError("profile needs positive duration and step and at least one variable")
    n = int(duration / step)
    times = [step * i for i in range(n + 1)]
    if times[-1] != duration:
        times.append(duration)
    cols = {}
    for var in sorted(variables):
        vspec = variables[var]
        kind = vspec.get("kind", "real")
        rate = float(vspec.get("rate", 1))
        if kind == "real":
            lo, hi = (float(x) for x in vspec.get("range", (0, 1)))
            draw = lambda: _q(rng.uniform(lo, hi))  # noqa: E731
        elif kind == "discrete":
            values = list(vspec.get("values", ()))
            if not values:
                raise ProfileError(f"variable {var}: discrete kind needs values")
            draw = lambda: Fraction(str(rng.choice(values)))  # noqa: E731
        elif kind == "bool":
            draw = lambda: rng.random() < 0.5  # noqa: E731
        else:
            raise ProfileError(f"variable {var}: unknown kind {kind!r}")
        value = draw()
        column = []
        for i in range(len(times)):
            if i and rng.random() < rate * float(step):
                value = draw()
            column.append(value)
        cols[var] = column
    return TimedTrace(tuple(times), cols, duration, name)


def generate_synthetic_traces(profile, count: int, seed: int = 0) -> list[TimedTrace]:
    """``count`` deterministic traces; trace i depends only on (seed, i)."""
    if count < 0:
        raise ProfileError("count must be non-negative")
    if profile == "at":
        return [_at_trace(_rng(seed, i), f"at-{seed}-{i:04d}", None) for i in range(count)]
    if profile == "at-gear3":
        return [_at_trace(_rng(seed, i), f"at-gear3-{seed}-{i:04d}", 3) for i in range(count)]
    spec = _load_profile(profile)
    label = Path(profile).stem if not isinstance(profile, dict) else "custom"
    return [_custom_trace(_rng(seed, i), spec, f"{label}-{seed}-{i:04d}") for i in range(count)]
