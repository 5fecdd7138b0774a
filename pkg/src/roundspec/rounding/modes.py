"""
Scalar rounding modes: the five IEEE 754-2008 rules plus Maxfield's ten-mode diagram, and floored real modulo.

Every mode is described as a decision between floor(x) and floor(x) + 1, driven by where the
fractional part of x falls relative to one half. Scalar inputs are converted to Fraction first, so
ties are exact equality tests and never epsilon comparisons; round_array applies the same rules to
numpy arrays (the fractional part x - floor(x) of a double is computed exactly).
"""

import csv
import math
from decimal import Decimal
from enum import Enum, IntEnum
from fractions import Fraction
from numbers import Integral, Rational, Real
from pathlib import Path

import numpy as np

from src.roundspec.utils.errors import DomainError


class RoundingMode(Enum):
    HALF_TO_EVEN = "half-to-even"
    HALF_AWAY_FROM_ZERO = "half-away-from-zero"
    TOWARD_ZERO = "toward-zero"
    TOWARD_POSITIVE_INFINITY = "toward-positive-infinity"
    TOWARD_NEGATIVE_INFINITY = "toward-negative-infinity"
    HALF_UP_SYMMETRIC = "half-up-symmetric"
    HALF_UP_ASYMMETRIC = "half-up-asymmetric"
    HALF_DOWN_SYMMETRIC = "half-down-symmetric"
    HALF_DOWN_ASYMMETRIC = "half-down-asymmetric"
    HALF_ODD = "half-odd"
    CEILING = "ceiling"
    FLOOR_MODE = "floor-mode"
    TRUNCATE = "truncate"
    AWAY_FROM_ZERO = "away-from-zero"

    @property
    def label(self) -> str:
        """short name used in the comparison tables, e.g. R-H-U (s)"""
        return _LABELS[self]


_LABELS = {
    RoundingMode.HALF_TO_EVEN: "R-H-E",
    RoundingMode.HALF_AWAY_FROM_ZERO: "round",
    RoundingMode.TOWARD_ZERO: "fix",
    RoundingMode.TOWARD_POSITIVE_INFINITY: "ceil",
    RoundingMode.TOWARD_NEGATIVE_INFINITY: "floor",
    RoundingMode.HALF_UP_SYMMETRIC: "R-H-U (s)",
    RoundingMode.HALF_UP_ASYMMETRIC: "R-H-U (a)",
    RoundingMode.HALF_DOWN_SYMMETRIC: "R-H-D (s)",
    RoundingMode.HALF_DOWN_ASYMMETRIC: "R-H-D (a)",
    RoundingMode.HALF_ODD: "R-H-O",
    RoundingMode.CEILING: "R-C",
    RoundingMode.FLOOR_MODE: "R-F",
    RoundingMode.TRUNCATE: "R-T-Z",
    RoundingMode.AWAY_FROM_ZERO: "R-A-F-Z",
}

# -------- the two reference tables --------
TABLE1_MODES = (
    RoundingMode.HALF_TO_EVEN,
    RoundingMode.HALF_AWAY_FROM_ZERO,
    RoundingMode.TOWARD_ZERO,
    RoundingMode.TOWARD_POSITIVE_INFINITY,
    RoundingMode.TOWARD_NEGATIVE_INFINITY,
)
TABLE1_INPUTS = tuple(Decimal(s) for s in ("11.5", "12.5", "-11.5", "-12.5"))

TABLE2_MODES = (
    RoundingMode.HALF_UP_SYMMETRIC,
    RoundingMode.HALF_UP_ASYMMETRIC,
    RoundingMode.HALF_DOWN_SYMMETRIC,
    RoundingMode.HALF_DOWN_ASYMMETRIC,
    RoundingMode.HALF_TO_EVEN,
    RoundingMode.HALF_ODD,
    RoundingMode.CEILING,
    RoundingMode.FLOOR_MODE,
    RoundingMode.TRUNCATE,
    RoundingMode.AWAY_FROM_ZERO,
)
TABLE2_INPUTS = tuple(
    Decimal(s)
    for s in ("-2.0", "-1.7", "-1.5", "-1.3", "-1.0", "-0.7", "-0.5", "-0.3", "0.0", "0.3", "0.5", "0.7", "1.0", "1.3", "1.5", "1.7", "2.0")
)


class LostFraction(IntEnum):
    """Where the fractional part x - floor(x) sits relative to one half."""

    EXACTLY_ZERO = 0
    LESS_THAN_HALF = 1
    EXACTLY_HALF = 2
    MORE_THAN_HALF = 3


class NumberKind(Enum):
    INTEGER = "integer"
    HALF_INTEGER = "half-integer"
    NON_HALF_INTEGER = "non-half-integer"


def _exact(x) -> Fraction:
    """Exact rational value of an int, Fraction, Decimal, float or decimal string."""
    match x:
        case bool():
            raise DomainError(f"expected a real number, got {x!r}")
        case Integral():
            return Fraction(int(x))
        case Rational():
            return Fraction(x.numerator, x.denominator)
        case Decimal():
            if not x.is_finite():
                raise DomainError(f"non-finite input {x!r}")
            return Fraction(x)
        case str():
            return _exact(Decimal(x))
        case Real():
            if not math.isfinite(x):
                raise DomainError(f"non-finite input {x!r}")
            return Fraction(float(x))
    raise DomainError(f"expected a real number, got {type(x).__name__}")


def _lost_fraction(fraction: Fraction) -> LostFraction:
    if fraction == 0:
        return LostFraction.EXACTLY_ZERO
    if fraction < Fraction(1, 2):
        return LostFraction.LESS_THAN_HALF
    if fraction == Fraction(1, 2):
        return LostFraction.EXACTLY_HALF
    return LostFraction.MORE_THAN_HALF


def _steps_up(mode: RoundingMode, lost: LostFraction, negative: bool, floor_is_odd: bool) -> bool:
    """
    True when the result is floor(x) + 1 instead of floor(x).
    negative is the sign of x itself; floor_is_odd picks the parity-driven tie rules.
    """
    if lost == LostFraction.EXACTLY_ZERO:
        return False

    match mode:
        case RoundingMode.TOWARD_NEGATIVE_INFINITY | RoundingMode.FLOOR_MODE:
            return False
        case RoundingMode.TOWARD_POSITIVE_INFINITY | RoundingMode.CEILING:
            return True
        case RoundingMode.TOWARD_ZERO | RoundingMode.TRUNCATE:
            return negative
        case RoundingMode.AWAY_FROM_ZERO:
            return not negative

    if lost != LostFraction.EXACTLY_HALF:
        return lost == LostFraction.MORE_THAN_HALF

    match mode:
        case RoundingMode.HALF_TO_EVEN:
            return floor_is_odd
        case RoundingMode.HALF_ODD:
            return not floor_is_odd
        case RoundingMode.HALF_AWAY_FROM_ZERO | RoundingMode.HALF_UP_SYMMETRIC:
            return not negative
        case RoundingMode.HALF_UP_ASYMMETRIC:
            return True
        case RoundingMode.HALF_DOWN_SYMMETRIC:
            return negative
        case RoundingMode.HALF_DOWN_ASYMMETRIC:
            return False
    raise AssertionError(f"unhandled rounding mode {mode}")


def real_mod(a, b):
    """
    Floored modulo a - b * floor(a / b); the result takes the sign of b.

    Exact for int / Fraction operands; floats go through Python's float %, which is floored as well.
    Raises DomainError when b is zero.
    """
    if b == 0:
        raise DomainError("modulo by zero is undefined")
    if isinstance(a, float) or isinstance(b, float):
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DomainError(f"non-finite modulo operands {a!r} mod {b!r}")
        return a % b
    return a - b * math.floor(Fraction(a) / Fraction(b))


def floor_via_mod(x) -> int:
    """floor(x) = x - x mod 1, evaluated exactly."""
    value = _exact(x)
    return int(value - real_mod(value, 1))


def apply_mode(x, mode: RoundingMode) -> int:
    """
    Round a finite real to an integer under the given mode.

    Parameters:
        - x (int | float | Fraction | Decimal | str): the value; decimal strings and Decimals are parsed exactly.
        - mode (RoundingMode): the rule.

    Returns:
        - int: the rounded value; signed zero is not modelled so -0 comes back as 0.
    """
    value = _exact(x)
    floor = floor_via_mod(value)
    lost = _lost_fraction(value - floor)
    return floor + 1 if _steps_up(mode, lost, value < 0, floor % 2 == 1) else floor


def classify(x) -> NumberKind:
    """integer / half-integer / non-half-integer, as the worked interpolation tables are discussed."""
    value = _exact(x)
    match _lost_fraction(value - math.floor(value)):
        case LostFraction.EXACTLY_ZERO:
            return NumberKind.INTEGER
        case LostFraction.EXACTLY_HALF:
            return NumberKind.HALF_INTEGER
    return NumberKind.NON_HALF_INTEGER


def round_array(values: np.ndarray, mode: RoundingMode) -> np.ndarray:
    """
    Vectorized apply_mode over a float64 array; returns integer-valued float64 of the same shape.
    Bit-identical to apply_mode element by element.
    """
    x = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise DomainError("non-finite value in array to round")

    floor = np.floor(x)
    fraction = x - floor  # exact in binary floating point
    negative = x < 0
    floor_is_odd = np.remainder(floor, 2.0) == 1.0
    inexact = fraction != 0.0
    tie = fraction == 0.5
    nearest_up = fraction > 0.5

    match mode:
        case RoundingMode.TOWARD_NEGATIVE_INFINITY | RoundingMode.FLOOR_MODE:
            up = np.zeros_like(inexact)
        case RoundingMode.TOWARD_POSITIVE_INFINITY | RoundingMode.CEILING:
            up = inexact
        case RoundingMode.TOWARD_ZERO | RoundingMode.TRUNCATE:
            up = inexact & negative
        case RoundingMode.AWAY_FROM_ZERO:
            up = inexact & ~negative
        case RoundingMode.HALF_TO_EVEN:
            up = nearest_up | (tie & floor_is_odd)
        case RoundingMode.HALF_ODD:
            up = nearest_up | (tie & ~floor_is_odd)
        case RoundingMode.HALF_AWAY_FROM_ZERO | RoundingMode.HALF_UP_SYMMETRIC:
            up = nearest_up | (tie & ~negative)
        case RoundingMode.HALF_UP_ASYMMETRIC:
            up = nearest_up | tie
        case RoundingMode.HALF_DOWN_SYMMETRIC:
            up = nearest_up | (tie & negative)
        case RoundingMode.HALF_DOWN_ASYMMETRIC:
            up = nearest_up
        case _:
            raise AssertionError(f"unhandled rounding mode {mode}")
    return floor + up


def conformance_table(modes, inputs) -> list[list[int]]:
    """One row per mode, one column per input; cell = apply_mode(input, mode)."""
    inputs = list(inputs)
    return [[apply_mode(x, mode) for x in inputs] for mode in modes]


def conformance_table_to_csv(modes, inputs, path: Path):
    """
    Write a conformance table: header row of inputs, then one row per mode led by its table label.
    """
    modes, inputs = list(modes), list(inputs)
    table = conformance_table(modes, inputs)
    with Path(path).open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["mode", *[str(x) for x in inputs]])
        for mode, row in zip(modes, table):
            writer.writerow([mode.label, *row])
