"""
The modulo-based improved-floor scheme.

Each addend N/V of a weighted sum is replaced by (N + N mod V) / V, where V = 1 / (W + L) is the
L-perturbed reciprocal of a weight, and the final sum is floored. Writing N/V = k + f, the remainder
is N mod V = V*f, so the transformed addend is k + 2f and its floor is round-half-up of N/V.

The functions are generic over the number type: pass floats for the production path or Fractions
for an exact evaluation.
"""

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Integral
from pathlib import Path

from src.roundspec.engine.types import Neighborhood, WeightVector
from src.roundspec.rounding.modes import RoundingMode, apply_mode, real_mod
from src.roundspec.utils.errors import ParameterError
from src.roundspec.utils.general import get_logger

logger = get_logger("improved")

IMPROVED_FLOOR = "improved-floor"
IMPROVED_FLOOR_EXACT_SUM = "improved-floor-exact-sum"

# the addends used to compare the schemes before and after summation
CANONICAL_NUMERATORS = (13, 11, 17, 19, 14, 13, 11, 11, 3, 9)
CANONICAL_DIVISORS = (4, 10, 3, 8, 3, 5, 7, 9, 2, 6)

FIGURE_SCHEMES = (
    RoundingMode.TOWARD_NEGATIVE_INFINITY,
    RoundingMode.TOWARD_POSITIVE_INFINITY,
    RoundingMode.TOWARD_ZERO,
    RoundingMode.HALF_AWAY_FROM_ZERO,
    IMPROVED_FLOOR,
)


@dataclass(frozen=True)
class DivisorSet:
    """A, B, C, D = 1/(W1+L) ... 1/(W4+L) and the perturbation L they were built with."""

    a: float
    b: float
    c: float
    d: float
    L: float

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class AddendTrace:
    numerator: int
    divisor: float
    raw_quotient: float
    remainder: float
    transformed: float


@dataclass(frozen=True)
class ErrorProfile:
    scheme: str
    per_addend_abs_errors: list = field(default_factory=list)

    @property
    def total_abs_error(self) -> float:
        return math.fsum(self.per_addend_abs_errors)


def make_divisors(w: WeightVector, L=1e-9) -> DivisorSet:
    """
    Build the per-addend divisors from a weight vector.

    Parameters:
        - w (WeightVector): the bilinear weights; a zero weight is allowed, that is what L guards against.
        - L (float | Fraction): strictly positive perturbation.
    """
    if not L > 0 or not math.isfinite(L):
        raise ParameterError(f"L must be a positive finite number, got {L!r}")
    weights = w.as_tuple()
    if any(not math.isfinite(x) or x < 0 for x in weights):
        raise ParameterError(f"weights must be finite and non-negative, got {weights}")
    a, b, c, d = (1 / (x + L) for x in weights)
    return DivisorSet(a, b, c, d, L)


def _check_addend(n, v):
    if not isinstance(n, Integral) or isinstance(n, bool) or n < 0:
        raise ParameterError(f"numerators are non-negative integers, got {n!r}")
    if not v > 0:
        raise ParameterError(f"divisors must be positive, got {v!r}")


def improved_addend(n, v) -> AddendTrace:
    """Trace of one transformed addend (N + N mod V) / V."""
    _check_addend(n, v)
    n = int(n)
    remainder = real_mod(n, v)
    return AddendTrace(
        numerator=n,
        divisor=v,
        raw_quotient=n / v,
        remainder=remainder,
        transformed=(n + remainder) / v,
    )


def _check_lists(numerators, divisors):
    numerators, divisors = list(numerators), list(divisors)
    if not numerators or len(numerators) != len(divisors):
        raise ParameterError(f"need equally long, non-empty numerator and divisor lists, got {len(numerators)} / {len(divisors)}")
    for n, v in zip(numerators, divisors):
        _check_addend(n, v)
    return [int(n) for n in numerators], divisors


def improved_total(numerators, divisors):
    """sum of the transformed addends before flooring, accumulated left to right"""
    numerators, divisors = _check_lists(numerators, divisors)
    total = 0
    for n, v in zip(numerators, divisors):
        total = total + (n + real_mod(n, v)) / v
    return total


def improved_floor_sum(numerators, divisors) -> int:
    """floor of the sum of the transformed addends"""
    return math.floor(improved_total(numerators, divisors))


def expanded_total(numerators, divisors):
    """
    The same quantity evaluated in expanded order: every N/V first, then every (N mod V)/V.
    Algebraically identical to improved_total.
    """
    numerators, divisors = _check_lists(numerators, divisors)
    total = 0
    for n, v in zip(numerators, divisors):
        total = total + n / v
    for n, v in zip(numerators, divisors):
        total = total + real_mod(n, v) / v
    return total


def expanded_sum(numerators, divisors) -> int:
    return math.floor(expanded_total(numerators, divisors))


def improved_floor_sum_swapped(neighborhood: Neighborhood, divisors: DivisorSet) -> int:
    """
    Expanded form with the main quotients of N3 and N4 using each other's divisor (D and C);
    the remainder terms keep the original pairing.
    """
    n1, n2, n3, n4 = neighborhood.as_tuple()
    a, b, c, d = divisors.as_tuple()
    _check_lists((n1, n2, n3, n4), (a, b, c, d))
    n1, n2, n3, n4 = int(n1), int(n2), int(n3), int(n4)
    total = n1 / a + n2 / b + n3 / d + n4 / c
    total = total + real_mod(n1, a) / a + real_mod(n2, b) / b + real_mod(n3, c) / c + real_mod(n4, d) / d
    return math.floor(total)


# -------- round-off error analysis --------
def scheme_name(scheme) -> str:
    if isinstance(scheme, RoundingMode):
        return scheme.label
    assert scheme in (IMPROVED_FLOOR, IMPROVED_FLOOR_EXACT_SUM), f"unknown scheme {scheme!r}"
    return scheme


def _exact_pairs(numerators, divisors):
    numerators, divisors = _check_lists(numerators, divisors)
    return [(n, Fraction(v)) for n, v in zip(numerators, divisors)]


def per_addend_error_profile(numerators=CANONICAL_NUMERATORS, divisors=CANONICAL_DIVISORS, schemes=FIGURE_SCHEMES) -> list[ErrorProfile]:
    """
    Round every addend N/V on its own and record |rounded - N/V| per addend.
    The improved scheme rounds an addend to floor((N + N mod V) / V).
    All arithmetic is exact; errors are reported as floats.
    """
    pairs = _exact_pairs(numerators, divisors)
    profiles = []
    for scheme in schemes:
        errors = []
        for n, v in pairs:
            exact = Fraction(n) / v
            if scheme == IMPROVED_FLOOR:
                rounded = math.floor(improved_addend(n, v).transformed)
            else:
                rounded = apply_mode(exact, scheme)
            errors.append(float(abs(rounded - exact)))
        profiles.append(ErrorProfile(scheme_name(scheme), errors))
        logger.debug(f"per-addend {scheme_name(scheme)}: total {profiles[-1].total_abs_error:.6f}")
    return profiles


def post_sum_error_profile(numerators=CANONICAL_NUMERATORS, divisors=CANONICAL_DIVISORS, schemes=FIGURE_SCHEMES) -> list[ErrorProfile]:
    """
    Round the single exact sum of N/V once and record |rounded - sum|.

    The improved scheme is reported under two readings: improved-floor is the literal transformed-sum
    value of improved_floor_sum, improved-floor-exact-sum is the floor of the untransformed exact sum.
    """
    pairs = _exact_pairs(numerators, divisors)
    exact_sum = sum((Fraction(n) / v for n, v in pairs), Fraction(0))
    profiles = []
    for scheme in schemes:
        if scheme == IMPROVED_FLOOR:
            literal = improved_floor_sum([n for n, _ in pairs], [v for _, v in pairs])
            profiles.append(ErrorProfile(IMPROVED_FLOOR, [float(abs(literal - exact_sum))]))
            profiles.append(ErrorProfile(IMPROVED_FLOOR_EXACT_SUM, [float(abs(math.floor(exact_sum) - exact_sum))]))
        else:
            rounded = apply_mode(exact_sum, scheme)
            profiles.append(ErrorProfile(scheme_name(scheme), [float(abs(rounded - exact_sum))]))
    logger.debug(f"post-sum exact value {float(exact_sum):.6f}")
    return profiles


def error_profiles_to_csv(profiles, path: Path):
    """rows of scheme,addend_index,abs_error; floats are written in shortest round-trip form"""
    with Path(path).open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["scheme", "addend_index", "abs_error"])
        for profile in profiles:
            for index, error in enumerate(profile.per_addend_abs_errors):
                writer.writerow([profile.scheme, index, repr(error)])
