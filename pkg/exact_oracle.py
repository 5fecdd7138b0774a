"""
Exact rational evaluation of the bilinear rounding schemes, used as the reference by the tests.

Nothing here imports the package: weights, divisors and remainders are all Fractions, so the only
approximation is the conversion of the final answer to int.
"""

import math
from fractions import Fraction

ORACLE_L = Fraction(1, 10**9)


def exact_weights(dr, dc) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    dr, dc = Fraction(dr), Fraction(dc)
    return ((1 - dr) * (1 - dc), dr * (1 - dc), (1 - dr) * dc, dr * dc)


def exact_divisors(ws, L=ORACLE_L) -> list[Fraction]:
    return [1 / (Fraction(w) + L) for w in ws]


def fmod(n, v: Fraction) -> Fraction:
    """floored modulo"""
    return n - v * math.floor(Fraction(n) / v)


def floor_exact(ns, ws) -> int:
    return math.floor(sum((n * Fraction(w) for n, w in zip(ns, ws)), Fraction(0)))


def round_half_away_exact(ns, ws) -> int:
    value = sum((n * Fraction(w) for n, w in zip(ns, ws)), Fraction(0))
    floor = math.floor(value)
    fraction = value - floor
    if fraction > Fraction(1, 2) or (fraction == Fraction(1, 2) and value >= 0):
        return floor + 1
    return floor


def improved_exact(ns, ws, L=ORACLE_L) -> int:
    """floor of sum (N + N mod V) / V with V = 1 / (W + L)"""
    vs = exact_divisors(ws, L)
    return math.floor(sum(((n + fmod(n, v)) / v for n, v in zip(ns, vs)), Fraction(0)))


def improved_swapped_exact(ns, ws, L=ORACLE_L) -> int:
    """main quotients of N3 / N4 on D / C, remainders on their own divisors"""
    a, b, c, d = exact_divisors(ws, L)
    n1, n2, n3, n4 = ns
    total = n1 / a + n2 / b + n3 / d + n4 / c
    total += fmod(n1, a) / a + fmod(n2, b) / b + fmod(n3, c) / c + fmod(n4, d) / d
    return math.floor(total)
