"""Truncated power series over exact rationals.

A series is a plain list of Fractions, index = power of the variable,
truncated at a fixed order. Everything here is exact integer arithmetic;
these series feed the coefficient tables once, at build time, and are then
frozen. Kept deliberately tiny: only the operations the table generator
needs.
"""

from __future__ import annotations

import math
from fractions import Fraction

Series = list  # list[Fraction], index = power


def bernoulli_numbers(count: int) -> list[Fraction]:
    """B_0 .. B_count with B_1 = -1/2, via the defining recurrence."""
    out = [Fraction(1)]
    for m in range(1, count + 1):
        s = Fraction(0)
        for j in range(m):
            s += math.comb(m + 1, j) * out[j]
        out.append(-s / (m + 1))
    return out


def zero_series(order: int) -> Series:
    return [Fraction(0)] * (order + 1)


def constant(value, order: int) -> Series:
    s = zero_series(order)
    s[0] = Fraction(value)
    return s


def add(a: Series, b: Series) -> Series:
    return [x + y for x, y in zip(a, b)]


def scale(c, a: Series) -> Series:
    c = Fraction(c)
    return [c * x for x in a]


def multiply(a: Series, b: Series) -> Series:
    order = len(a) - 1
    out = zero_series(order)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j in range(order - i + 1):
            y = b[j]
            if y != 0:
                out[i + j] += x * y
    return out


def derivative(a: Series) -> Series:
    out = zero_series(len(a) - 1)
    for i in range(1, len(a)):
        out[i - 1] = i * a[i]
    return out


def divide_by_x(a: Series) -> Series:
    """Shift one power down; the constant term must vanish identically."""
    if a[0] != 0:
        raise ValueError("series has a constant term; cannot divide by x")
    out = zero_series(len(a) - 1)
    out[: len(a) - 1] = a[1:]
    return out


def exponential(a: Series) -> Series:
    """exp of a series with zero constant term, E' = A'E term by term."""
    if a[0] != 0:
        raise ValueError("exp needs zero constant term")
    order = len(a) - 1
    e = zero_series(order)
    e[0] = Fraction(1)
    for k in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            if a[j] != 0:
                acc += j * a[j] * e[k - j]
        e[k] = acc / k
    return e


def evaluate(a: Series, x):
    """Horner evaluation at an mpmath (or plain) number."""
    acc = 0 * x
    for coeff in reversed(a):
        if coeff == 0:
            acc = acc * x
        else:
            acc = acc * x + x.__class__(coeff.numerator) / coeff.denominator
    return acc
