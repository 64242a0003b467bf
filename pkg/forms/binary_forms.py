"""Dense binary forms: coefficient tuples in descending powers of the first variable."""

import math
from fractions import Fraction
from math import comb

from sympy import Rational

from arith.rationals import to_fraction, valuation

Form = tuple[Fraction, ...]


def as_form(coeffs) -> Form:
    return tuple(to_fraction(c) for c in coeffs)


def degree(form: Form) -> int:
    return len(form) - 1


def is_zero(form: Form) -> bool:
    return all(c == 0 for c in form)


def form_add(f: Form, g: Form) -> Form:
    if len(f) != len(g):
        raise ValueError("Forms of different degrees cannot be added.")
    return tuple(a + b for a, b in zip(f, g))


def form_sub(f: Form, g: Form) -> Form:
    return form_add(f, form_scale(g, -1))


def form_scale(f: Form, scalar) -> Form:
    scalar = to_fraction(scalar)
    return tuple(scalar * c for c in f)


def form_mul(f: Form, g: Form) -> Form:
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return tuple(out)


def linear_power(alpha, beta, n: int) -> Form:
    """(alpha x + beta z)^n."""
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    return tuple(comb(n, k) * alpha ** (n - k) * beta**k for k in range(n + 1))


def compose(f: Form, alpha, beta, gamma, delta) -> Form:
    """f(alpha x + beta z, gamma x + delta z)."""
    n = degree(f)
    first = [linear_power(alpha, beta, k) for k in range(n + 1)]
    second = [linear_power(gamma, delta, k) for k in range(n + 1)]
    out = [Fraction(0)] * (n + 1)
    for i, c in enumerate(f):
        if c == 0:
            continue
        term = form_mul(first[n - i], second[i])
        for k, t in enumerate(term):
            out[k] += c * t
    return tuple(out)


def derivative_first(f: Form) -> Form:
    """Partial derivative in the first variable."""
    n = degree(f)
    return tuple((n - i) * c for i, c in enumerate(f[:-1]))


def derivative_second(f: Form) -> Form:
    """Partial derivative in the second variable."""
    return tuple(i * c for i, c in enumerate(f) if i > 0)


def gauss_valuation(f: Form, p: int):
    return min((valuation(c, p) for c in f if c != 0), default=math.inf)


def evaluate(f: Form, x, z=1) -> Fraction:
    n = degree(f)
    x, z = to_fraction(x), to_fraction(z)
    return sum((c * x ** (n - i) * z**i for i, c in enumerate(f)), Fraction(0))


def leading_normalized(f: Form) -> Form:
    """f divided by its first nonzero coefficient."""
    lead = next(c for c in f if c != 0)
    return form_scale(f, 1 / lead)


def to_expr(f: Form, first, second):
    n = degree(f)
    return sum(
        Rational(c.numerator, c.denominator) * first ** (n - i) * second**i
        for i, c in enumerate(f)
    )
