"""Exact rational helpers: p-adic valuations, power-free parts, factorizations."""

import math
import numbers
from fractions import Fraction
from functools import reduce

from sympy import factorint, isprime, multiplicity

from errors import MalformedInputError

Valuation = int | float  # float only for math.inf


def to_fraction(value) -> Fraction:
    """Coerces ints, Fractions, sympy Rationals and "num/den" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_rational(value)
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"Cannot interpret {value!r} as an exact rational.")


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise MalformedInputError(f"Not a rational literal: {text!r}") from e


def format_rational(value: Fraction) -> str:
    value = to_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def check_prime(p: int) -> None:
    if not isprime(p):
        raise ValueError(f"{p} is not a prime.")


def valuation(q, p: int) -> Valuation:
    """Exponent of the prime p in q; math.inf for q = 0."""
    q = to_fraction(q)
    if q == 0:
        return math.inf
    num = multiplicity(p, abs(q.numerator)) if abs(q.numerator) != 1 else 0
    den = multiplicity(p, q.denominator) if q.denominator != 1 else 0
    return num - den


def min_valuation(values, p: int) -> Valuation:
    """Gauss valuation of a coefficient vector."""
    return min((valuation(v, p) for v in values), default=math.inf)


def prime_support(q) -> list[int]:
    """Primes dividing the numerator or denominator of q."""
    q = to_fraction(q)
    if q == 0:
        raise ValueError("Zero has no prime support.")
    primes = set(factorint(abs(q.numerator))) | set(factorint(q.denominator))
    return sorted(primes)


def factor_rational(q, limit: int | None = None) -> list[tuple[int, int]]:
    """
    Signed-exponent factorization of a nonzero rational. With a limit only trial
    division up to it is attempted, so the last factor may be composite.
    """
    q = to_fraction(q)
    if q == 0:
        raise ValueError("Cannot factor zero.")
    exps: dict[int, int] = {}
    for p, e in factorint(abs(q.numerator), limit=limit).items():
        exps[p] = exps.get(p, 0) + e
    for p, e in factorint(q.denominator, limit=limit).items():
        exps[p] = exps.get(p, 0) - e
    return sorted(exps.items())


def nth_power_free_part(q, n: int) -> tuple[Fraction, Fraction]:
    """Splits q = core * root**n with 0 <= v_p(core) < n at every p and root > 0."""
    q = to_fraction(q)
    if q == 0:
        raise ValueError("nth_power_free_part is undefined at 0.")
    if n < 1:
        raise ValueError("n must be positive.")
    core = Fraction(1 if q > 0 else -1)
    root = Fraction(1)
    for p, e in factor_rational(q):
        k = e // n
        core *= Fraction(p) ** (e - n * k)
        root *= Fraction(p) ** k
    return core, root


def is_nth_power(q, n: int) -> bool:
    q = to_fraction(q)
    if q == 0:
        return True
    core, _ = nth_power_free_part(q, n)
    return core == 1 or (n % 2 == 1 and core == -1)


def rational_nth_root(q, n: int) -> Fraction | None:
    """The rational n-th root of q if it exists (the positive one for even n)."""
    q = to_fraction(q)
    if q == 0:
        return Fraction(0)
    core, root = nth_power_free_part(q, n)
    if core == 1:
        return root
    if core == -1 and n % 2 == 1:
        return -root
    return None


def lcm_of_denominators(values) -> int:
    return reduce(math.lcm, (to_fraction(v).denominator for v in values), 1)


def content(values) -> Fraction:
    """Positive rational content: gcd of numerators over lcm of denominators."""
    values = [to_fraction(v) for v in values if v != 0]
    if not values:
        return Fraction(0)
    den = lcm_of_denominators(values)
    num = reduce(math.gcd, (abs(int(v * den)) for v in values))
    return Fraction(num, den)
