"""Local Hilbert symbols over Q and small-height witnesses for diagonal conics."""

import math
from fractions import Fraction
from itertools import product

from loguru import logger
from sympy.ntheory import legendre_symbol

from arith.rationals import check_prime, prime_support, to_fraction, valuation

INFINITE_PLACE = math.inf


def _square_class_integer(q: Fraction) -> int:
    # q * den^2 is an integer in the same square class
    return q.numerator * q.denominator


def _split(n: int, p: int) -> tuple[int, int]:
    v = valuation(n, p)
    return v, n // p**v


def _odd_symbol(a: int, b: int, p: int) -> int:
    alpha, u = _split(a, p)
    beta, w = _split(b, p)
    sign = -1 if (alpha * beta * (p - 1) // 2) % 2 else 1
    if beta % 2:
        sign *= legendre_symbol(u % p, p)
    if alpha % 2:
        sign *= legendre_symbol(w % p, p)
    return sign


def _dyadic_symbol(a: int, b: int) -> int:
    alpha, u = _split(a, 2)
    beta, w = _split(b, 2)

    def eps(t: int) -> int:
        return ((t - 1) // 2) % 2

    def omega(t: int) -> int:
        return ((t * t - 1) // 8) % 2

    exponent = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
    return -1 if exponent % 2 else 1


def hilbert_symbol(a, b, place) -> int:
    """
    Local Hilbert symbol (a, b)_v for nonzero rationals; place is a prime or
    INFINITE_PLACE.
    """
    a, b = to_fraction(a), to_fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments.")
    if place == INFINITE_PLACE:
        return -1 if a < 0 and b < 0 else 1
    check_prime(place)
    ai, bi = _square_class_integer(a), _square_class_integer(b)
    if place == 2:
        return _dyadic_symbol(ai, bi)
    return _odd_symbol(ai, bi, place)


def relevant_places(a, b) -> list:
    """Places where (a, b)_v can be nontrivial: infinity, 2 and the primes of ab."""
    a, b = to_fraction(a), to_fraction(b)
    primes = set(prime_support(a)) | set(prime_support(b)) | {2}
    return [INFINITE_PLACE] + sorted(primes)


def local_symbols(a, b) -> dict:
    return {place: hilbert_symbol(a, b, place) for place in relevant_places(a, b)}


def conic_is_split(a, b) -> bool:
    """True iff a x^2 + b y^2 = z^2 has a nontrivial rational point."""
    return all(s == 1 for s in local_symbols(a, b).values())


def find_conic_point(a: int, b: int, bound: int) -> tuple[int, int, int] | None:
    """Smallest primitive (x, y, z) with a x^2 + b y^2 = z^2 and 1 <= max(x, y) <= bound."""
    for height in range(1, bound + 1):
        for x, y in product(range(height + 1), repeat=2):
            if max(x, y) != height or math.gcd(x, y) != 1:
                continue
            value = a * x * x + b * y * y
            if value < 0:
                continue
            z = math.isqrt(value)
            if z * z == value:
                return x, y, z
    logger.debug(f"No conic point for ({a}, {b}) up to height {bound}.")
    return None
