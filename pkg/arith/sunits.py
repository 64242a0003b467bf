"""S-unit class groups and the S-unit equation lambda + mu = 1 over Q."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from loguru import logger

from arith.rationals import check_prime, to_fraction


@dataclass(frozen=True)
class SUnitClassSet:
    primes: tuple[int, ...]
    exponent: int
    representatives: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.representatives)

    def __iter__(self):
        return iter(self.representatives)


def _normalize_primes(primes) -> tuple[int, ...]:
    primes = tuple(sorted(set(int(p) for p in primes)))
    if not primes:
        raise ValueError("The prime set S must be nonempty.")
    for p in primes:
        check_prime(p)
    return primes


def s_unit_classes(primes, n: int) -> SUnitClassSet:
    """Representatives +-prod p^e_p, 0 <= e_p < n, of <-1, S> in Q*/Q*^n."""
    primes = _normalize_primes(primes)
    if n < 1:
        raise ValueError("n must be positive.")
    reps = []
    for sign in (1, -1):
        for exps in product(range(n), repeat=len(primes)):
            value = Fraction(sign)
            for p, e in zip(primes, exps):
                value *= p**e
            reps.append(value)
    return SUnitClassSet(primes, n, tuple(reps))


def s_unit_exponents(q, primes) -> dict[int, int] | None:
    """Exponents of q at the primes of S, or None if q is not an S-unit."""
    q = to_fraction(q)
    if q == 0:
        return None
    num, den = abs(q.numerator), q.denominator
    exps = {}
    for p in primes:
        e = 0
        while num % p == 0:
            num //= p
            e += 1
        while den % p == 0:
            den //= p
            e -= 1
        exps[p] = e
    if num != 1 or den != 1:
        return None
    return exps


def is_s_unit(q, primes, bound: int | None = None) -> bool:
    exps = s_unit_exponents(q, primes)
    if exps is None:
        return False
    return bound is None or all(abs(e) <= bound for e in exps.values())


def lambda_orbit(lam: Fraction) -> set[Fraction]:
    """Orbit of lambda under the anharmonic group of order six."""
    lam = to_fraction(lam)
    return {
        lam,
        1 - lam,
        1 / lam,
        1 - 1 / lam,
        1 / (1 - lam),
        lam / (lam - 1),
    }


def _canonical_key(lam: Fraction) -> tuple:
    return (max(abs(lam.numerator), lam.denominator), lam.denominator, lam)


def canonical_orbit_representative(lam: Fraction) -> Fraction:
    # every orbit meets (1, oo)
    return min((x for x in lambda_orbit(lam) if x > 1), key=_canonical_key)


def all_sunit_solutions(primes, exponent_bound: int) -> list[Fraction]:
    """Every lambda with lambda and 1 - lambda S-units of exponents bounded by the bound."""
    primes = _normalize_primes(primes)
    if exponent_bound < 1:
        raise ValueError("exponent_bound must be at least 1.")
    exponent_range = range(-exponent_bound, exponent_bound + 1)
    solutions = []
    for exps in product(exponent_range, repeat=len(primes)):
        magnitude = Fraction(1)
        for p, e in zip(primes, exps):
            magnitude *= Fraction(p) ** e
        for lam in (magnitude, -magnitude):
            if lam != 1 and is_s_unit(1 - lam, primes, exponent_bound):
                solutions.append(lam)
    return sorted(solutions)


def solve_sunit_equation(primes, exponent_bound: int) -> list[Fraction]:
    """S-unit equation solutions, one canonical representative per six-element orbit."""
    solutions = all_sunit_solutions(primes, exponent_bound)
    found = set(solutions)
    representatives = set()
    for lam in solutions:
        orbit = lambda_orbit(lam)
        # orbits cut off by the bound are kept only when complete
        if orbit <= found:
            representatives.add(canonical_orbit_representative(lam))
    result = sorted(representatives, key=_canonical_key)
    logger.debug(
        f"S-unit equation over {list(primes)} (bound {exponent_bound}): "
        f"{len(solutions)} solutions, {len(result)} orbits."
    )
    return result
