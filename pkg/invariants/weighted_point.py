"""The point (c2 : c3 : c4) in weighted projective space P(6, 9, 12)."""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from arith.rationals import prime_support, rational_nth_root, to_fraction, valuation
from errors import DegenerateFormError

WEIGHTS = (6, 9, 12)


class AutType(str, Enum):
    Z3 = "Z3"
    Z6 = "Z6"
    Z9 = "Z9"


QbarClass = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class WeightedPoint:
    c2: Fraction
    c3: Fraction
    c4: Fraction

    def __post_init__(self):
        for name in ("c2", "c3", "c4"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if self.c2 == self.c3 == self.c4 == 0:
            raise DegenerateFormError("(0 : 0 : 0) is not a weighted point.")

    @property
    def coordinates(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.c2, self.c3, self.c4

    def scaled(self, nu) -> "WeightedPoint":
        """(nu^-6 c2, nu^-9 c3, nu^-12 c4)."""
        nu = to_fraction(nu)
        return WeightedPoint(*(c / nu**w for c, w in zip(self.coordinates, WEIGHTS)))

    @property
    def is_special(self) -> bool:
        return self.c2 == 0 and self.c3 == 0

    def qbar_class(self) -> QbarClass:
        c2, c3, c4 = self.coordinates
        if c2 != 0:
            return Fraction(1), c3**2 / c2**3, c4 / c2**2
        if c3 != 0:
            return Fraction(0), Fraction(1), c4**3 / c3**4
        return Fraction(0), Fraction(0), Fraction(1)

    def automorphism_type(self) -> AutType:
        if self.c3 == 0 and self.c2 != 0:
            return AutType.Z6
        if self.c2 == 0 and self.c4 == 0:
            return AutType.Z9
        return AutType.Z3

    def as_strings(self) -> list[str]:
        return [str(c) for c in self.coordinates]


def _reduction_exponent(point: WeightedPoint, p: int) -> int:
    return min(
        math.floor(Fraction(valuation(c, p), w))
        for c, w in zip(point.coordinates, WEIGHTS)
        if c != 0
    )


def normalize(point: WeightedPoint) -> WeightedPoint:
    """
    The representative that is integral, has no p with 6e <= v(c2), 9e <= v(c3),
    12e <= v(c4) for e >= 1, and has c3 >= 0. All special points map to (0 : 0 : 1).
    """
    if point.is_special:
        return WeightedPoint(0, 0, 1)
    primes = set()
    for c in point.coordinates:
        if c != 0:
            primes.update(prime_support(c))
    nu = Fraction(1)
    for p in sorted(primes):
        nu *= Fraction(p) ** _reduction_exponent(point, p)
    normalized = point.scaled(nu)
    if normalized.c3 < 0:
        normalized = normalized.scaled(-1)
    return normalized


def normalize_weighted_point(c2, c3, c4) -> WeightedPoint:
    return normalize(WeightedPoint(c2, c3, c4))


def scaling_between(first: WeightedPoint, second: WeightedPoint) -> Fraction | None:
    """A nu with first = second.scaled(nu), or None."""
    pairs = list(zip(first.coordinates, second.coordinates, WEIGHTS))
    if any((a == 0) != (b == 0) for a, b, _ in pairs):
        return None
    a, b, weight = next(pair for pair in pairs if pair[0] != 0)
    root = rational_nth_root(b / a, weight)
    for nu in [] if root is None else [root, -root]:
        if second.scaled(nu) == first:
            return nu
    return None
