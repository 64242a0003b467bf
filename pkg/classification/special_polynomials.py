"""Special polynomials y^4 + 6b y^2 + c y - 3b^2 and the biquadratic obstruction."""

from dataclasses import dataclass
from fractions import Fraction

import config
from arith.hilbert import conic_is_split, find_conic_point
from arith.rationals import is_nth_power, to_fraction
from forms.binary_quartic import BinaryQuartic, disc_binary, invariant_I


@dataclass(frozen=True)
class SpecialPolynomial:
    b: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b", to_fraction(self.b))
        object.__setattr__(self, "c", to_fraction(self.c))

    def quartic(self) -> BinaryQuartic:
        return BinaryQuartic((1, 0, 6 * self.b, self.c, -3 * self.b**2))

    @classmethod
    def from_quartic(cls, g: BinaryQuartic) -> "SpecialPolynomial | None":
        c0, c1, c2, c3, c4 = g.coeffs
        if c0 != 1 or c1 != 0:
            return None
        b = c2 / 6
        return cls(b, c3) if c4 == -3 * b**2 else None


def special_poly_discriminant(sp: SpecialPolynomial) -> Fraction:
    return -27 * (64 * sp.b**3 + sp.c**2) ** 2


def is_special_polynomial(g: BinaryQuartic) -> bool:
    """Separable with vanishing invariant I."""
    return invariant_I(g) == 0 and disc_binary(g) != 0


def _check_biquadratic(d1: int, d2: int) -> None:
    if not is_nth_power(Fraction(d1 * d2, -3), 2):
        raise ValueError(f"({d1}, {d2}) does not satisfy d1 d2 = -3 modulo squares.")


def biquadratic_obstruction(d1: int, d2: int) -> bool:
    """True iff d1 x^2 + d2 y^2 = z^2 has no rational point."""
    _check_biquadratic(d1, d2)
    return not conic_is_split(d1, d2)


def biquadratic_witness(d1: int, d2: int, bound: int | None = None):
    """A rational point of d1 x^2 + d2 y^2 = z^2 for an unobstructed pair."""
    _check_biquadratic(d1, d2)
    bound = config.CONIC_WITNESS_BOUND if bound is None else bound
    return find_conic_point(d1, d2, bound)
