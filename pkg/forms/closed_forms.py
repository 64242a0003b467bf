"""Closed-form discriminants of short Weierstrass-shaped plane quartics."""

from fractions import Fraction

from arith.rationals import to_fraction, valuation
from errors import DegenerateFormError
from forms.binary_quartic import BinaryQuartic, disc_binary


def _require_quartic(f: BinaryQuartic) -> None:
    if f.coeffs[0] == 0:
        raise DegenerateFormError(f"{f} has degree < 4; the closed form needs c0 != 0.")


def disc_short_nonspecial(b, f: BinaryQuartic) -> Fraction:
    """Discriminant of f(x, z) - b y^3 z."""
    b = to_fraction(b)
    if b == 0:
        raise DegenerateFormError("b must be nonzero.")
    _require_quartic(f)
    return -(3**9) * b**12 * f.coeffs[0] ** 3 * disc_binary(f) ** 2


def disc_short_special(b, f: BinaryQuartic) -> Fraction:
    """Discriminant of f(y, z) - b x^4."""
    b = to_fraction(b)
    if b == 0:
        raise DegenerateFormError("b must be nonzero.")
    _require_quartic(f)
    return -(2**16) * b**9 * disc_binary(f) ** 3


def nonspecial_disc_valuation(b, f: BinaryQuartic, p: int):
    return 9 * (p == 3) + 12 * valuation(b, p) + 3 * valuation(f.coeffs[0], p) + 2 * valuation(
        disc_binary(f), p
    )


def special_disc_valuation(b, f: BinaryQuartic, p: int):
    """Valuation of -2^16 b^9 Delta(f)^3, also valid when f has a root at infinity."""
    return 16 * (p == 2) + 9 * valuation(b, p) + 3 * valuation(disc_binary(f), p)
