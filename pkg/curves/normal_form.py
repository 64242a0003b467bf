"""Tschirnhausen normal form y^3 = x^4 + c2 x^2 + c3 x + c4 of a nonspecial short model."""

from dataclasses import dataclass
from fractions import Fraction

from curves.models import NonspecialShort
from forms.binary_quartic import BinaryQuartic
from forms.ternary_form import LinearChange3


@dataclass(frozen=True)
class TschirnhausenForm:
    c2: Fraction
    c3: Fraction
    c4: Fraction
    # F_model o change = scale * F_normal
    change: LinearChange3
    scale: Fraction

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.c2, self.c3, self.c4

    def model(self) -> NonspecialShort:
        return NonspecialShort(1, BinaryQuartic((1, 0, self.c2, self.c3, self.c4)))


def monicizing_constants(model: NonspecialShort) -> tuple[Fraction, Fraction]:
    """u = b c0^2 and v = b c0^3, so that x = u X, y = v Y makes b v^3 = c0 u^4."""
    b, c0 = model.b, model.f.coeffs[0]
    return b * c0**2, b * c0**3


def tschirnhausen(model: NonspecialShort) -> TschirnhausenForm:
    c0 = model.f.coeffs[0]
    u, v = monicizing_constants(model)
    # Y^3 = X^4 + d1 X^3 + d2 X^2 + d3 X + d4
    d = [c / (c0 * u**i) for i, c in enumerate(model.f.coeffs)]
    shift = -d[1] / 4
    depressed = BinaryQuartic(tuple(d)).compose(1, shift, 0, 1).coeffs
    change = LinearChange3(((v, 0, 0), (0, u, u * shift), (0, 0, 1)))
    return TschirnhausenForm(
        c2=depressed[2],
        c3=depressed[3],
        c4=depressed[4],
        change=change,
        scale=c0 * u**4,
    )


def tschirnhausen_normal_form(model: NonspecialShort) -> tuple[Fraction, Fraction, Fraction]:
    return tschirnhausen(model).coefficients
