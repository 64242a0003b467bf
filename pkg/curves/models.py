"""Weierstrass models of Picard curves and their plane quartic forms."""

from dataclasses import dataclass
from fractions import Fraction

from sympy import Rational, expand, symbols

from arith.rationals import lcm_of_denominators, to_fraction, valuation
from errors import DegenerateFormError
from forms import binary_forms as bf
from forms.binary_quartic import BinaryQuartic, disc_binary, invariant_I
from forms.closed_forms import (
    disc_short_nonspecial,
    nonspecial_disc_valuation,
    special_disc_valuation,
)
from forms.ternary_form import TernaryForm

# variable positions in ternary monomials
Y_, X_, Z_ = 0, 1, 2
Y, X = symbols("y x")


def _embed(terms: dict, form, first: int, second: int, base=(0, 0, 0), sign=1) -> None:
    """Adds sign * form(v_first, v_second) * monomial(base) to a ternary term dict."""
    n = len(form) - 1
    for j, c in enumerate(form):
        if c == 0:
            continue
        exps = list(base)
        exps[first] += n - j
        exps[second] += j
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + sign * c


def _coerce_form(coeffs, degree: int) -> bf.Form:
    form = bf.as_form(coeffs)
    if len(form) != degree + 1:
        raise ValueError(f"Expected a binary form of degree {degree}.")
    return form


def _render(expr) -> str:
    return str(expand(expr)).replace("**", "^")


def _q(value: Fraction):
    return Rational(value.numerator, value.denominator)


def _poly(form, var):
    return bf.to_expr(form, var, 1)


@dataclass(frozen=True)
class NonspecialShort:
    """b y^3 = f(x), i.e. the plane quartic f(x, z) - b y^3 z."""

    b: Fraction
    f: BinaryQuartic

    def __post_init__(self):
        object.__setattr__(self, "b", to_fraction(self.b))
        if self.b == 0:
            raise DegenerateFormError("b must be nonzero.")
        if self.f.coeffs[0] == 0:
            raise DegenerateFormError(f"{self.f} must have degree exactly 4.")
        if disc_binary(self.f) == 0:
            raise DegenerateFormError(f"{self.f} has a repeated root: singular curve.")

    shape = "nonspecial-short"

    def ternary(self) -> TernaryForm:
        terms: dict = {}
        _embed(terms, self.f.coeffs, X_, Z_)
        terms[(3, 0, 1)] = terms.get((3, 0, 1), Fraction(0)) - self.b
        return TernaryForm.quartic(terms)

    def discriminant(self) -> Fraction:
        return disc_short_nonspecial(self.b, self.f)

    def disc_valuation(self, p: int):
        return nonspecial_disc_valuation(self.b, self.f, p)

    def coefficients(self) -> list[Fraction]:
        return [self.b, *self.f.coeffs]

    def scaled(self, factor) -> "NonspecialShort":
        return NonspecialShort(self.b * factor, self.f.scale(factor))

    def equation(self) -> str:
        return f"{_render(_q(self.b) * Y**3)} = {_render(_poly(self.f.coeffs, X))}"


@dataclass(frozen=True)
class NonspecialLong:
    """a4(x, z) = (a0 y^3 + a1(x, z) y^2 + a2(x, z) y) z with a1^2 = 3 a0 a2."""

    a0: Fraction
    a1: tuple[Fraction, Fraction]
    a2: tuple[Fraction, Fraction, Fraction]
    a4: BinaryQuartic

    def __post_init__(self):
        object.__setattr__(self, "a0", to_fraction(self.a0))
        object.__setattr__(self, "a1", _coerce_form(self.a1, 1))
        object.__setattr__(self, "a2", _coerce_form(self.a2, 2))
        if self.a0 == 0:
            raise DegenerateFormError("a0 must be nonzero.")
        if bf.form_mul(self.a1, self.a1) != bf.form_scale(self.a2, 3 * self.a0):
            raise DegenerateFormError("Long model violates a1^2 = 3 a0 a2.")
        # the completed-cube quartic must be smooth
        self.shortened()

    shape = "nonspecial-long"

    def cube_shift(self) -> bf.Form:
        """The linear form mu = a1 / (3 a0)."""
        return bf.form_scale(self.a1, 1 / (3 * self.a0))

    def shortened(self) -> NonspecialShort:
        mu = self.cube_shift()
        mu_cubed_z = bf.form_mul(bf.form_mul(bf.form_mul(mu, mu), mu), (0, 1))
        return NonspecialShort(
            self.a0, BinaryQuartic(bf.form_add(self.a4.coeffs, bf.form_scale(mu_cubed_z, self.a0)))
        )

    def ternary(self) -> TernaryForm:
        terms: dict = {}
        _embed(terms, self.a4.coeffs, X_, Z_)
        terms[(3, 0, 1)] = terms.get((3, 0, 1), Fraction(0)) - self.a0
        _embed(terms, self.a1, X_, Z_, base=(2, 0, 1), sign=-1)
        _embed(terms, self.a2, X_, Z_, base=(1, 0, 1), sign=-1)
        return TernaryForm.quartic(terms)

    def discriminant(self) -> Fraction:
        return self.shortened().discriminant()

    def disc_valuation(self, p: int):
        return self.shortened().disc_valuation(p)

    def coefficients(self) -> list[Fraction]:
        return [self.a0, *self.a1, *self.a2, *self.a4.coeffs]

    def scaled(self, factor) -> "NonspecialLong":
        return NonspecialLong(
            self.a0 * factor,
            bf.form_scale(self.a1, factor),
            bf.form_scale(self.a2, factor),
            self.a4.scale(factor),
        )

    def equation(self) -> str:
        rhs = _q(self.a0) * Y**3 + _poly(self.a1, X) * Y**2 + _poly(self.a2, X) * Y
        return f"{_render(_poly(self.a4.coeffs, X))} = {_render(rhs)}"


@dataclass(frozen=True)
class SpecialShort:
    """b x^4 = f(y), i.e. the plane quartic f(y, z) - b x^4 with I(f) = 0."""

    b: Fraction
    f: BinaryQuartic

    def __post_init__(self):
        object.__setattr__(self, "b", to_fraction(self.b))
        if self.b == 0:
            raise DegenerateFormError("b must be nonzero.")
        if invariant_I(self.f) != 0:
            raise DegenerateFormError(f"{self.f} has I != 0: not a special model.")
        if disc_binary(self.f) == 0:
            raise DegenerateFormError(f"{self.f} has a repeated root: singular curve.")

    shape = "special-short"

    def ternary(self) -> TernaryForm:
        terms: dict = {}
        _embed(terms, self.f.coeffs, Y_, Z_)
        terms[(0, 4, 0)] = terms.get((0, 4, 0), Fraction(0)) - self.b
        return TernaryForm.quartic(terms)

    def discriminant(self) -> Fraction:
        # the closed form also holds when f has a root at infinity
        return -(2**16) * self.b**9 * disc_binary(self.f) ** 3

    def disc_valuation(self, p: int):
        return special_disc_valuation(self.b, self.f, p)

    def coefficients(self) -> list[Fraction]:
        return [self.b, *self.f.coeffs]

    def scaled(self, factor) -> "SpecialShort":
        return SpecialShort(self.b * factor, self.f.scale(factor))

    def equation(self) -> str:
        return f"{_render(_q(self.b) * X**4)} = {_render(_poly(self.f.coeffs, Y))}"


@dataclass(frozen=True)
class SpecialLong:
    """a4(y, z) = a0 x^4 + a1 x^3 + a2 x^2 + a3 x with 8 a0 a2 = 3 a1^2, 16 a0^2 a3 = a1^3."""

    a0: Fraction
    a1: tuple[Fraction, Fraction]
    a2: tuple[Fraction, Fraction, Fraction]
    a3: tuple[Fraction, Fraction, Fraction, Fraction]
    a4: BinaryQuartic

    def __post_init__(self):
        object.__setattr__(self, "a0", to_fraction(self.a0))
        object.__setattr__(self, "a1", _coerce_form(self.a1, 1))
        object.__setattr__(self, "a2", _coerce_form(self.a2, 2))
        object.__setattr__(self, "a3", _coerce_form(self.a3, 3))
        if self.a0 == 0:
            raise DegenerateFormError("a0 must be nonzero.")
        a1_squared = bf.form_mul(self.a1, self.a1)
        if bf.form_scale(self.a2, 8 * self.a0) != bf.form_scale(a1_squared, 3):
            raise DegenerateFormError("Long model violates 8 a0 a2 = 3 a1^2.")
        if bf.form_scale(self.a3, 16 * self.a0**2) != bf.form_mul(a1_squared, self.a1):
            raise DegenerateFormError("Long model violates 16 a0^2 a3 = a1^3.")
        self.shortened()

    shape = "special-long"

    def fourth_power_shift(self) -> bf.Form:
        """The linear form mu = a1 / (4 a0)."""
        return bf.form_scale(self.a1, 1 / (4 * self.a0))

    def shortened(self) -> SpecialShort:
        mu = self.fourth_power_shift()
        mu_squared = bf.form_mul(mu, mu)
        mu_fourth = bf.form_mul(mu_squared, mu_squared)
        return SpecialShort(
            self.a0, BinaryQuartic(bf.form_add(self.a4.coeffs, bf.form_scale(mu_fourth, self.a0)))
        )

    def ternary(self) -> TernaryForm:
        terms: dict = {}
        _embed(terms, self.a4.coeffs, Y_, Z_)
        terms[(0, 4, 0)] = terms.get((0, 4, 0), Fraction(0)) - self.a0
        _embed(terms, self.a1, Y_, Z_, base=(0, 3, 0), sign=-1)
        _embed(terms, self.a2, Y_, Z_, base=(0, 2, 0), sign=-1)
        _embed(terms, self.a3, Y_, Z_, base=(0, 1, 0), sign=-1)
        return TernaryForm.quartic(terms)

    def discriminant(self) -> Fraction:
        return self.shortened().discriminant()

    def disc_valuation(self, p: int):
        return self.shortened().disc_valuation(p)

    def coefficients(self) -> list[Fraction]:
        return [self.a0, *self.a1, *self.a2, *self.a3, *self.a4.coeffs]

    def scaled(self, factor) -> "SpecialLong":
        return SpecialLong(
            self.a0 * factor,
            bf.form_scale(self.a1, factor),
            bf.form_scale(self.a2, factor),
            bf.form_scale(self.a3, factor),
            self.a4.scale(factor),
        )

    def equation(self) -> str:
        rhs = (
            _q(self.a0) * X**4
            + _poly(self.a1, Y) * X**3
            + _poly(self.a2, Y) * X**2
            + _poly(self.a3, Y) * X
        )
        return f"{_render(_poly(self.a4.coeffs, Y))} = {_render(rhs)}"


PicardModel = NonspecialShort | NonspecialLong | SpecialShort | SpecialLong


def make_integral(model: PicardModel) -> PicardModel:
    """The same curve with the plane quartic scaled to integral coefficients."""
    den = lcm_of_denominators(model.coefficients())
    return model if den == 1 else model.scaled(den)


def gauss_valuation(model: PicardModel, p: int):
    return min(valuation(c, p) for c in model.coefficients() if c != 0)
