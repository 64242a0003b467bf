"""
Changes of Weierstrass model: completing the cube or fourth power, going back
to long models, recognising a plane quartic as a Picard model and moving a
special curve into its special shape.
"""

from fractions import Fraction

from loguru import logger

from arith.rationals import to_fraction
from curves.models import (
    NonspecialLong,
    NonspecialShort,
    PicardModel,
    SpecialLong,
    SpecialShort,
)
from errors import DegenerateFormError
from forms import binary_forms as bf
from forms.binary_quartic import BinaryQuartic
from forms.ternary_form import LinearChange3, TernaryForm

Conversion = tuple[PicardModel, LinearChange3]


def long_to_short_nonspecial(model: NonspecialLong) -> Conversion:
    """y -> y - a1/(3 a0); the plane quartics agree exactly, F_short = F_long o T."""
    mu = model.cube_shift()
    change = LinearChange3(((1, -mu[0], -mu[1]), (0, 1, 0), (0, 0, 1)))
    return model.shortened(), change


def long_to_short_special(model: SpecialLong) -> Conversion:
    """x -> x - a1/(4 a0); the plane quartics agree exactly, F_short = F_long o T."""
    mu = model.fourth_power_shift()
    change = LinearChange3(((1, 0, 0), (-mu[0], 1, -mu[1]), (0, 0, 1)))
    return model.shortened(), change


def short_to_long_nonspecial(model: NonspecialShort, lam=1, mu=(0, 0)) -> Conversion:
    """y -> lam y + mu(x, z)."""
    lam = to_fraction(lam)
    if lam == 0:
        raise DegenerateFormError("lam must be nonzero.")
    mu = bf.as_form(mu)
    b = model.b
    mu_squared = bf.form_mul(mu, mu)
    mu_cubed_z = bf.form_mul(bf.form_mul(mu_squared, mu), (0, 1))
    long_model = NonspecialLong(
        a0=b * lam**3,
        a1=bf.form_scale(mu, 3 * b * lam**2),
        a2=bf.form_scale(mu_squared, 3 * b * lam),
        a4=BinaryQuartic(bf.form_sub(model.f.coeffs, bf.form_scale(mu_cubed_z, b))),
    )
    change = LinearChange3(((lam, mu[0], mu[1]), (0, 1, 0), (0, 0, 1)))
    return long_model, change


def short_to_long_special(model: SpecialShort, lam=1, mu=(0, 0)) -> Conversion:
    """x -> lam x + mu(y, z)."""
    lam = to_fraction(lam)
    if lam == 0:
        raise DegenerateFormError("lam must be nonzero.")
    mu = bf.as_form(mu)
    b = model.b
    mu2 = bf.form_mul(mu, mu)
    mu3 = bf.form_mul(mu2, mu)
    mu4 = bf.form_mul(mu3, mu)
    long_model = SpecialLong(
        a0=b * lam**4,
        a1=bf.form_scale(mu, 4 * b * lam**3),
        a2=bf.form_scale(mu2, 6 * b * lam**2),
        a3=bf.form_scale(mu3, 4 * b * lam),
        a4=BinaryQuartic(bf.form_sub(model.f.coeffs, bf.form_scale(mu4, b))),
    )
    change = LinearChange3(((1, 0, 0), (mu[0], lam, mu[1]), (0, 0, 1)))
    return long_model, change


def to_short(model: PicardModel) -> Conversion:
    """The short model of the same shape, with the connecting change of variables."""
    match model:
        case NonspecialLong():
            return long_to_short_nonspecial(model)
        case SpecialLong():
            return long_to_short_special(model)
        case _:
            return model, LinearChange3.identity()


# --- Recognition of plane quartics ---


def _coefficients_in(form: TernaryForm, allowed: set) -> bool:
    return all(m in allowed for m in form.as_dict())


def _nonspecial_from_ternary(form: TernaryForm) -> NonspecialLong | None:
    # F = a4(x, z) - (a0 y^3 + a1 y^2 + a2 y) z, up to an overall sign
    allowed = {(0, 4 - i, i) for i in range(5)} | {(3, 0, 1), (2, 1, 1), (2, 0, 2)}
    allowed |= {(1, 2, 1), (1, 1, 2), (1, 0, 3)}
    if not _coefficients_in(form, allowed) or form.coefficient((3, 0, 1)) == 0:
        return None
    if form.coefficient((0, 4, 0)) == 0:
        return None
    c = form.coefficient
    try:
        return NonspecialLong(
            a0=-c((3, 0, 1)),
            a1=(-c((2, 1, 1)), -c((2, 0, 2))),
            a2=(-c((1, 2, 1)), -c((1, 1, 2)), -c((1, 0, 3))),
            a4=BinaryQuartic(tuple(c((0, 4 - i, i)) for i in range(5))),
        )
    except DegenerateFormError as e:
        logger.debug(f"Quartic has the nonspecial shape but is not a Picard model: {e}")
        return None


def _special_from_ternary(form: TernaryForm) -> SpecialLong | None:
    # F = a4(y, z) - (a0 x^4 + a1 x^3 + a2 x^2 + a3 x)
    allowed = {(4 - i, 0, i) for i in range(5)}
    allowed |= {(k - j, 4 - k, j) for k in range(4) for j in range(k + 1)}
    if not _coefficients_in(form, allowed) or form.coefficient((0, 4, 0)) == 0:
        return None
    c = form.coefficient

    def part(k: int) -> tuple[Fraction, ...]:
        return tuple(-c((k - j, 4 - k, j)) for j in range(k + 1))

    try:
        return SpecialLong(
            a0=-c((0, 4, 0)),
            a1=part(1),
            a2=part(2),
            a3=part(3),
            a4=BinaryQuartic(tuple(c((4 - i, 0, i)) for i in range(5))),
        )
    except DegenerateFormError as e:
        logger.debug(f"Quartic has the special shape but is not a Picard model: {e}")
        return None


def simplify_model(model: PicardModel) -> PicardModel:
    """Long models whose shift vanishes are reported in their short form."""
    match model:
        case NonspecialLong() if bf.is_zero(model.a1):
            return model.shortened()
        case SpecialLong() if bf.is_zero(model.a1):
            return model.shortened()
        case _:
            return model


def model_from_ternary(form: TernaryForm, prefer: str | None = None) -> PicardModel:
    """
    Reads a plane quartic as a Weierstrass model. Some quartics fit both shapes
    (x^4 = y^3 + 1 is also y^3 = x^4 - 1); prefer='special' picks the special
    shape in that case.
    """
    if form.degree != 4:
        raise DegenerateFormError("A Picard curve is a plane quartic.")
    readers = [_nonspecial_from_ternary, _special_from_ternary]
    if prefer == "special":
        readers.reverse()
    for reader in readers:
        model = reader(form)
        if model is not None:
            return simplify_model(model)
    raise DegenerateFormError(f"{form} is not in Picard Weierstrass shape.")


def special_short_from_nonspecial(model: NonspecialShort) -> Conversion | None:
    """
    When b y^3 = c0 (x - r)^4 + k, returns the special model c0 x^4 = b y^3 - k
    together with the change T, where F_special = -(F o T).
    """
    c0, c1 = model.f.coeffs[0], model.f.coeffs[1]
    r = -c1 / (4 * c0)
    depressed = model.f.compose(1, r, 0, 1).coeffs
    if depressed[2] != 0 or depressed[3] != 0:
        return None
    k = depressed[4]
    special = SpecialShort(c0, BinaryQuartic((0, model.b, 0, 0, -k)))
    change = LinearChange3(((1, 0, 0), (0, 1, r), (0, 0, 1)))
    return special, change


def as_special_short(model: PicardModel) -> Conversion:
    """The special short model of a special curve given in any of the four shapes."""
    short, change = to_short(model)
    if isinstance(short, SpecialShort):
        return short, change
    result = special_short_from_nonspecial(short)
    if result is None:
        raise DegenerateFormError(f"{model.equation()} is not a special Picard curve.")
    special, shift = result
    return special, change.then(shift)
