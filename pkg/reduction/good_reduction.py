"""Good and bad reduction of Picard curves over Q at a prime."""

from fractions import Fraction
from typing import Literal

from loguru import logger
from pydantic import BaseModel, Field
from sympy import ZZ
from sympy.polys.galoistools import gf_factor, gf_strip

import config
from arith.finite_field import FiniteField, FiniteFieldElement
from arith.rationals import check_prime, content, prime_support, valuation
from arith.unramified import splitting_field_unramified
from curves.conversions import as_special_short, to_short
from curves.curve import PicardCurve
from curves.models import NonspecialShort, SpecialShort, make_integral
from errors import ComputationError
from forms.binary_quartic import BinaryQuartic, disc_binary, reduce_quartic
from forms.ternary_form import TernaryForm

ReasonCode = Literal[
    "disc-unit",
    "criterion-pass",
    "c-valuation",
    "branch-disc",
    "odd-3-valuation",
    "a-mod-4",
    "ramified-splitting-field",
    "wild-p2-special",
]


class ReductionVerdict(BaseModel):
    """Good or bad reduction at one prime, with the reason that decided it."""

    prime: int = Field(description="The prime p")
    verdict: Literal["good", "bad"] = Field(description="Reduction type at p")
    reason: ReasonCode = Field(description="Machine-readable reason code")

    @property
    def is_good(self) -> bool:
        return self.verdict == "good"


def _verdict(p: int, good: bool, reason: ReasonCode) -> ReductionVerdict:
    return ReductionVerdict(prime=p, verdict="good" if good else "bad", reason=reason)


# --- Nonspecial curves ---


def reduced_short_weierstrass(model: NonspecialShort, p: int) -> tuple[Fraction, BinaryQuartic]:
    """
    An isomorphic model y^3 = c f0(x) with f0 monic and reduced at p and
    0 <= v_p(c) <= 2. Multiplying b y^3 = c0 g(x) by b^2 gives (b y)^3 = b^2 c0 g(x).
    """
    check_prime(p)
    if p == 3:
        raise ValueError("reduced_short_weierstrass is not available at p = 3.")
    c0 = model.f.coeffs[0]
    monic = model.f.scale(1 / c0)
    reduced, transform = reduce_quartic(monic, p)
    # g(alpha x + beta) = alpha^4 f0(x)
    alpha = transform.alpha
    delta = model.b**2 * c0 * alpha**4
    e = valuation(delta, p) // 3
    c = delta / Fraction(p) ** (3 * e)
    return c, reduced


def good_reduction_marked_line(f: BinaryQuartic, p: int) -> bool:
    """True iff the discriminant of the reduced form of the monic quartic f is a p-unit."""
    reduced, _ = reduce_quartic(f, p)
    return valuation(disc_binary(reduced), p) == 0


def has_good_reduction_nonspecial(model: NonspecialShort, p: int) -> ReductionVerdict:
    check_prime(p)
    if p == 3:
        return _verdict(p, False, "odd-3-valuation")
    if make_integral(model).disc_valuation(p) == 0:
        return _verdict(p, True, "disc-unit")
    c, f0 = reduced_short_weierstrass(model, p)
    if valuation(c, p) != 0:
        return _verdict(p, False, "c-valuation")
    if valuation(disc_binary(f0), p) != 0:
        return _verdict(p, False, "branch-disc")
    return _verdict(p, True, "criterion-pass")


# --- Special curves ---


def special_pair(model: SpecialShort) -> tuple[Fraction, BinaryQuartic]:
    """
    Writes b x^4 = f(y) as a x^4 = g(y) with g monic. A root of f at infinity is
    first moved by the unimodular substitution y -> y, z -> t y + z.
    """
    f = model.f
    if f.coeffs[0] == 0:
        t = next(t for t in range(6) if f.compose(1, 0, t, 1).coeffs[0] != 0)
        f = f.compose(1, 0, t, 1)
    lead = f.coeffs[0]
    return model.b / lead, f.scale(1 / lead)


def _multiple_root_mod_p(form: BinaryQuartic, p: int) -> int | None:
    """
    The point of P^1(F_p) where the reduction of a primitive integral form has a
    multiple root: a residue r for (r : 1), or -1 for (1 : 0). None if there is none.
    """
    residues = [int(c) % p for c in form.coeffs]
    leading_zeros = next(i for i, c in enumerate(residues) if c != 0)
    if leading_zeros >= 2:
        return -1
    _, factors = gf_factor(gf_strip(residues), p, ZZ)
    for factor, multiplicity in factors:
        if multiplicity > 1 and len(factor) == 2:
            return -int(factor[1]) % p
    return None


def reduced_special_valuation(model: SpecialShort, p: int) -> int:
    """
    v_p(a) for x^4 = a g(y, z) with g moved to a primitive integral form of unit
    discriminant. The cluster of roots meeting mod p is translated to 0 and spread
    by y -> p y until the roots reduce to four distinct points.
    """
    form = model.f.scale(1 / model.b)
    total = 0

    def strip_content(f: BinaryQuartic) -> BinaryQuartic:
        nonlocal total
        c = content(f.coeffs)
        total += valuation(c, p)
        return f.scale(1 / c)

    form = strip_content(form)
    # every step lowers v_p of the discriminant by at least 6
    steps = valuation(disc_binary(form), p) // 6
    for _ in range(steps + 1):
        if valuation(disc_binary(form), p) == 0:
            return total
        root = _multiple_root_mod_p(form, p)
        if root is None:
            break
        form = form.compose(0, 1, 1, 0) if root == -1 else form.compose(1, root, 0, 1)
        form = strip_content(form.compose(p, 0, 0, 1))
    raise ComputationError(f"Could not separate the roots of {model.f} mod {p}.")


def has_good_reduction_special(model: SpecialShort, p: int) -> ReductionVerdict:
    check_prime(p)
    if p == 2:
        return _verdict(p, False, "wild-p2-special")
    if p == 3:
        return _verdict(p, False, "odd-3-valuation")
    if make_integral(model).disc_valuation(p) == 0:
        return _verdict(p, True, "disc-unit")
    _, g = special_pair(model)
    if not splitting_field_unramified(g.coeffs, p):
        return _verdict(p, False, "ramified-splitting-field")
    if reduced_special_valuation(model, p) % 4 != 0:
        return _verdict(p, False, "a-mod-4")
    return _verdict(p, True, "criterion-pass")


# --- Curves ---


def reduction_verdict(curve: PicardCurve, p: int) -> ReductionVerdict:
    if curve.is_special:
        model, _ = as_special_short(curve.model)
        return has_good_reduction_special(model, p)
    model, _ = to_short(curve.model)
    return has_good_reduction_nonspecial(model, p)


def bad_primes(curve: PicardCurve) -> list[int]:
    """Primes of bad reduction; 3 always, and 2 as well for special curves."""
    forced = set(config.SPECIAL_PRIMES) if curve.is_special else {3}
    integral = make_integral(curve.model)
    candidates = set(prime_support(integral.discriminant())) - forced
    bad = forced | {p for p in candidates if not reduction_verdict(curve, p).is_good}
    logger.debug(f"Bad primes of {curve.equation()}: {sorted(bad)}")
    return sorted(bad)


# --- Singular points of the reduction ---


def _reduce_coefficients(form: TernaryForm, field: FiniteField) -> list[tuple]:
    if not form.is_integral:
        raise ValueError("Reduction mod p needs an integral form.")
    out = []
    for m, c in form.as_dict().items():
        value = field.element(int(c) % field.p)
        if not value.is_zero():
            out.append((m, value))
    return out


def _evaluate(terms, point) -> FiniteFieldElement:
    y, x, z = point
    acc = None
    for m, c in terms:
        value = c * (y ** m[0]) * (x ** m[1]) * (z ** m[2])
        acc = value if acc is None else acc + value
    return acc if acc is not None else y.field.zero


def _projective_points(field: FiniteField):
    zero, one = field.zero, field.one
    elements = list(field.elements())
    for x in elements:
        for z in elements:
            yield (one, x, z)
    for z in elements:
        yield (zero, one, z)
    yield (zero, zero, one)


def singular_points_mod_p(form: TernaryForm, p: int, k: int = 1) -> list[tuple]:
    """Singular points over F_{p^k} of the reduction of an integral plane quartic."""
    field = FiniteField(p, k)
    polys = [_reduce_coefficients(g, field) for g in (form, *form.partials())]
    singular = [
        point
        for point in _projective_points(field)
        if all(_evaluate(terms, point).is_zero() for terms in polys)
    ]
    logger.debug(f"Reduction mod {p} over F_{p}^{k}: {len(singular)} singular points")
    return singular


def reduction_is_smooth(form: TernaryForm, p: int, k: int = 1) -> bool:
    return not singular_points_mod_p(form, p, k)
