"""Isomorphism of Picard curves over Q and over an algebraic closure."""

from dataclasses import dataclass
from fractions import Fraction

from loguru import logger

from arith.rationals import rational_nth_root
from curves.conversions import as_special_short, model_from_ternary, to_short
from curves.curve import PicardCurve
from curves.models import NonspecialShort, PicardModel
from curves.normal_form import tschirnhausen
from errors import ComputationError
from forms.binary_quartic import MobiusMap
from forms.equivalence import equivalences
from forms.ternary_form import LinearChange3, TernaryForm
from invariants.weighted_point import (
    AutType,
    QbarClass,
    WeightedPoint,
    normalize,
    scaling_between,
)
from reduction.good_reduction import special_pair


@dataclass(frozen=True)
class Isomorphism:
    """F_second o change = factor * F_first for the ternary forms of the two curves."""

    nu: Fraction
    change: LinearChange3
    factor: Fraction


@dataclass(frozen=True)
class SpecialIsomorphism:
    """g1 o mobius = mu * g2 and a1 lam^4 = mu a2 for the pairs a x^4 = g(y)."""

    mobius: MobiusMap
    mu: Fraction
    lam: Fraction


def short_model(model: PicardModel | PicardCurve) -> NonspecialShort:
    if isinstance(model, PicardCurve):
        model = model.model
    short, _ = to_short(model)
    if not isinstance(short, NonspecialShort):
        raise ValueError("Weighted points are defined for nonspecial-shaped models.")
    return short


def weighted_point(model) -> WeightedPoint:
    """The Tschirnhausen coefficients (c2, c3, c4) as a weighted point."""
    return WeightedPoint(*tschirnhausen(short_model(model)).coefficients)


def qbar_class(model) -> QbarClass:
    return weighted_point(model).qbar_class()


def automorphism_type(model) -> AutType:
    point = weighted_point(model)
    if point.is_special:
        raise ValueError("automorphism_type is defined for nonspecial curves.")
    return point.automorphism_type()


def _ratio(target: TernaryForm, source: TernaryForm) -> Fraction | None:
    """factor with target = factor * source, or None."""
    if target.is_zero() or source.is_zero():
        return None
    m, c = target.terms[0]
    factor = c / source.coefficient(m) if source.coefficient(m) else None
    return factor if factor is not None and target == source.scale(factor) else None


def isomorphism_Q(first, second) -> Isomorphism | None:
    """An explicit isomorphism between two nonspecial curves over Q, or None."""
    m1, m2 = short_model(first), short_model(second)
    n1, n2 = tschirnhausen(m1), tschirnhausen(m2)
    p1, p2 = WeightedPoint(*n1.coefficients), WeightedPoint(*n2.coefficients)
    if p1.is_special or p2.is_special:
        raise ValueError("Use is_isomorphic_special for special curves.")
    nu = scaling_between(p1, p2)
    if nu is None:
        return None
    # F_N2 o diag(nu^4, nu^3, 1) = nu^12 F_N1
    scaling = LinearChange3.diagonal(nu**4, nu**3, 1)
    change = n2.change.then(scaling).then(n1.change.inverse())
    factor = _ratio(m2.ternary().transform(change), m1.ternary())
    if factor is None:
        raise ComputationError(f"Weighted scaling {nu} does not map {m2.equation()} to {m1.equation()}")
    return Isomorphism(nu=nu, change=change, factor=factor)


def is_isomorphic_Q(first, second) -> bool:
    first_special, second_special = is_special(first), is_special(second)
    if first_special != second_special:
        return False
    if first_special:
        return is_isomorphic_special(first, second)
    return normalize(weighted_point(first)) == normalize(weighted_point(second))


def is_isomorphic_Qbar(first, second) -> bool:
    return qbar_class(first) == qbar_class(second)


def is_special(curve: PicardCurve | PicardModel | TernaryForm) -> bool:
    if isinstance(curve, TernaryForm):
        curve = model_from_ternary(curve)
    if not isinstance(curve, PicardCurve):
        curve = PicardCurve(curve)
    return curve.is_special


def _special_curve(curve) -> PicardCurve:
    if isinstance(curve, TernaryForm):
        curve = model_from_ternary(curve, prefer="special")
    return curve if isinstance(curve, PicardCurve) else PicardCurve(curve)


def special_isomorphism(first, second) -> SpecialIsomorphism | None:
    """An isomorphism between special curves a1 x^4 = g1(y) and a2 x^4 = g2(y)."""
    c1, c2 = _special_curve(first), _special_curve(second)
    if not (c1.is_special and c2.is_special):
        raise ValueError("special_isomorphism needs two special curves.")
    a1, g1 = special_pair(as_special_short(c1.model)[0])
    a2, g2 = special_pair(as_special_short(c2.model)[0])
    for mobius, mu in equivalences(g1, g2):
        # a1 lam^4 x^4 = g1 o A = mu g2
        lam = rational_nth_root(mu * a2 / a1, 4)
        if lam is not None:
            logger.debug(f"Special curves isomorphic via {mobius} with mu = {mu}")
            return SpecialIsomorphism(mobius=mobius, mu=mu, lam=lam)
    return None


def is_isomorphic_special(first, second) -> bool:
    return special_isomorphism(first, second) is not None
