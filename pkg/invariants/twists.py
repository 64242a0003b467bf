"""Twists of nonspecial Picard curves with good reduction outside a set of primes."""

from fractions import Fraction

from loguru import logger

from arith.rationals import prime_support
from arith.sunits import s_unit_classes
from curves.curve import PicardCurve
from curves.models import NonspecialShort
from curves.normal_form import tschirnhausen
from forms.binary_quartic import BinaryQuartic
from invariants.isomorphism import short_model
from invariants.weighted_point import AutType, WeightedPoint, normalize
from reduction.good_reduction import bad_primes

TWIST_ORDER = {AutType.Z3: 3, AutType.Z6: 6, AutType.Z9: 9}


def twist_point(point: WeightedPoint, lam) -> WeightedPoint:
    """The twist by lam for the automorphism type of the point."""
    lam = Fraction(lam)
    c2, c3, c4 = point.coordinates
    match point.automorphism_type():
        case AutType.Z6:
            return WeightedPoint(lam * c2, 0, lam**2 * c4)
        case AutType.Z9:
            return WeightedPoint(0, lam * c3, 0)
        case _:
            return WeightedPoint(lam**2 * c2, lam**3 * c3, lam**4 * c4)


def point_model(point: WeightedPoint) -> NonspecialShort:
    """y^3 = x^4 + c2 x^2 + c3 x + c4."""
    return NonspecialShort(1, BinaryQuartic((1, 0, *point.coordinates)))


def twist(model, lam) -> NonspecialShort:
    point = WeightedPoint(*tschirnhausen(short_model(model)).coefficients)
    return point_model(twist_point(point, lam))


def twists_with_good_reduction_outside(model, primes) -> list[NonspecialShort]:
    """
    All twists with bad reduction only at the given primes (which must include 3),
    one integral normal-form model per Q-isomorphism class, ordered by weighted point.
    """
    allowed = set(primes)
    if 3 not in allowed:
        raise ValueError("Every Picard curve over Q has bad reduction at 3.")
    short = short_model(model)
    point = WeightedPoint(*tschirnhausen(short).coefficients)
    if point.is_special:
        raise ValueError("Twists of special curves are enumerated by the special classification.")
    n = TWIST_ORDER[point.automorphism_type()]
    support = allowed | set(prime_support(short.discriminant()))
    support |= set(prime_support(point_model(point).discriminant()))
    classes = s_unit_classes(sorted(support), n)
    logger.debug(f"Twisting by {len(classes)} classes of Q*/Q*^{n} supported on {sorted(support)}")

    found: dict[tuple, NonspecialShort] = {}
    seen = set()
    for lam in classes:
        twisted = normalize(twist_point(point, lam))
        key = twisted.coordinates
        if key in seen:
            continue
        seen.add(key)
        candidate = point_model(twisted)
        if set(bad_primes(PicardCurve(candidate))) <= allowed:
            found[key] = candidate
    logger.info(f"{len(found)} twists with good reduction outside {sorted(allowed)}")
    return [found[key] for key in sorted(found)]
