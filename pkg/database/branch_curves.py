"""
Nonspecial Picard curves y^3 = c f(x) whose branch quartic f has four rational
roots and good reduction outside S. Moving three roots to 0, 1 and infinity
leaves the fourth root as a solution of the S-unit equation; with the root at
infinity pulled back, the roots are {0, 1, l3, l4} where l3, l4 and l3 - l4
are all S-units.
"""

from fractions import Fraction
from itertools import combinations

from loguru import logger

import config
from arith.sunits import all_sunit_solutions, is_s_unit
from curves.models import NonspecialShort, make_integral
from forms import binary_forms as bf
from forms.binary_quartic import BinaryQuartic
from invariants.isomorphism import weighted_point
from invariants.twists import twists_with_good_reduction_outside
from invariants.weighted_point import normalize


def _roots_quartic(roots) -> BinaryQuartic:
    form = (Fraction(1),)
    for r in roots:
        form = bf.form_mul(form, (1, -r))
    return BinaryQuartic(form)


def rational_branch_quartics(primes, bound: int) -> list[BinaryQuartic]:
    """x (x - 1)(x - l3)(x - l4), one per pair of S-unit solutions with l3 - l4 an S-unit."""
    solutions = all_sunit_solutions(primes, bound)
    return [
        _roots_quartic((0, 1, l3, l4))
        for l3, l4 in combinations(solutions, 2)
        if is_s_unit(l3 - l4, primes)
    ]


def enumerate_rational_branch_curves(primes, bound: int | None = None) -> list[NonspecialShort]:
    """
    Every nonspecial curve with fully rational branch points and bad reduction
    only in the given primes (which must contain 3), one model per Q-class.
    """
    allowed = sorted(set(primes))
    if 3 not in allowed:
        raise ValueError("Every Picard curve over Q has bad reduction at 3.")
    bound = config.SUNIT_EXPONENT_BOUND if bound is None else bound

    # --- 1. One quartic per class over the algebraic closure ---
    seeds = {}
    for f in rational_branch_quartics(allowed, bound):
        model = make_integral(NonspecialShort(1, f))
        point = weighted_point(model)
        if point.is_special:
            logger.debug(f"Skipping special branch quartic {f}")
            continue
        seeds.setdefault(point.qbar_class(), model)
    logger.debug(f"{len(seeds)} branch configurations over {allowed} (bound {bound})")

    # --- 2. Twists with good reduction outside S ---
    found = {}
    for model in seeds.values():
        for twisted in twists_with_good_reduction_outside(model, allowed):
            found.setdefault(normalize(weighted_point(twisted)).coordinates, twisted)
    logger.info(f"{len(found)} curves with rational branch points and bad primes in {allowed}")
    return [found[key] for key in sorted(found)]
