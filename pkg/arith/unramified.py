"""Local test: is the splitting field of a small-degree polynomial unramified at p?"""

from fractions import Fraction

from loguru import logger
from sympy import Poly, QQ, ZZ, factor_list, symbols
from sympy.polys.galoistools import gf_factor, gf_sqf_p, gf_strip
from sympy.polys.numberfields.basis import round_two

from arith.rationals import check_prime, lcm_of_denominators, to_fraction, valuation
from errors import ComputationError, DegenerateFormError

X = symbols("x")


def _integral_poly(coeffs) -> Poly:
    coeffs = [to_fraction(c) for c in coeffs]
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
    if not coeffs:
        raise DegenerateFormError("The zero polynomial has no splitting field.")
    den = lcm_of_denominators(coeffs)
    poly = Poly([int(c * den) for c in coeffs], X, domain=ZZ)
    return poly.primitive()[1]


def _monicize(poly: Poly) -> Poly:
    """lc^{d-1} h(x / lc): a monic integral polynomial with the same root field."""
    coeffs = [int(c) for c in poly.all_coeffs()]
    lc, degree = coeffs[0], len(coeffs) - 1
    monic = [c * lc ** (i - 1) if i > 0 else 1 for i, c in enumerate(coeffs)]
    return Poly(monic, X, domain=ZZ) if degree > 0 else poly


def newton_segments(coeffs: list[int], p: int) -> list[tuple[Fraction, int, int]]:
    """
    Lower Newton polygon of an integer polynomial given in ascending powers, as
    (root valuation, first index, last index) per segment. Collinear points are
    merged into one segment. Zero roots are ignored.
    """
    points = [(i, valuation(c, p)) for i, c in enumerate(coeffs) if c != 0]
    hull = []
    for point in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (point[0] - x1) >= (point[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(point)
    return [
        (Fraction(y1 - y2, x2 - x1), x1, x2)
        for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    ]


def residual_polynomial(coeffs: list[int], p: int, s: int, start: int, end: int) -> list[int]:
    """
    Reduction mod p of h(p^s x) / p^m restricted to one integral-slope segment, in
    descending powers. Its roots are the residues of alpha / p^s for the roots
    alpha of valuation s.
    """
    floor = valuation(coeffs[start], p) + s * start
    residual = []
    for c, i in zip(coeffs[start : end + 1], range(start, end + 1)):
        v = valuation(c, p) if c != 0 else None
        # points above the segment vanish mod p
        residual.append((c // p**v) % p if v is not None and v + s * i == floor else 0)
    return gf_strip(residual[::-1])


def _clusters_unramified(poly: Poly, p: int, positive: bool, depth: int, limit: int) -> bool | None:
    """
    Walks the roots of poly (all of them, or only those of positive valuation)
    through Newton polygons and residual polynomials. None means a repeated
    residual factor of degree > 1 was met and the local walk cannot decide.
    """
    if depth > limit:
        raise ComputationError(
            f"No decision for {poly.as_expr()} at {p} after {limit} residual shifts."
        )
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    verdict = True
    for s, start, end in newton_segments(coeffs, p):
        if s < 0 or (positive and s == 0):
            continue
        if s.denominator != 1:
            logger.debug(f"Root valuation {s} for {poly.as_expr()} at {p}")
            return False
        residual = residual_polynomial(coeffs, p, int(s), start, end)
        if gf_sqf_p(residual, p, ZZ):
            continue
        _, factors = gf_factor(residual, p, ZZ)
        for factor, multiplicity in factors:
            if multiplicity == 1:
                continue
            if len(factor) > 2:
                verdict = None
                continue
            b = -int(factor[1]) % p
            scale = p ** int(s)
            shifted = poly.compose(Poly(scale * X + scale * b, X, domain=ZZ))
            inner = _clusters_unramified(shifted, p, True, depth + 1, limit)
            if inner is False:
                return False
            if inner is None:
                verdict = None
    return verdict


def _field_disc_is_unit(monic: Poly, p: int) -> bool:
    try:
        _, field_disc = round_two(monic)
    except (AssertionError, ArithmeticError, ValueError, NotImplementedError) as e:
        raise ComputationError(
            f"Could not compute the field discriminant of {monic.as_expr()}: {e}"
        ) from e
    return int(field_disc) % p != 0


def _factor_unramified(poly: Poly, p: int) -> bool:
    if poly.degree() <= 1:
        return True
    monic = _monicize(poly)
    disc = int(monic.discriminant())
    if disc % p != 0:
        return True
    # every shift strictly increases the valuation of a root difference
    limit = valuation(disc, p) + 2
    verdict = _clusters_unramified(monic, p, False, 0, limit)
    if verdict is None:
        logger.debug(f"Residual factor of degree > 1 for {monic.as_expr()} at {p}")
        return _field_disc_is_unit(monic, p)
    return verdict


def splitting_field_unramified(coeffs, p: int) -> bool:
    """
    True iff every root of the squarefree polynomial with the given coefficients
    (highest degree first) generates an unramified extension of Q_p.
    """
    check_prime(p)
    poly = _integral_poly(coeffs)
    if poly.degree() <= 0:
        return True
    if poly.gcd(poly.diff(X)).degree() > 0:
        raise DegenerateFormError(f"{poly.as_expr()} is not squarefree.")
    _, factors = factor_list(poly.as_expr(), X, domain=QQ)
    for factor, _ in factors:
        if not _factor_unramified(_integral_poly(Poly(factor, X).all_coeffs()), p):
            return False
    return True
