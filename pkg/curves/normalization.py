"""Moving a rational point of a plane quartic to (1:0:0) with tangent z = 0."""

from math import gcd

from loguru import logger
from sympy import Matrix
from sympy.core.intfunc import igcdex

from arith.rationals import lcm_of_denominators, to_fraction
from errors import DegenerateFormError
from forms.ternary_form import LinearChange3, TernaryForm


def _primitive(vector) -> list[int]:
    values = [to_fraction(v) for v in vector]
    den = lcm_of_denominators(values)
    ints = [int(v * den) for v in values]
    g = gcd(*ints)
    if g == 0:
        raise ValueError("The zero vector is not a projective point.")
    return [v // g for v in ints]


def _kernel_completion(row: list[int]) -> list[list[int]]:
    """Columns u1, u2, u3 of a unimodular U with row . U = (0, 0, 1)."""
    w = list(row)
    cols = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for i in (0, 1):
        while w[i] != 0:
            q = w[2] // w[i]
            w[2] -= q * w[i]
            cols[2] = [a - q * b for a, b in zip(cols[2], cols[i])]
            w[i], w[2] = w[2], w[i]
            cols[i], cols[2] = cols[2], cols[i]
    if w[2] < 0:
        cols[2] = [-a for a in cols[2]]
    return cols


def _columns_to_change(columns) -> LinearChange3:
    return LinearChange3(tuple(tuple(col[i] for col in columns) for i in range(3)))


def normalize_point_tangent(
    form: TernaryForm, point
) -> tuple[TernaryForm, LinearChange3]:
    """
    Returns (F o T, T) with T integral of determinant +-1, T(1,0,0) = P and the
    tangent line at P pulled back to z = 0.
    """
    if not form.is_integral:
        raise ValueError("normalize_point_tangent expects an integral form.")
    p = _primitive(point)
    if form.evaluate(p) != 0:
        raise ValueError(f"{tuple(p)} is not on the curve {form}.")
    gradient = [d.evaluate(p) for d in form.partials()]
    if all(g == 0 for g in gradient):
        raise DegenerateFormError(f"{tuple(p)} is a singular point; no tangent line.")
    ell = _primitive(gradient)

    if p[1] == p[2] == 0 and ell[0] == ell[1] == 0:
        logger.debug("Point and tangent already normalized")
        change = LinearChange3.identity()
        return form, change

    # --- 1. Unimodular basis adapted to the tangent line ---
    u1, u2, u3 = _kernel_completion(ell)
    coords = Matrix([u1, u2, u3]).T.solve(Matrix(p))
    a, b = int(coords[0]), int(coords[1])

    # --- 2. Complete P to a basis of the tangent lattice ---
    x, y, g = (int(v) for v in igcdex(a, b))
    if g != 1:
        raise ValueError(f"{tuple(p)} is not primitive in the tangent lattice.")
    c, d = -y, x
    second = [c * s + d * t for s, t in zip(u1, u2)]

    change = _columns_to_change([p, second, u3])
    logger.debug(f"Point {tuple(p)} normalized with det {change.determinant}")
    return form.transform(change), change
