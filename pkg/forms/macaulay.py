"""
Macaulay resultant of three ternary forms and the plane quartic discriminant.

Rows of the Macaulay matrix are indexed by the monomials of degree
D = d1 + d2 + d3 - 2; the row of m is (m / v_i^{d_i}) * F_i for the first
variable v_i in the order (y, x, z) whose d_i-th power divides m. The
resultant is det(M) divided by the principal minor on the monomials divisible
by at least two of the powers v_j^{d_j}.
"""

import random

from fractions import Fraction

from loguru import logger
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

import config
from arith.rationals import lcm_of_denominators
from errors import ComputationError
from forms.ternary_form import LinearChange3, TernaryForm, monomials


def _integral_determinant(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant: denominators are cleared row by row, then ZZ elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = 1
    integral_rows = []
    for row in rows:
        den = lcm_of_denominators(row)
        scale *= den
        integral_rows.append([ZZ(int(v * den)) for v in row])
    det = DomainMatrix(integral_rows, (n, n), ZZ).det()
    return Fraction(int(det), scale)


def macaulay_matrix(forms: tuple[TernaryForm, TernaryForm, TernaryForm]):
    """The Macaulay matrix and the indices of its non-reduced monomials."""
    degrees = [f.degree for f in forms]
    critical = sum(degrees) - 2
    basis = monomials(critical)
    index = {m: k for k, m in enumerate(basis)}
    rows = []
    for m in basis:
        i = next(k for k in range(3) if m[k] >= degrees[k])
        shift = list(m)
        shift[i] -= degrees[i]
        row = [Fraction(0)] * len(basis)
        for exps, c in forms[i].terms:
            row[index[(shift[0] + exps[0], shift[1] + exps[1], shift[2] + exps[2])]] += c
        rows.append(row)
    non_reduced = [
        k
        for k, m in enumerate(basis)
        if sum(m[j] >= degrees[j] for j in range(3)) >= 2
    ]
    return rows, non_reduced


def _quotient(forms) -> Fraction | None:
    rows, non_reduced = macaulay_matrix(forms)
    minor = _integral_determinant([[rows[i][j] for j in non_reduced] for i in non_reduced])
    if minor == 0:
        return None
    return _integral_determinant(rows) / minor


def _unimodular_change(attempt: int) -> LinearChange3:
    rng = random.Random(config.MACAULAY_SEED + attempt)
    upper = LinearChange3(
        ((1, rng.randint(-2, 2), rng.randint(-2, 2)), (0, 1, rng.randint(-2, 2)), (0, 0, 1))
    )
    lower = LinearChange3(
        ((1, 0, 0), (rng.randint(-2, 2), 1, 0), (rng.randint(-2, 2), rng.randint(-2, 2), 1))
    )
    return upper.then(lower)


def macaulay_resultant(f1: TernaryForm, f2: TernaryForm, f3: TernaryForm) -> Fraction:
    """
    Res(F1, F2, F3), normalized by Res(y^d1, x^d2, z^d3) = 1. A vanishing
    extraneous minor is removed by determinant-one changes of variables, which
    leave the resultant unchanged.
    """
    forms = (f1, f2, f3)
    if any(f.degree < 1 for f in forms):
        raise ValueError("Macaulay resultant needs forms of positive degree.")
    if any(f.is_zero() for f in forms):
        return Fraction(0)
    value = _quotient(forms)
    attempt = 0
    while value is None and attempt < config.MACAULAY_RETRIES:
        attempt += 1
        change = _unimodular_change(attempt)
        logger.debug(f"Extraneous minor vanished; retry {attempt} with {change.rows}.")
        value = _quotient(tuple(f.transform(change) for f in forms))
    if value is None:
        logger.error(f"Extraneous minor vanished after {config.MACAULAY_RETRIES} retries.")
        raise ComputationError("Macaulay extraneous minor vanished after all retries.")
    return value


def disc_ternary(form: TernaryForm) -> Fraction:
    """Res(D_y F, D_x F, D_z F) / 2^14 for a plane quartic F."""
    if form.degree != 4:
        raise ValueError("disc_ternary expects a ternary quartic.")
    resultant = macaulay_resultant(*form.partials())
    if form.is_integral and resultant.denominator == 1:
        if resultant.numerator % config.DISCRIMINANT_SCALE != 0:
            logger.error(f"Resultant {resultant} of {form} is not divisible by 2^14.")
            raise ComputationError("Inexact division by 2^14 in the plane quartic discriminant.")
    return resultant / config.DISCRIMINANT_SCALE
