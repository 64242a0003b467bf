"""
PGL2(Q)-equivalence of binary quartics up to scalars: all A with g1 o A = mu * g2.

The scalar is forced up to det(A)^2 by the invariants I and J, which turns the
problem into a homogeneous system in the matrix entries. Each affine chart of
P^3 is solved by a lex Groebner basis and rational back-substitution.
"""

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product

from loguru import logger
from sympy import Poly, QQ, Rational, ZZ, factor_list, groebner, primerange, symbols
from sympy.polys.galoistools import gf_factor

import config
from arith.rationals import (
    lcm_of_denominators,
    nth_power_free_part,
    rational_nth_root,
    to_fraction,
)
from errors import ComputationError
from forms import binary_forms as bf
from forms.binary_quartic import (
    BinaryQuartic,
    MobiusMap,
    act_mobius,
    disc_binary,
    invariant_I,
    invariant_J,
)

W, A, B, C = symbols("w a b c")
X, Z = symbols("x z")

Equivalence = tuple[MobiusMap, Fraction]


# --- Pre-filters ---


def _primitive_integral(g: BinaryQuartic) -> list[int]:
    den = lcm_of_denominators(g.coeffs)
    ints = [int(c * den) for c in g.coeffs]
    g_content = math.gcd(*ints)
    return [c // g_content for c in ints]


def degree_pattern(g: BinaryQuartic) -> tuple[int, ...]:
    """Degrees of the irreducible factors over Q, a root at infinity counting as 1."""
    at_infinity = 4 - g.polynomial_degree
    poly_expr = bf.to_expr(tuple(g.polynomial_coefficients()), X, 1)
    _, factors = factor_list(poly_expr, X, domain=QQ)
    degrees = [Poly(f, X).degree() for f, m in factors for _ in range(m)]
    return tuple(sorted(degrees + [1] * at_infinity))


def _frobenius_pattern(prim: list[int], p: int) -> tuple[int, ...]:
    coeffs = [c % p for c in prim]
    at_infinity = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        at_infinity += 1
    degrees = []
    if len(coeffs) > 1:
        _, factors = gf_factor(coeffs, p, ZZ)
        degrees = [len(f) - 1 for f, m in factors for _ in range(m)]
    return tuple(sorted(degrees + [1] * at_infinity))


def frobenius_signature(g1: BinaryQuartic, g2: BinaryQuartic) -> tuple[tuple, tuple]:
    """Factorization patterns at the first primes of good reduction for both forms."""
    prim1, prim2 = _primitive_integral(g1), _primitive_integral(g2)
    bad = disc_binary(BinaryQuartic(tuple(prim1))) * disc_binary(BinaryQuartic(tuple(prim2)))
    primes = []
    for p in primerange(5, 10**6):
        if bad.numerator % p != 0:
            primes.append(p)
        if len(primes) == config.FROBENIUS_TEST_PRIMES:
            break
    return (
        tuple(_frobenius_pattern(prim1, p) for p in primes),
        tuple(_frobenius_pattern(prim2, p) for p in primes),
    )


def scalar_candidates(g1: BinaryQuartic, g2: BinaryQuartic) -> list[Fraction]:
    """Values t such that any equivalence has mu = t * det(A)^2."""
    i1, i2, j1, j2 = invariant_I(g1), invariant_I(g2), invariant_J(g1), invariant_J(g2)
    if (i1 == 0) != (i2 == 0) or (j1 == 0) != (j2 == 0):
        return []
    if i1 == 0:
        root = rational_nth_root(j1 / j2, 3)
        return [root] if root is not None else []
    if j1 == 0:
        root = rational_nth_root(i1 / i2, 2)
        return [root, -root] if root is not None else []
    t = j1 * i2 / (j2 * i1)
    return [t] if t * t == i1 / i2 else []


def equivalence_obstructed(g1: BinaryQuartic, g2: BinaryQuartic) -> bool:
    """Cheap necessary conditions; True means the forms are certainly inequivalent."""
    if not scalar_candidates(g1, g2):
        return True
    if degree_pattern(g1) != degree_pattern(g2):
        return True
    sig1, sig2 = frobenius_signature(g1, g2)
    return sig1 != sig2


# --- Polynomial system ---


def _system(g1: BinaryQuartic, g2: BinaryQuartic, t: Fraction, chart: int):
    if chart == 1:
        a, b, c, d, gens = A, B, C, 1, (W, A, B, C)
    else:
        a, b, c, d, gens = A, B, 1, 0, (W, A, B)
    det = a * d - b * c
    lhs = bf.to_expr(g1.coeffs, a * X + b * Z, c * X + d * Z)
    rhs = bf.to_expr(g2.coeffs, X, Z) * det**2 * Rational(t.numerator, t.denominator)
    poly = Poly((lhs - rhs).expand(), X, Z)
    equations = [poly.coeff_monomial(X ** (4 - k) * Z**k) for k in range(5)]
    equations.append(W * det - 1)
    return equations, gens


def _rational_points(equations, gens) -> list[dict]:
    """Rational solutions of a zero-dimensional system, by lex back-substitution."""
    equations = [e for e in equations if e != 0]
    if not gens:
        return [] if equations else [{}]
    if not equations:
        raise ComputationError("Underdetermined system in the equivalence solver.")
    basis = groebner(equations, *gens, order="grevlex", domain=QQ)
    if basis.exprs == [1]:
        return []
    if not basis.is_zero_dimensional:
        raise ComputationError("Positive-dimensional system in the equivalence solver.")
    basis = basis.fglm("lex")
    last = gens[-1]
    univariate = [e for e in basis.exprs if e.free_symbols <= {last}]
    if not univariate:
        raise ComputationError(f"No eliminant in {last} for the equivalence system.")
    solutions = []
    for root in sorted(Poly(univariate[0], last).ground_roots()):
        reduced = [e.subs(last, root) for e in basis.exprs]
        for partial in _rational_points(reduced, gens[:-1]):
            solutions.append({**partial, last: root})
    return solutions


def _witness_key(item: Equivalence) -> tuple:
    m, _ = item
    entries = (m.alpha, m.beta, m.gamma, m.delta)
    height = max(max(abs(e.numerator), e.denominator) for e in entries)
    return (height, entries != (1, 0, 0, 1), entries)


@lru_cache(maxsize=4096)
def equivalences(g1: BinaryQuartic, g2: BinaryQuartic) -> tuple[Equivalence, ...]:
    """Every PGL2(Q) class A with g1 o A = mu * g2, as normalized maps with their mu."""
    if equivalence_obstructed(g1, g2):
        return ()
    found = []
    for t in scalar_candidates(g1, g2):
        for chart in (1, 2):
            equations, gens = _system(g1, g2, t, chart)
            for solution in _rational_points(equations, gens):
                a, b = to_fraction(solution[A]), to_fraction(solution[B])
                if chart == 1:
                    c, d = to_fraction(solution[C]), Fraction(1)
                else:
                    c, d = Fraction(1), Fraction(0)
                m = MobiusMap(a, b, c, d)
                mu = t * m.determinant**2
                if act_mobius(g1, m) != g2.scale(mu):
                    raise ComputationError(f"Spurious equivalence {m} between {g1} and {g2}.")
                found.append((m, mu))
    found.sort(key=_witness_key)
    logger.debug(f"Equivalences {g1} -> {g2}: {len(found)} found.")
    return tuple(found)


def are_equivalent(g1: BinaryQuartic, g2: BinaryQuartic) -> Equivalence | None:
    """A witness (A, mu) with g1 o A = mu * g2, or None."""
    found = equivalences(g1, g2)
    return found[0] if found else None


def rational_symmetries(g: BinaryQuartic) -> list[Equivalence]:
    """The group of A in PGL2(Q) with g o A = mu * g; the identity comes first."""
    if disc_binary(g) == 0:
        raise ComputationError(f"{g} is not separable.")
    return list(equivalences(g, g))


def symmetry_scalar_classes(g: BinaryQuartic) -> list[Fraction]:
    """Classes of the scalars mu modulo fourth powers, as fourth-power-free cores."""
    return sorted({nth_power_free_part(mu, 4)[0] for _, mu in rational_symmetries(g)})


def brute_force_equivalences(
    g1: BinaryQuartic, g2: BinaryQuartic, height: int | None = None
) -> list[MobiusMap]:
    """Integral matrices with entries bounded by height realizing an equivalence, normalized."""
    height = config.BRUTE_FORCE_HEIGHT if height is None else height
    target = g2.coeffs
    pivot = next(i for i, c in enumerate(target) if c != 0)
    found = set()
    for a, b, c, d in product(range(-height, height + 1), repeat=4):
        if a * d - b * c == 0 or math.gcd(math.gcd(a, b), math.gcd(c, d)) != 1:
            continue
        image = bf.compose(g1.coeffs, a, b, c, d)
        mu = image[pivot] / target[pivot]
        if mu != 0 and image == bf.form_scale(target, mu):
            m = MobiusMap(a, b, c, d).normalized()
            found.add(MobiusMap(m.alpha, m.beta, m.gamma, m.delta))
    return sorted(found, key=lambda m: (m.alpha, m.beta, m.gamma, m.delta))
