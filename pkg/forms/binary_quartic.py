"""
Binary quartic forms c0 x^4 + c1 x^3 z + c2 x^2 z^2 + c3 x z^3 + c4 z^4: classical
invariants, the affine and Moebius actions, the slope lambda, reduction of monic
quartics at a prime, and the Hessian shadow of equianharmonic quartics.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger
from sympy import Poly, symbols
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from arith.rationals import check_prime, to_fraction, valuation
from errors import DegenerateFormError, MalformedInputError
from forms import binary_forms as bf

X, Z = symbols("x z")
TRANSFORMATIONS = standard_transformations + (convert_xor,)


@dataclass(frozen=True)
class BinaryQuartic:
    coeffs: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        coeffs = bf.as_form(self.coeffs)
        if len(coeffs) != 5:
            raise ValueError("A binary quartic has exactly five coefficients.")
        if bf.is_zero(coeffs):
            raise DegenerateFormError("The zero form is not a binary quartic.")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, *coeffs) -> "BinaryQuartic":
        return cls(tuple(coeffs))

    @classmethod
    def from_polynomial(cls, coeffs) -> "BinaryQuartic":
        """From polynomial coefficients (highest degree first, degree at most 4)."""
        coeffs = list(coeffs)
        if len(coeffs) > 5:
            raise DegenerateFormError("Degree exceeds four.")
        return cls(tuple([0] * (5 - len(coeffs)) + coeffs))

    @classmethod
    def parse(cls, text: str) -> "BinaryQuartic":
        """Parses a univariate literal such as 'x^4+6*x^2-3' (any single variable name)."""
        try:
            expr = parse_expr(text, transformations=TRANSFORMATIONS)
        except Exception as e:
            raise MalformedInputError(f"Cannot parse polynomial {text!r}: {e}") from e
        free = sorted(expr.free_symbols, key=str)
        if len(free) > 1:
            raise MalformedInputError(f"Expected a univariate polynomial: {text!r}")
        var = free[0] if free else X
        poly = Poly(expr, var)
        if not poly.domain.is_QQ and not poly.domain.is_ZZ:
            raise MalformedInputError(f"Coefficients must be rational: {text!r}")
        return cls.from_polynomial([to_fraction(c) for c in poly.all_coeffs()])

    @property
    def is_monic(self) -> bool:
        return self.coeffs[0] == 1

    @property
    def polynomial_degree(self) -> int:
        """Degree of the dehomogenization f(x, 1)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return 4 - i
        return -1

    def polynomial_coefficients(self) -> list[Fraction]:
        coeffs = list(self.coeffs)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        return coeffs

    def scale(self, mu) -> "BinaryQuartic":
        return BinaryQuartic(bf.form_scale(self.coeffs, mu))

    def compose(self, alpha, beta, gamma, delta) -> "BinaryQuartic":
        return BinaryQuartic(bf.compose(self.coeffs, alpha, beta, gamma, delta))

    def as_expr(self, x=X, z=None):
        return bf.to_expr(self.coeffs, x, 1 if z is None else z)

    def __str__(self) -> str:
        return str(self.as_expr())


@dataclass(frozen=True)
class MobiusMap:
    """The substitution (x, z) -> (alpha x + beta z, gamma x + delta z), times a scalar."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    scalar: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta", "scalar"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if self.determinant == 0:
            raise DegenerateFormError("A Moebius map needs a nonzero determinant.")
        if self.scalar == 0:
            raise DegenerateFormError("A Moebius map needs a nonzero scalar.")

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def affine(cls, alpha, beta) -> "MobiusMap":
        """x -> alpha x + beta on monic quartics, normalized by alpha^-4."""
        alpha = to_fraction(alpha)
        return cls(alpha, beta, 0, 1, alpha**-4)

    @property
    def determinant(self) -> Fraction:
        return self.alpha * self.delta - self.beta * self.gamma

    @property
    def matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.alpha, self.beta), (self.gamma, self.delta))

    def then(self, other: "MobiusMap") -> "MobiusMap":
        """The map acting as self first and other second: matrix product self * other."""
        a, b, c, d = self.alpha, self.beta, self.gamma, self.delta
        e, f, g, h = other.alpha, other.beta, other.gamma, other.delta
        return MobiusMap(
            a * e + b * g,
            a * f + b * h,
            c * e + d * g,
            c * f + d * h,
            self.scalar * other.scalar,
        )

    def inverse(self) -> "MobiusMap":
        det = self.determinant
        return MobiusMap(
            self.delta / det,
            -self.beta / det,
            -self.gamma / det,
            self.alpha / det,
            1 / self.scalar,
        )

    def apply(self, f: BinaryQuartic) -> BinaryQuartic:
        return act_mobius(f, self)

    def normalized(self) -> "MobiusMap":
        """Representative with delta = 1, or gamma = 1 when delta = 0 (scalar kept)."""
        pivot = self.delta if self.delta != 0 else self.gamma
        return MobiusMap(
            self.alpha / pivot,
            self.beta / pivot,
            self.gamma / pivot,
            self.delta / pivot,
            self.scalar * pivot**4,
        )


# --- Invariants ---


def invariant_I(f: BinaryQuartic) -> Fraction:
    c0, c1, c2, c3, c4 = f.coeffs
    return 12 * c0 * c4 - 3 * c1 * c3 + c2 * c2


def invariant_J(f: BinaryQuartic) -> Fraction:
    c0, c1, c2, c3, c4 = f.coeffs
    return (
        72 * c0 * c2 * c4
        + 9 * c1 * c2 * c3
        - 27 * c0 * c3 * c3
        - 27 * c4 * c1 * c1
        - 2 * c2**3
    )


def disc_binary(f: BinaryQuartic) -> Fraction:
    """(4 I^3 - J^2) / 27, equal to Res(f, f') / c0 when c0 != 0."""
    return (4 * invariant_I(f) ** 3 - invariant_J(f) ** 2) / 27


def j_invariant(f: BinaryQuartic) -> Fraction:
    disc = disc_binary(f)
    if disc == 0:
        raise DegenerateFormError("j-invariant of a form with a repeated root.")
    return 256 * invariant_I(f) ** 3 / disc


def is_separable(f: BinaryQuartic) -> bool:
    return disc_binary(f) != 0


# --- Actions ---


def act_mobius(f: BinaryQuartic, m: MobiusMap) -> BinaryQuartic:
    return BinaryQuartic(
        bf.form_scale(bf.compose(f.coeffs, m.alpha, m.beta, m.gamma, m.delta), m.scalar)
    )


def act_affine(f: BinaryQuartic, alpha, beta) -> BinaryQuartic:
    """alpha^-4 f(alpha x + beta)."""
    alpha = to_fraction(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero.")
    return act_mobius(f, MobiusMap.affine(alpha, beta))


# --- Reduction at a prime ---


def _require_monic(f: BinaryQuartic) -> None:
    if not f.is_monic:
        raise ValueError(f"Expected a monic quartic, got {f}.")


def lambda_slope(f: BinaryQuartic, p: int) -> Fraction | float:
    """min_i v_p(c_i)/i over the non-leading coefficients; math.inf for x^4."""
    _require_monic(f)
    slopes = [
        Fraction(valuation(c, p)) / i for i, c in enumerate(f.coeffs) if i > 0 and c != 0
    ]
    return min(slopes, default=math.inf)


def _reduction_is_linear_fourth_power(f: BinaryQuartic, p: int) -> Fraction | None:
    """For lambda(f) = 0: a lift a with f = (x - a)^4 mod p, or None."""
    if p == 2:
        candidates = [Fraction(1)]
    else:
        c1 = f.coeffs[1]
        residue = (-c1.numerator * pow(4 * c1.denominator, -1, p)) % p
        candidates = [Fraction(residue)] if residue else []
    for a in candidates:
        shifted = act_affine(f, 1, a)
        if lambda_slope(shifted, p) > 0:
            return a
    return None


def reduce_quartic(f: BinaryQuartic, p: int) -> tuple[BinaryQuartic, MobiusMap]:
    """
    Reduces a separable monic quartic at p by scaling x -> p^n x and shifting
    x -> x + a. Returns the reduced quartic g and the map M with M.apply(f) = g.
    """
    check_prime(p)
    _require_monic(f)
    if not is_separable(f):
        raise DegenerateFormError(f"{f} is not separable.")
    transform = MobiusMap.identity()
    while True:
        # --- (a) scale so that 0 <= lambda < 1 ---
        n = math.floor(lambda_slope(f, p))
        if n != 0:
            step = MobiusMap.affine(Fraction(p) ** n, 0)
            f, transform = step.apply(f), transform.then(step)
        if lambda_slope(f, p) > 0:
            break
        # --- (b) residual fourth power of a linear form ---
        a = _reduction_is_linear_fourth_power(f, p)
        if a is None:
            break
        step = MobiusMap.affine(1, a)
        shifted = step.apply(f)
        if lambda_slope(shifted, p) < 1:
            break
        logger.debug(f"reduce_quartic at {p}: shifting by {a}.")
        f, transform = shifted, transform.then(step)
    return f, transform


def is_reduced_sufficient(f: BinaryQuartic, p: int) -> bool:
    """One-sided test: True guarantees f is reduced at p."""
    lam = lambda_slope(f, p)
    if not 0 <= lam < 1:
        return False
    return lam > 0 or _reduction_is_linear_fourth_power(f, p) is None


# --- Shadow ---


def hessian(f: BinaryQuartic) -> BinaryQuartic:
    """f_xx f_zz - f_xz^2 as a binary quartic."""
    fx, fz = bf.derivative_first(f.coeffs), bf.derivative_second(f.coeffs)
    fxx, fxz = bf.derivative_first(fx), bf.derivative_second(fx)
    fzz = bf.derivative_second(fz)
    return BinaryQuartic(bf.form_sub(bf.form_mul(fxx, fzz), bf.form_mul(fxz, fxz)))


def hessian_shadow(g: BinaryQuartic) -> BinaryQuartic:
    """Root divisor of the Hessian covariant of an equianharmonic quartic, normalized."""
    if invariant_I(g) != 0:
        raise DegenerateFormError(f"{g} is not equianharmonic (I != 0).")
    if disc_binary(g) == 0:
        raise DegenerateFormError(f"{g} has a repeated root.")
    return BinaryQuartic(bf.leading_normalized(hessian(g).coeffs))
