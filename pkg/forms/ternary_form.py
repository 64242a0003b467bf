"""Ternary forms in the variables (y, x, z) and linear changes of coordinates."""

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import Poly, Rational, symbols

from arith.rationals import lcm_of_denominators, to_fraction, valuation
from errors import DegenerateFormError, MalformedInputError

Y, X, Z = symbols("y x z")
VARIABLES = (Y, X, Z)

Monomial = tuple[int, int, int]


def monomials(degree: int) -> list[Monomial]:
    """Exponent vectors (a, b, c) of y^a x^b z^c, descending lexicographically."""
    return [
        (a, b, degree - a - b)
        for a in range(degree, -1, -1)
        for b in range(degree - a, -1, -1)
    ]


def _multiply(f: dict, g: dict) -> dict:
    out: dict[Monomial, Fraction] = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            key = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c != 0}


@dataclass(frozen=True)
class LinearChange3:
    """3x3 matrix T acting by F -> F o T on forms in (y, x, z)."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_fraction(v) for v in row) for row in self.rows)
        if len(rows) != 3 or any(len(row) != 3 for row in rows):
            raise ValueError("LinearChange3 needs a 3x3 matrix.")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls) -> "LinearChange3":
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    @classmethod
    def diagonal(cls, a, b, c) -> "LinearChange3":
        return cls(((a, 0, 0), (0, b, 0), (0, 0, c)))

    @property
    def determinant(self) -> Fraction:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.rows for v in row)

    def then(self, other: "LinearChange3") -> "LinearChange3":
        """Matrix product self * other, so that (F o self) o other = F o (self * other)."""
        return LinearChange3(
            tuple(
                tuple(
                    sum((self.rows[i][k] * other.rows[k][j] for k in range(3)), Fraction(0))
                    for j in range(3)
                )
                for i in range(3)
            )
        )

    def inverse(self) -> "LinearChange3":
        det = self.determinant
        if det == 0:
            raise ValueError("A singular matrix has no inverse.")
        r = self.rows
        adjugate = [
            [
                r[(j + 1) % 3][(i + 1) % 3] * r[(j + 2) % 3][(i + 2) % 3]
                - r[(j + 1) % 3][(i + 2) % 3] * r[(j + 2) % 3][(i + 1) % 3]
                for j in range(3)
            ]
            for i in range(3)
        ]
        return LinearChange3(tuple(tuple(v / det for v in row) for row in adjugate))

    def apply_to_point(self, point) -> tuple[Fraction, Fraction, Fraction]:
        point = [to_fraction(v) for v in point]
        return tuple(sum((r * v for r, v in zip(row, point)), Fraction(0)) for row in self.rows)


@dataclass(frozen=True)
class TernaryForm:
    degree: int
    terms: tuple[tuple[Monomial, Fraction], ...]

    def __post_init__(self):
        cleaned = {}
        for m, c in self.terms:
            m = tuple(int(e) for e in m)
            if len(m) != 3 or sum(m) != self.degree or min(m) < 0:
                raise ValueError(f"Monomial {m} does not have degree {self.degree}.")
            c = to_fraction(c)
            if c != 0:
                cleaned[m] = cleaned.get(m, Fraction(0)) + c
        terms = tuple(sorted(((m, c) for m, c in cleaned.items() if c != 0), reverse=True))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_dict(cls, degree: int, coefficients: dict) -> "TernaryForm":
        return cls(degree, tuple(coefficients.items()))

    @classmethod
    def quartic(cls, coefficients: dict) -> "TernaryForm":
        """A nonzero ternary quartic."""
        form = cls.from_dict(4, coefficients)
        if form.is_zero():
            raise DegenerateFormError("The zero form is not a plane quartic.")
        return form

    @classmethod
    def from_expr(cls, expr, degree: int | None = None) -> "TernaryForm":
        poly = Poly(expr, *VARIABLES)
        if not (poly.domain.is_ZZ or poly.domain.is_QQ):
            raise MalformedInputError(f"Non-rational coefficients in {expr}.")
        if not poly.is_homogeneous:
            raise MalformedInputError(f"{expr} is not homogeneous in y, x, z.")
        degree = poly.total_degree() if degree is None else degree
        return cls.from_dict(degree, {m: to_fraction(c) for m, c in poly.terms()})

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self.as_dict().get(tuple(m), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def as_expr(self):
        return sum(
            (
                Rational(c.numerator, c.denominator) * Y ** m[0] * X ** m[1] * Z ** m[2]
                for m, c in self.terms
            ),
            Rational(0),
        )

    def __str__(self) -> str:
        return str(self.as_expr())

    def scale(self, factor) -> "TernaryForm":
        factor = to_fraction(factor)
        return TernaryForm(self.degree, tuple((m, factor * c) for m, c in self.terms))

    def __neg__(self) -> "TernaryForm":
        return self.scale(-1)

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        if other.degree != self.degree:
            raise ValueError("Cannot add forms of different degrees.")
        return TernaryForm(self.degree, self.terms + other.terms)

    def __sub__(self, other: "TernaryForm") -> "TernaryForm":
        return self + (-other)

    def partial(self, index: int) -> "TernaryForm":
        """Derivative in y (0), x (1) or z (2)."""
        terms = []
        for m, c in self.terms:
            if m[index] == 0:
                continue
            shifted = list(m)
            shifted[index] -= 1
            terms.append((tuple(shifted), c * m[index]))
        return TernaryForm(self.degree - 1, tuple(terms))

    def partials(self) -> tuple["TernaryForm", "TernaryForm", "TernaryForm"]:
        return self.partial(0), self.partial(1), self.partial(2)

    def evaluate(self, point) -> Fraction:
        y, x, z = (to_fraction(v) for v in point)
        return sum((c * y ** m[0] * x ** m[1] * z ** m[2] for m, c in self.terms), Fraction(0))

    def transform(self, change: LinearChange3) -> "TernaryForm":
        """F o T, the form v -> F(T v)."""
        linear = [
            {(1, 0, 0): row[0], (0, 1, 0): row[1], (0, 0, 1): row[2]} for row in change.rows
        ]
        linear = [{m: c for m, c in form.items() if c != 0} for form in linear]
        powers = [[{(0, 0, 0): Fraction(1)}] for _ in range(3)]
        for i in range(3):
            for _ in range(self.degree):
                powers[i].append(_multiply(powers[i][-1], linear[i]))
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms:
            product = _multiply(_multiply(powers[0][m[0]], powers[1][m[1]]), powers[2][m[2]])
            for key, value in product.items():
                out[key] = out.get(key, Fraction(0)) + c * value
        return TernaryForm.from_dict(self.degree, out)

    def gauss_valuation(self, p: int):
        return min((valuation(c, p) for _, c in self.terms), default=math.inf)

    def denominator(self) -> int:
        return lcm_of_denominators(c for _, c in self.terms)

    @property
    def is_integral(self) -> bool:
        return self.denominator() == 1


TernaryQuartic = TernaryForm
