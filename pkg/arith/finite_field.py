"""Finite fields F_{p^k} as F_p[t] modulo a fixed irreducible polynomial."""

from dataclasses import dataclass
from itertools import product
from threading import Lock

from loguru import logger
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_gcdex,
    gf_irreducible_p,
    gf_mul,
    gf_neg,
    gf_pow_mod,
    gf_rem,
    gf_sqf_p,
    gf_strip,
    gf_sub,
)

from arith.rationals import check_prime

_MODULUS_CACHE: dict[tuple[int, int], tuple[int, ...]] = {}
_MODULUS_LOCK = Lock()


def _search_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree k over F_p."""
    if k == 1:
        return (1, 0)
    for tail in product(range(p), repeat=k):
        if tail[-1] == 0:
            continue
        candidate = [1, *tail]
        if gf_irreducible_p(candidate, p, ZZ):
            return tuple(candidate)
    raise RuntimeError(f"No irreducible polynomial of degree {k} over F_{p}.")


def field_modulus(p: int, k: int) -> tuple[int, ...]:
    key = (p, k)
    with _MODULUS_LOCK:
        if key not in _MODULUS_CACHE:
            _MODULUS_CACHE[key] = _search_modulus(p, k)
            logger.debug(f"Fixed modulus for F_{p}^{k}: {_MODULUS_CACHE[key]}")
        return _MODULUS_CACHE[key]


@dataclass(frozen=True)
class FiniteField:
    p: int
    k: int = 1

    def __post_init__(self):
        check_prime(self.p)
        if self.k < 1:
            raise ValueError("Extension degree must be positive.")

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def modulus(self) -> tuple[int, ...]:
        return field_modulus(self.p, self.k)

    def _reduce(self, coeffs) -> tuple[int, ...]:
        coeffs = gf_strip([c % self.p for c in coeffs])
        return tuple(gf_rem(coeffs, list(self.modulus), self.p, ZZ))

    def element(self, value) -> "FiniteFieldElement":
        """Builds an element from an integer or a coefficient list (high degree first)."""
        if isinstance(value, FiniteFieldElement):
            return value
        coeffs = [value] if isinstance(value, int) else list(value)
        return FiniteFieldElement(self, self._reduce(coeffs))

    @property
    def zero(self) -> "FiniteFieldElement":
        return FiniteFieldElement(self, ())

    @property
    def one(self) -> "FiniteFieldElement":
        return self.element(1)

    @property
    def generator(self) -> "FiniteFieldElement":
        """The class of t."""
        return self.element([1, 0])

    def elements(self):
        for coeffs in product(range(self.p), repeat=self.k):
            yield self.element(list(coeffs))

    def is_squarefree(self, coeffs) -> bool:
        """Squarefreeness of an F_p-polynomial given by integer coefficients."""
        poly = gf_strip([c % self.p for c in coeffs])
        return len(poly) > 0 and gf_sqf_p(poly, self.p, ZZ)

    def evaluate(self, coeffs, point: "FiniteFieldElement") -> "FiniteFieldElement":
        """Horner evaluation of an integer polynomial at a field element."""
        acc = self.zero
        for c in coeffs:
            acc = acc * point + self.element(int(c))
        return acc


@dataclass(frozen=True)
class FiniteFieldElement:
    field: FiniteField
    coeffs: tuple[int, ...]

    def _coerce(self, other) -> "FiniteFieldElement":
        if isinstance(other, FiniteFieldElement):
            if other.field != self.field:
                raise ValueError("Elements of different fields.")
            return other
        return self.field.element(other)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        other = self._coerce(other)
        p = self.field.p
        return FiniteFieldElement(
            self.field, tuple(gf_add(list(self.coeffs), list(other.coeffs), p, ZZ))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        p = self.field.p
        return FiniteFieldElement(
            self.field, tuple(gf_sub(list(self.coeffs), list(other.coeffs), p, ZZ))
        )

    def __neg__(self):
        return FiniteFieldElement(
            self.field, tuple(gf_neg(list(self.coeffs), self.field.p, ZZ))
        )

    def __mul__(self, other):
        other = self._coerce(other)
        p = self.field.p
        prod = gf_mul(list(self.coeffs), list(other.coeffs), p, ZZ)
        return FiniteFieldElement(
            self.field, tuple(gf_rem(prod, list(self.field.modulus), p, ZZ))
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        p = self.field.p
        return FiniteFieldElement(
            self.field,
            tuple(
                gf_pow_mod(list(self.coeffs), exponent, list(self.field.modulus), p, ZZ)
            ),
        )

    def inverse(self) -> "FiniteFieldElement":
        if self.is_zero():
            raise ZeroDivisionError("Zero has no inverse in a field.")
        p = self.field.p
        s, _, h = gf_gcdex(list(self.coeffs), list(self.field.modulus), p, ZZ)
        # h is the monic gcd, here the constant 1
        if h != [1]:
            raise ArithmeticError("Modulus is not irreducible.")
        return FiniteFieldElement(self.field, tuple(s))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def frobenius(self) -> "FiniteFieldElement":
        return self ** self.field.p
