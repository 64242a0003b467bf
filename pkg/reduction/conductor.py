"""
Bounds on conductor exponents of Picard curves over Q. Exponents are never
computed here; externally supplied values are checked against the known
lower bounds and allowed sets.
"""

from math import prod
from typing import Literal

from loguru import logger
from pydantic import BaseModel, Field

import config
from arith.rationals import to_fraction, valuation
from errors import MalformedInputError
from forms.binary_quartic import BinaryQuartic

ReductionTypeAt3 = Literal["potentially_good", "compact_type", "loops"]

TYPE_AT_3_FLOOR: dict[str, int] = {
    "potentially_good": 6,
    "compact_type": 4,
    "loops": 5,
}


class ConductorBounds(BaseModel):
    """Per-prime lower bounds and allowed sets for conductor exponents."""

    kind: str = Field(description="special or nonspecial")
    lower_bounds: dict[int, int] = Field(default_factory=dict, description="f_p >= bound")
    allowed_odd: list[int] | None = Field(
        default=None, description="Allowed exponents at primes p >= 5, if restricted"
    )
    conductor_floor: int | None = Field(
        default=None, description="Lower bound for N when f_2 and f_3 are both known"
    )


def conductor_bounds(kind: str, reduction_type_at_3: str | None = None) -> ConductorBounds:
    floor_3 = 4
    if reduction_type_at_3 is not None:
        if reduction_type_at_3 not in TYPE_AT_3_FLOOR:
            raise MalformedInputError(f"Unknown reduction type at 3: {reduction_type_at_3!r}")
        floor_3 = max(floor_3, TYPE_AT_3_FLOOR[reduction_type_at_3])
    if kind == "special":
        return ConductorBounds(
            kind=kind,
            lower_bounds={2: 6, 3: floor_3},
            allowed_odd=[0, 4, 6],
            conductor_floor=config.SPECIAL_CONDUCTOR_FLOOR,
        )
    return ConductorBounds(kind=kind, lower_bounds={3: floor_3})


def conductor_from_exponents(exponents: dict[int, int]) -> int:
    return prod(p**e for p, e in exponents.items())


def _exponents(record) -> dict[int, int]:
    raw = record.conductor_exponents or {}
    return {int(p): int(e) for p, e in raw.items() if e is not None}


def validate_conductor_exponents(record) -> list[str]:
    """Violations of the conductor bounds by the exponents stored on a curve record."""
    exponents = _exponents(record)
    if not exponents:
        return []
    bounds = conductor_bounds(record.kind, record.reduction_type_at_3)
    bad = set(record.bad_primes)
    violations = []
    for p, f in sorted(exponents.items()):
        if f < 0:
            violations.append(f"f_{p} = {f} is negative")
            continue
        if p not in bad and f != 0:
            violations.append(f"f_{p} = {f} at a prime of good reduction")
        floor = bounds.lower_bounds.get(p)
        if floor is not None and f < floor:
            violations.append(f"f_{p} = {f} < {floor}")
        if p >= 5 and bounds.allowed_odd is not None and f not in bounds.allowed_odd:
            violations.append(f"f_{p} = {f} not in {bounds.allowed_odd}")
    if bounds.conductor_floor is not None and 2 in exponents and 3 in exponents:
        n = conductor_from_exponents(exponents)
        if n < bounds.conductor_floor:
            violations.append(f"N = {n} < {bounds.conductor_floor}")
    if violations:
        logger.debug(f"Record {record.label}: {len(violations)} conductor violations")
    return violations


def special_f3_family(a, g: BinaryQuartic) -> int:
    """f_3 of a x^4 = g(y) for g = y^4 + 6 b y^2 + 3 c' y - 3 b^2 with 3 not dividing b."""
    a = to_fraction(a)
    c = g.coeffs
    if a == 0:
        raise ValueError("a must be nonzero.")
    if c[0] != 1 or c[1] != 0:
        raise ValueError(f"{g} is not of the form y^4 + 6b y^2 + 3c' y - 3b^2.")
    b = c[2] / 6
    if c[4] != -3 * b**2 or b.denominator != 1 or (c[3] / 3).denominator != 1:
        raise ValueError(f"{g} is not of the form y^4 + 6b y^2 + 3c' y - 3b^2.")
    if b.numerator % 3 == 0:
        raise ValueError("The family needs 3 not dividing b.")
    v = valuation(a, 3)
    if not 0 <= v <= 3:
        raise ValueError(f"a must satisfy 0 <= v_3(a) <= 3, got {v}.")
    return 4 if v in (1, 2) else 6


def conductor_within_disc(exponents: dict[int, int], disc_factorization) -> dict[int, bool]:
    """Per prime, whether f_p does not exceed the discriminant exponent."""
    disc = {int(p): int(e) for p, e in disc_factorization}
    return {p: f <= disc.get(p, 0) for p, f in sorted(exponents.items())}
