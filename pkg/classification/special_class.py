"""
Special Picard curves over Q with good reduction outside {2, 3}: the table of
special polynomials with its verification certificate, the twists x^4 = a g(y)
and the standard curve x^4 = y^3 + 1.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from loguru import logger

import config
from arith.rationals import nth_power_free_part, prime_support
from arith.unramified import splitting_field_unramified
from classification import field_data
from classification.special_polynomials import (
    biquadratic_obstruction,
    biquadratic_witness,
    is_special_polynomial,
)
from curves.models import SpecialShort
from errors import VerificationError
from forms.binary_quartic import BinaryQuartic, disc_binary, hessian_shadow
from forms.equivalence import are_equivalent, symmetry_scalar_classes

STANDARD_DISCRIMINANT = 2**16 * 3**9
STANDARD_MINIMAL_EXPONENTS = [(2, 7), (3, 9)]
STANDARD_CONDUCTOR_EXPONENTS = {2: 6, 3: 6}


@dataclass(frozen=True)
class ClassRow:
    label: str
    polynomial: BinaryQuartic
    text: str
    # label of the row whose shadow this polynomial is equivalent to
    shadow_of: str | None
    self_shadow: bool
    scalar_classes: tuple[Fraction, ...]


@dataclass(frozen=True)
class ClassificationTable:
    rows: tuple[ClassRow, ...]
    certificate: dict = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def by_label(self, label: str) -> ClassRow:
        return next(row for row in self.rows if row.label == label)

    def shadow_pairs(self) -> list[tuple[str, str]]:
        return [(row.shadow_of, row.label) for row in self.rows if row.shadow_of]


def _fail(message: str, certificate: dict):
    logger.error(f"Classification certificate failed: {message}")
    raise VerificationError(message, certificate)


def _unramified_outside_23(coeffs) -> bool:
    g = BinaryQuartic.from_polynomial(coeffs)
    primes = [p for p in prime_support(disc_binary(g)) if p > 3]
    return all(splitting_field_unramified(coeffs, p) for p in primes)


def _table_rows() -> list[tuple[str, str, str | None, bool]]:
    rows = []
    for left, right in field_data.SPECIAL_POLYNOMIAL_ROWS:
        left_label = f"g{len(rows) + 1:02d}"
        rows.append((left_label, left, None, right is None))
        if right is not None:
            rows.append((f"g{len(rows) + 1:02d}", right, left_label, False))
    return rows


def _verify_fields(certificate: dict) -> None:
    fields = field_data.QUADRATIC_FIELDS + field_data.CUBIC_FIELDS + field_data.QUARTIC_FIELDS
    for (first, second), _ in field_data.BIQUADRATIC_PAIRS:
        fields = fields + [first, second]
    for text in fields:
        coeffs = BinaryQuartic.parse(text).polynomial_coefficients()
        if not _unramified_outside_23(coeffs):
            _fail(f"Field {text} ramifies outside {{2, 3}}", {**certificate, "field": text})
    certificate["fields_checked"] = len(fields)


def _verify_biquadratic(certificate: dict) -> None:
    unobstructed = []
    for _, (d1, d2) in field_data.BIQUADRATIC_PAIRS:
        if not biquadratic_obstruction(d1, d2):
            witness = biquadratic_witness(d1, d2)
            if witness is None:
                _fail(f"No witness for the split conic ({d1}, {d2})", certificate)
            unobstructed.append({"pair": (d1, d2), "witness": witness})
    if len(unobstructed) != 1:
        _fail(f"Expected one unobstructed biquadratic pair, got {unobstructed}", certificate)
    certificate["biquadratic"] = unobstructed


@lru_cache(maxsize=1)
def classify_special_good_outside_23() -> ClassificationTable:
    """Builds and verifies the table; any failed check raises VerificationError."""
    certificate: dict = {}
    # --- 1. Field data ---
    _verify_fields(certificate)
    _verify_biquadratic(certificate)

    # --- 2. Each polynomial is special with good reduction outside {2, 3} ---
    parsed = []
    for label, text, shadow_of, self_shadow in _table_rows():
        g = BinaryQuartic.parse(text)
        if not is_special_polynomial(g):
            _fail(f"{text} is not a special polynomial", {**certificate, "row": label})
        if not _unramified_outside_23(g.polynomial_coefficients()):
            _fail(f"{text} has a splitting field ramified outside {{2, 3}}", {"row": label})
        parsed.append((label, g, text, shadow_of, self_shadow))
    if len(parsed) != field_data.EXPECTED_CLASS_COUNT:
        _fail(f"Expected {field_data.EXPECTED_CLASS_COUNT} rows, got {len(parsed)}", certificate)
    logger.debug(f"{len(parsed)} special polynomials verified")

    # --- 3. Pairwise non-equivalence ---
    for (l1, g1, *_), (l2, g2, *_) in combinations(parsed, 2):
        witness = are_equivalent(g1, g2)
        if witness is not None:
            _fail(f"{l1} and {l2} are equivalent", {"rows": (l1, l2), "map": str(witness[0])})
    certificate["pairs_checked"] = len(parsed) * (len(parsed) - 1) // 2

    # --- 4. Shadow pairing ---
    polynomials = {label: g for label, g, *_ in parsed}
    for label, g, _, shadow_of, self_shadow in parsed:
        if shadow_of is not None and are_equivalent(hessian_shadow(polynomials[shadow_of]), g) is None:
            _fail(f"{label} is not equivalent to the shadow of {shadow_of}", {"row": label})
        if self_shadow and are_equivalent(hessian_shadow(g), g) is None:
            _fail(f"{label} is not equivalent to its own shadow", {"row": label})
    certificate["shadow_pairs"] = sum(1 for row in parsed if row[3])

    rows = tuple(
        ClassRow(
            label=label,
            polynomial=g,
            text=text,
            shadow_of=shadow_of,
            self_shadow=self_shadow,
            scalar_classes=tuple(symmetry_scalar_classes(g)),
        )
        for label, g, text, shadow_of, self_shadow in parsed
    )
    logger.info(f"Classification verified: {len(rows)} special polynomials")
    return ClassificationTable(rows=rows, certificate=certificate)


# --- Twists x^4 = a g(y) ---


def twist_parameters() -> list[tuple[int, int, int]]:
    """(sign key, m, n) for a = +-2^m 3^n in lexicographic order; sign key 0 is +."""
    top = config.TWIST_EXPONENT_MAX
    return [(s, m, n) for s in (0, 1) for m in range(top + 1) for n in range(top + 1)]


def twist_value(key: tuple[int, int, int]) -> Fraction:
    sign, m, n = key
    return Fraction((-1) ** sign * 2**m * 3**n)


def _same_twist_class(a1: Fraction, a2: Fraction, scalars) -> bool:
    return any(nth_power_free_part(a1 / (a2 * s), 4)[0] == 1 for s in scalars)


def twist_representatives(row: ClassRow) -> list[Fraction]:
    """The least a in each class modulo fourth powers times the symmetry scalars."""
    chosen: list[Fraction] = []
    for key in twist_parameters():
        a = twist_value(key)
        if not any(_same_twist_class(a, b, row.scalar_classes) for b in chosen):
            chosen.append(a)
    return chosen


def special_twist(row: ClassRow, a) -> SpecialShort:
    """x^4 = a g(y)."""
    return SpecialShort(1, row.polynomial.scale(a))


def special_twist_families(table: ClassificationTable | None = None):
    """(row, a, model) for every twist, in table order."""
    table = classify_special_good_outside_23() if table is None else table
    return [(row, a, special_twist(row, a)) for row in table for a in twist_representatives(row)]


def enumerate_special_twists_23(table: ClassificationTable | None = None) -> list[SpecialShort]:
    families = special_twist_families(table)
    if len(families) != field_data.EXPECTED_TWIST_COUNT:
        _fail(
            f"Enumerated {len(families)} special twists, expected {field_data.EXPECTED_TWIST_COUNT}",
            {"count": len(families), "expected": field_data.EXPECTED_TWIST_COUNT},
        )
    return [model for _, _, model in families]


def standard_special_curve() -> SpecialShort:
    """x^4 = y^3 + 1, isomorphic to y^3 = x^4 - 1."""
    return SpecialShort(1, BinaryQuartic((0, 1, 0, 0, 1)))
