"""
The curve database: an ordered list of records plus a pandas index over the
Q-isomorphism key, the twist key and the bad primes. On disk it is one JSON
record per line.
"""

import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import pandas as pd
from loguru import logger
from pydantic import ValidationError

import config
from arith.rationals import factor_rational, parse_rational
from curves.conversions import as_special_short
from curves.curve import PicardCurve
from curves.curve_parser import parse_curve
from database.curve_record import CurveRecord
from database.record_builder import build_record, q_key_of
from errors import ComputationError, DegenerateFormError, MalformedInputError
from forms.binary_quartic import BinaryQuartic
from forms.equivalence import are_equivalent
from invariants.isomorphism import is_isomorphic_special, weighted_point
from invariants.weighted_point import WeightedPoint, normalize
from reduction.conductor import validate_conductor_exponents
from reduction.good_reduction import special_pair


@dataclass(frozen=True)
class CurveInput:
    """A curve to store, with the data that cannot be derived from its equation."""

    curve: PicardCurve
    conductor_exponents: dict[int, int | None] | None = None
    reduction_type_at_3: str | None = None
    family: str | None = None


class CurveDatabase:
    """Records in label order plus an index DataFrame with config.INDEX_COLUMNS."""

    def __init__(self, records: list[CurveRecord] | None = None, rejected: list[str] | None = None):
        self.records = list(records or [])
        self.rejected = list(rejected or [])
        self.index = self._build_index()
        self._curves: dict[str, PicardCurve] = {}

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def _handle_exception(self, action: str, target: str, e: Exception):
        """Centralized exception handling for logging and raising errors."""
        logger.error(f"Failed to {action} '{target}': {e}")
        raise

    def _build_index(self) -> pd.DataFrame:
        rows = [
            {
                "label": r.label,
                "kind": r.kind,
                "q_key": q_key_of(r),
                "twist_key": r.twist_key,
                "bad_primes": tuple(r.bad_primes),
            }
            for r in self.records
        ]
        return pd.DataFrame(rows, columns=config.INDEX_COLUMNS)

    def by_label(self, label: str) -> CurveRecord:
        return next(r for r in self.records if r.label == label)

    def curve_of(self, record: CurveRecord) -> PicardCurve:
        """The minimal short model of a record, parsed back into a curve."""
        if record.label not in self._curves:
            self._curves[record.label] = parse_curve(record.minimal_short, record.label)
        return self._curves[record.label]

    def _select(self, mask) -> list[CurveRecord]:
        labels = set(self.index.loc[mask, "label"])
        return [r for r in self.records if r.label in labels]

    # --- Persistence ---

    def save(self, path: str | Path) -> None:
        path = Path(path)
        try:
            with path.open("w", encoding="utf-8") as handle:
                for record in self.records:
                    handle.write(record.to_line() + "\n")
            logger.info(f"Wrote {len(self.records)} records to '{path}'")
        except OSError as e:
            self._handle_exception("write database", str(path), e)

    @classmethod
    def load(cls, path: str | Path) -> "CurveDatabase":
        path = Path(path)
        records = []
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as e:
            logger.error(f"Failed to read database '{path}': {e}")
            raise
        for number, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                records.append(CurveRecord.from_line(line))
            except ValidationError as e:
                logger.error(f"Malformed record on line {number} of '{path}'")
                raise MalformedInputError(f"{path}:{number}: {e}") from e
        logger.info(f"Loaded {len(records)} records from '{path}'")
        return cls(records)

    # --- Queries ---

    def query_curve(self, curve: PicardCurve) -> list[CurveRecord]:
        """Records Q-isomorphic to the curve."""
        if curve.is_special:
            return [
                r
                for r in self.special_family(curve)
                if is_isomorphic_special(curve, self.curve_of(r))
            ]
        key = "Q:" + ",".join(normalize(weighted_point(curve.model)).as_strings())
        return self._select(self.index["q_key"] == key)

    def query_weighted_point(self, point: WeightedPoint) -> list[CurveRecord]:
        if point.is_special:
            raise MalformedInputError("Special curves are queried by curve, not by weighted point.")
        key = "Q:" + ",".join(normalize(point).as_strings())
        return self._select(self.index["q_key"] == key)

    def query_qbar_class(self, qbar: tuple) -> list[CurveRecord]:
        key = "qbar:" + ",".join(str(Fraction(c)) for c in qbar)
        return self._select(self.index["twist_key"] == key)

    def special_family(self, curve: PicardCurve) -> list[CurveRecord]:
        """Special records a x^4 = g'(y) whose g' is equivalent to the g of the curve."""
        _, target = special_pair(as_special_short(curve.model)[0])
        special = self.index[self.index["kind"] == "special"]
        for twist_key in special["twist_key"].unique():
            family = self._select(self.index["twist_key"] == twist_key)
            if are_equivalent(special_polynomial(family[0]), target) is not None:
                return family
        return []

    def query_twists(self, curve: PicardCurve) -> list[CurveRecord]:
        """Every stored twist of the curve."""
        if curve.is_special:
            return self.special_family(curve)
        return self.query_qbar_class(weighted_point(curve.model).qbar_class())

    def query_bad_primes(self, primes) -> list[CurveRecord]:
        allowed = set(primes)
        return self._select(self.index["bad_primes"].map(lambda bad: set(bad) <= allowed))


def special_polynomial(record: CurveRecord) -> BinaryQuartic:
    """The monic g of the reduced special model a x^4 = g(y)."""
    return BinaryQuartic(tuple(parse_rational(c) for c in record.reduced_model[1:]))


def db_query(db: CurveDatabase, key) -> list[CurveRecord]:
    """Dispatches on the key: curve, weighted point, Qbar class triple or set of primes."""
    match key:
        case PicardCurve():
            return db.query_curve(key)
        case WeightedPoint():
            return db.query_weighted_point(key)
        case tuple() if len(key) == 3:
            return db.query_qbar_class(key)
        case set() | frozenset():
            if not all(isinstance(p, int) and p > 1 for p in key):
                raise MalformedInputError(f"Not a set of primes: {sorted(key)}")
            return db.query_bad_primes(key)
        case _:
            raise MalformedInputError(f"Unsupported query key {key!r}")


# --- Building ---


def _as_input(item) -> CurveInput:
    return item if isinstance(item, CurveInput) else CurveInput(curve=item)


def _record_or_error(item: CurveInput) -> CurveRecord | str:
    try:
        return build_record(
            item.curve, item.conductor_exponents, item.reduction_type_at_3, item.family
        )
    except (DegenerateFormError, ComputationError) as e:
        return f"{item.curve.equation()}: {e}"


def _minimal_discriminant(record: CurveRecord) -> int:
    return math.prod(p**e for p, e in record.disc_factorization)


def _sort_key(record: CurveRecord) -> tuple:
    return (_minimal_discriminant(record), record.kind, q_key_of(record), record.minimal_short)


def _deduplicate(records: list[CurveRecord], db: CurveDatabase) -> list[CurveRecord]:
    kept: list[CurveRecord] = []
    seen_keys: set[str] = set()
    special_by_bad: dict[tuple, list[CurveRecord]] = defaultdict(list)
    for record in records:
        if record.kind == "nonspecial":
            key = q_key_of(record)
            if key in seen_keys:
                logger.debug(f"Dropping duplicate of {key}: {record.provenance}")
                continue
            seen_keys.add(key)
        else:
            bucket = special_by_bad[tuple(record.bad_primes)]
            curve = db.curve_of(record)
            if any(is_isomorphic_special(curve, db.curve_of(other)) for other in bucket):
                logger.debug(f"Dropping duplicate special curve {record.minimal_short}")
                continue
            bucket.append(record)
        kept.append(record)
    return kept


def _merge_special_families(records: list[CurveRecord]) -> list[CurveRecord]:
    """Gives equivalent polynomials g one shared twist key (the first in sort order)."""
    representatives: list[tuple[str, BinaryQuartic]] = []
    renamed = {}
    for record in records:
        if record.kind != "special" or record.twist_key in renamed:
            continue
        g = special_polynomial(record)
        match = next((key for key, h in representatives if are_equivalent(h, g) is not None), None)
        renamed[record.twist_key] = match or record.twist_key
        if match is None:
            representatives.append((record.twist_key, g))
    return [
        r.model_copy(update={"twist_key": renamed[r.twist_key]}) if r.kind == "special" else r
        for r in records
    ]


def _assign_labels(records: list[CurveRecord]) -> list[CurveRecord]:
    counters: dict[str, int] = defaultdict(int)
    labelled = []
    for record in records:
        exponents = "_".join(f"{p}e{e}" for p, e in record.disc_factorization)
        prefix = f"{_minimal_discriminant(record)}.{exponents}"
        counters[prefix] += 1
        labelled.append(record.model_copy(update={"label": f"{prefix}.{counters[prefix]}"}))
    return labelled


def db_build(curves, workers: int = 1) -> CurveDatabase:
    """
    Builds records for the curves (PicardCurve or CurveInput), keeps one record
    per Q-isomorphism class and labels them deterministically.
    """
    items = [_as_input(item) for item in curves]
    # --- 1. Records ---
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_record_or_error, items))
    else:
        results = [_record_or_error(item) for item in items]
    rejected = [r for r in results if isinstance(r, str)]
    for message in rejected:
        logger.error(f"Rejected input curve {message}")
    records = sorted((r for r in results if isinstance(r, CurveRecord)), key=_sort_key)

    # --- 2. Deduplication ---
    # records carry no label yet, so parsed curves are cached under a temporary one
    scratch = CurveDatabase()
    staged = [r.model_copy(update={"label": f"#{i}"}) for i, r in enumerate(records)]
    kept = _deduplicate(staged, scratch)
    kept = _merge_special_families(kept)

    # --- 3. Labels ---
    labelled = _assign_labels(sorted(kept, key=_sort_key))
    logger.info(
        f"Built database: {len(labelled)} records from {len(items)} curves, {len(rejected)} rejected"
    )
    return CurveDatabase(labelled, rejected)


# --- Validation ---


def _check_record(record: CurveRecord, db: CurveDatabase) -> list[str]:
    problems = []
    try:
        curve = db.curve_of(record)
    except (MalformedInputError, DegenerateFormError) as e:
        return [f"{record.label}: stored model does not parse: {e}"]
    disc = parse_curve(record.minimal_long).discriminant()
    actual = [(p, e) for p, e in factor_rational(disc) if e > 0]
    if actual != [tuple(pe) for pe in record.disc_factorization]:
        problems.append(f"{record.label}: disc_factorization {record.disc_factorization} != {actual}")
    if record.bad_primes != [p for p, _ in record.disc_factorization]:
        problems.append(f"{record.label}: bad_primes inconsistent with disc_factorization")
    if record.kind == "nonspecial":
        point = normalize(weighted_point(curve.model)).as_strings()
        if point != record.weighted_point:
            problems.append(f"{record.label}: weighted point {record.weighted_point} != {point}")
    problems.extend(f"{record.label}: {v}" for v in validate_conductor_exponents(record))
    for p, within in (record.with_conductor_check().conductor_within_disc or {}).items():
        if not within:
            problems.append(f"{record.label}: f_{p} exceeds v_{p} of the minimal discriminant")
    return problems


def validate(db: CurveDatabase) -> list[str]:
    """Every inconsistency found in the database; an empty list means it is valid."""
    problems = []
    labels = [r.label for r in db.records]
    if len(set(labels)) != len(labels):
        problems.append("Duplicate labels")
    nonspecial_keys = [q_key_of(r) for r in db.records if r.kind == "nonspecial"]
    if len(set(nonspecial_keys)) != len(nonspecial_keys):
        problems.append("Two nonspecial records share a Q-isomorphism key")
    if not db.index.equals(db._build_index()):
        problems.append("Index out of date")
    for record in db.records:
        problems.extend(_check_record(record, db))
    level = "WARNING" if problems else "INFO"
    logger.log(level, f"Validated {len(db)} records: {len(problems)} problems")
    return problems
