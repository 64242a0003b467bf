"""Command-line handlers: one method per subcommand, each returning an exit code."""

from argparse import Namespace
from pathlib import Path

from loguru import logger

import config
from arith.hilbert import conic_is_split, find_conic_point, local_symbols
from arith.rationals import factor_rational, format_rational, parse_rational
from arith.sunits import solve_sunit_equation
from classification.special_class import (
    classify_special_good_outside_23,
    special_twist_families,
)
from curves.curve import PicardCurve
from curves.curve_parser import parse_curve
from curves.minimization import global_minimal_model, minimize_with_report, traceless_minimum
from curves.parsers.ternary_parser import TernaryParser
from database.branch_curves import enumerate_rational_branch_curves
from database.curve_database import CurveDatabase, CurveInput, db_build, db_query, validate
from database.curve_record import CurveRecord
from database.record_builder import build_record
from errors import MalformedInputError, VerificationError
from forms.binary_quartic import (
    BinaryQuartic,
    MobiusMap,
    disc_binary,
    hessian_shadow,
    invariant_I,
    invariant_J,
    reduce_quartic,
)
from forms.equivalence import are_equivalent, rational_symmetries
from forms.macaulay import disc_ternary
from invariants.isomorphism import weighted_point
from invariants.twists import twists_with_good_reduction_outside
from invariants.weighted_point import WeightedPoint, normalize
from reduction.conductor import conductor_from_exponents, validate_conductor_exponents
from reduction.good_reduction import bad_primes, reduction_verdict

OK, VIOLATIONS, MALFORMED = 0, 1, 2


def parse_primes(text: str) -> list[int]:
    try:
        primes = sorted({int(p) for p in text.split(",") if p.strip()})
    except ValueError as e:
        raise MalformedInputError(f"Not a comma-separated list of primes: {text!r}") from e
    if not primes or any(p < 2 for p in primes):
        raise MalformedInputError(f"Not a comma-separated list of primes: {text!r}")
    return primes


def parse_exponents(text: str) -> dict[int, int | None]:
    """'2:6,3:?' -> {2: 6, 3: None}."""
    exponents = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        prime, _, value = item.partition(":")
        try:
            exponents[int(prime)] = None if value in ("", "?") else int(value)
        except ValueError as e:
            raise MalformedInputError(f"Malformed conductor exponent {item!r}") from e
    return exponents


def parse_input_line(line: str, number: int) -> CurveInput | None:
    """'<curve> ; f=2:6,3:6 ; type3=loops ; family=g01' with everything after the curve optional."""
    text = line.split("#", 1)[0].strip()
    if not text:
        return None
    literal, *options = (part.strip() for part in text.split(";"))
    fields = {}
    for option in options:
        key, sep, value = option.partition("=")
        if not sep or key.strip() not in ("f", "type3", "family"):
            raise MalformedInputError(f"line {number}: unknown option {option!r}")
        fields[key.strip()] = value.strip()
    return CurveInput(
        curve=parse_curve(literal, f"input:{number}"),
        conductor_exponents=parse_exponents(fields["f"]) if "f" in fields else None,
        reduction_type_at_3=fields.get("type3"),
        family=fields.get("family"),
    )


def _mobius(m: MobiusMap) -> str:
    entries = [format_rational(e) for e in (m.alpha, m.beta, m.gamma, m.delta)]
    return f"[[{entries[0]}, {entries[1]}], [{entries[2]}, {entries[3]}]]"


def _factorization(value) -> str:
    factors = factor_rational(value, config.TRIAL_DIVISION_BOUND)
    sign = "-" if value < 0 else ""
    return sign + " * ".join(f"{p}^{e}" for p, e in factors) if factors else f"{sign}1"


def _conductor_violations(record: CurveRecord) -> list[str]:
    violations = validate_conductor_exponents(record)
    violations += [
        f"f_{p} exceeds v_{p} of the minimal discriminant"
        for p, within in (record.conductor_within_disc or {}).items()
        if not within
    ]
    return violations


class CommandHandlers:
    """
    Collection of command handlers. Results go to `out`, diagnostics to the logger.
    """

    def __init__(self, out=print):
        self.out = out

    def _records(self, records: list[CurveRecord]) -> None:
        for record in records:
            self.out(f"{record.label}\t{record.kind}\t{record.minimal_short}\t{record.bad_primes}")
        self.out(f"{len(records)} records")

    # --- arith ---

    def sunit(self, args: Namespace) -> int:
        solutions = solve_sunit_equation(parse_primes(args.primes), args.bound)
        for lam in solutions:
            self.out(f"{format_rational(lam)} + {format_rational(1 - lam)} = 1")
        self.out(f"{len(solutions)} solutions up to the anharmonic action")
        return OK

    def hilbert(self, args: Namespace) -> int:
        a, b = parse_rational(args.a), parse_rational(args.b)
        for place, symbol in local_symbols(a, b).items():
            self.out(f"({format_rational(a)}, {format_rational(b)})_{place} = {symbol}")
        if conic_is_split(a, b):
            if a.denominator == 1 and b.denominator == 1:
                point = find_conic_point(int(a), int(b), config.CONIC_WITNESS_BOUND)
                self.out(f"split, witness {point}")
            else:
                self.out("split")
        else:
            self.out("obstructed")
        return OK

    # --- binary quartics ---

    def quartic(self, args: Namespace) -> int:
        g = BinaryQuartic.parse(args.polynomial)
        match args.action:
            case "reduce":
                if args.prime is None:
                    raise MalformedInputError("quartic reduce needs --prime")
                reduced, mobius = reduce_quartic(g, args.prime)
                self.out(f"{reduced}  via {_mobius(mobius)}")
            case "disc":
                self.out(f"I = {invariant_I(g)}, J = {invariant_J(g)}, disc = {disc_binary(g)}")
            case "shadow":
                self.out(str(hessian_shadow(g)))
            case "symmetries":
                for mobius, mu in rational_symmetries(g):
                    self.out(f"{_mobius(mobius)}  mu = {format_rational(mu)}")
            case "equiv":
                if args.other is None:
                    raise MalformedInputError("quartic equiv needs a second polynomial")
                witness = are_equivalent(g, BinaryQuartic.parse(args.other))
                if witness is None:
                    self.out("not equivalent")
                    return VIOLATIONS
                mobius, mu = witness
                self.out(f"equivalent via {_mobius(mobius)}  mu = {format_rational(mu)}")
        return OK

    # --- curves ---

    def disc(self, args: Namespace) -> int:
        if args.ternary:
            form, _ = TernaryParser().parse(args.ternary)
            value = disc_ternary(form)
            self.out(f"disc = {value} = {_factorization(value)}" if value else "disc = 0")
            return OK
        if args.curve is None:
            raise MalformedInputError("disc needs a curve or --ternary")
        curve = parse_curve(args.curve)
        closed = curve.discriminant()
        self.out(f"{curve.equation()}")
        self.out(f"disc = {closed} = {_factorization(closed)}")
        if args.macaulay:
            resultant = disc_ternary(curve.ternary())
            self.out(f"Macaulay disc = {resultant}")
            if resultant != closed:
                logger.error(f"Closed form {closed} differs from Macaulay {resultant}")
                return VIOLATIONS
        return OK

    def minimize(self, args: Namespace) -> int:
        curve = parse_curve(args.curve)
        if args.prime is None:
            minimal = global_minimal_model(curve, args.depth)
            self.out(minimal.curve.equation())
            self.out(f"minimal disc = {minimal.factorization}")
            for report in minimal.reports:
                self.out(report.model_dump_json())
            return OK
        if args.traceless:
            model = traceless_minimum(curve, args.prime)
            self.out(f"{model.equation()}  v_{args.prime} = {model.disc_valuation(args.prime)}")
            return OK
        minimal, report = minimize_with_report(curve, args.prime, args.depth)
        self.out(minimal.equation())
        self.out(report.model_dump_json())
        return OK

    def goodred(self, args: Namespace) -> int:
        curve = parse_curve(args.curve)
        primes = parse_primes(args.primes) if args.primes else []
        if args.prime is not None:
            primes = sorted({*primes, args.prime})
        for p in primes:
            self.out(reduction_verdict(curve, p).model_dump_json())
        if not primes:
            self.out(f"bad primes: {bad_primes(curve)}")
        return OK

    def validate(self, args: Namespace) -> int:
        if args.db:
            return self._validate_database(CurveDatabase.load(args.db))
        if args.curve is None or args.exponents is None:
            raise MalformedInputError("validate needs --db, or a curve with --exponents")
        record = build_record(
            parse_curve(args.curve),
            conductor_exponents=parse_exponents(args.exponents),
            reduction_type_at_3=args.type3,
        )
        violations = _conductor_violations(record)
        for violation in violations:
            self.out(violation)
        if violations:
            logger.error(f"{len(violations)} conductor violations for {args.curve}")
            return VIOLATIONS
        self.out(f"N = {conductor_from_exponents(record.known_conductor_exponents)} passes")
        return OK

    def _validate_database(self, db: CurveDatabase) -> int:
        checked = failed = 0
        for record in db:
            if record.conductor_exponents is None:
                continue
            checked += 1
            violations = _conductor_violations(record.with_conductor_check())
            failed += bool(violations)
            for violation in violations:
                self.out(f"{record.label}: {violation}")
        self.out(f"{checked} records with conductor data, {failed} with violations")
        return VIOLATIONS if failed else OK

    def invariants(self, args: Namespace) -> int:
        curve = parse_curve(args.curve)
        self.out(f"kind: {curve.kind}")
        if curve.is_special:
            return OK
        point = weighted_point(curve.model)
        self.out(f"weighted point: {normalize(point).as_strings()}")
        self.out(f"qbar class: {[format_rational(c) for c in point.qbar_class()]}")
        self.out(f"automorphisms: {point.automorphism_type().value}")
        return OK

    def twists(self, args: Namespace) -> int:
        curve = parse_curve(args.curve)
        found = twists_with_good_reduction_outside(curve.model, parse_primes(args.primes))
        for model in found:
            self.out(model.equation())
        self.out(f"{len(found)} twists")
        return OK

    # --- special curves ---

    def special(self, args: Namespace) -> int:
        if args.action == "shadow" and args.poly:
            self.out(str(hessian_shadow(BinaryQuartic.parse(args.poly))))
            return OK
        try:
            table = classify_special_good_outside_23()
        except VerificationError as e:
            logger.error(f"Classification failed: {e} {e.certificate}")
            return VIOLATIONS
        match args.action:
            case "classify":
                for row in table:
                    shadow = f"  shadow of {row.shadow_of}" if row.shadow_of else ""
                    self.out(f"{row.label}\t{row.text}{shadow}")
                self.out(f"{len(table)} classes, certificate {table.certificate}")
            case "twists":
                families = special_twist_families(table)
                for row, a, model in families:
                    self.out(f"{row.label}\ta = {format_rational(a)}\t{model.equation()}")
                self.out(f"{len(families)} curves")
            case "shadow":
                for first, second in table.shadow_pairs():
                    self.out(f"{first} <-> {second}")
        return OK

    # --- database ---

    def _db_inputs(self, args: Namespace) -> list:
        inputs: list = []
        if args.input:
            lines = Path(args.input).read_text(encoding="utf-8").splitlines()
            for number, line in enumerate(lines, start=1):
                item = parse_input_line(line, number)
                if item is not None:
                    inputs.append(item)
        if args.special_23:
            for row, a, model in special_twist_families():
                curve = PicardCurve(model, f"special:{row.label}:a={format_rational(a)}")
                inputs.append(CurveInput(curve=curve, family=row.label))
        if args.branch:
            for model in enumerate_rational_branch_curves(parse_primes(args.branch), args.bound):
                inputs.append(PicardCurve(model, f"branch:{args.branch}"))
        return inputs

    def db(self, args: Namespace) -> int:
        match args.action:
            case "build":
                db = db_build(self._db_inputs(args), workers=args.workers)
                db.save(args.out or config.DATABASE_FILE)
                self.out(f"{len(db)} records, {len(db.rejected)} rejected")
                return VIOLATIONS if db.rejected else OK
            case "query":
                db = CurveDatabase.load(args.db or config.DATABASE_FILE)
                if args.twists:
                    records = db.query_twists(parse_curve(args.twists))
                else:
                    records = db_query(db, self._query_key(args))
                self._records(records)
                return OK
            case "validate":
                db = CurveDatabase.load(args.db or config.DATABASE_FILE)
                problems = validate(db)
                for problem in problems:
                    self.out(problem)
                self.out(f"{len(db)} records, {len(problems)} problems")
                return VIOLATIONS if problems else OK
        return MALFORMED

    def _query_key(self, args: Namespace):
        if args.curve:
            return parse_curve(args.curve)
        if args.point:
            coordinates = [parse_rational(c) for c in args.point.split(",")]
            if len(coordinates) != 3:
                raise MalformedInputError(f"A weighted point has three coordinates: {args.point!r}")
            return WeightedPoint(*coordinates)
        if args.bad_primes:
            return set(parse_primes(args.bad_primes))
        raise MalformedInputError("db query needs --curve, --twists, --point or --bad-primes")
