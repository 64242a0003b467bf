import argparse
import sys

from loguru import logger

import config
from cli.handlers import MALFORMED, VIOLATIONS, CommandHandlers
from errors import DegenerateFormError, MalformedInputError, PicardError, VerificationError

# flag destination -> positional alias kept for the older call style
ALIASES = {"primes_flag": "primes", "a_flag": "a", "b_flag": "b", "curve_flag": "curve"}


def _setup_logging():
    logger.remove()
    logger.add(sys.stderr, level=config.LOG_LEVEL)
    logger.add(config.LOG_FILE)


def _curve_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument(
        "curve", nargs="?", help="Equation such as 'y^3 = x^4 - 1' or a ternary form"
    )
    parser.add_argument(
        "--curve", dest="curve_flag", metavar="CURVE", help="Same as the positional curve"
    )
    if required:
        parser.set_defaults(needs=("curve",))


def _resolve_aliases(
    parser: argparse.ArgumentParser, args: argparse.Namespace
) -> argparse.Namespace:
    """Folds the positional aliases into their flags and enforces the required ones."""
    for flag, name in ALIASES.items():
        if hasattr(args, flag):
            value = getattr(args, flag)
            setattr(args, name, value if value is not None else getattr(args, name, None))
            delattr(args, flag)
    missing = [name for name in getattr(args, "needs", ()) if getattr(args, name, None) is None]
    if missing:
        parser.error(f"{args.command}: missing {', '.join(missing)}")
    return args


def build_parser(handlers: CommandHandlers) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="picard", description="Picard curves over Q: minimal models, invariants, twists."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    # --- Arithmetic ---
    sunit = commands.add_parser("sunit", help="Solve the S-unit equation l + m = 1")
    sunit.add_argument(
        "--primes", dest="primes_flag", metavar="PRIMES", help="Comma-separated primes, e.g. 2,3"
    )
    sunit.add_argument("primes", nargs="?", help="Same as --primes")
    sunit.add_argument("--bound", type=int, default=config.SUNIT_EXPONENT_BOUND)
    sunit.set_defaults(handler=handlers.sunit, needs=("primes",))

    hilbert = commands.add_parser("hilbert", help="Hilbert symbols of a x^2 + b y^2 = z^2")
    hilbert.add_argument("-a", dest="a_flag", metavar="A")
    hilbert.add_argument("-b", dest="b_flag", metavar="B")
    hilbert.add_argument("a", nargs="?", help="Same as -a")
    hilbert.add_argument("b", nargs="?", help="Same as -b")
    hilbert.set_defaults(handler=handlers.hilbert, needs=("a", "b"))

    quartic = commands.add_parser("quartic", help="Binary quartic operations")
    quartic.add_argument("action", choices=["reduce", "disc", "shadow", "symmetries", "equiv"])
    quartic.add_argument("polynomial", help="Univariate quartic, e.g. 'x^4+6*x^2-3'")
    quartic.add_argument("other", nargs="?", help="Second quartic for 'equiv'")
    quartic.add_argument("--prime", type=int)
    quartic.set_defaults(handler=handlers.quartic)

    # --- Curves ---
    disc = commands.add_parser("disc", help="Discriminant of a plane quartic")
    _curve_arguments(disc, required=False)
    disc.add_argument("--ternary", help="Any ternary quartic, e.g. 'y^3*z - x^4 + z^4'")
    disc.add_argument("--macaulay", action="store_true", help="Cross-check with the resultant")
    disc.set_defaults(handler=handlers.disc)

    minimize = commands.add_parser("minimize", help="Minimal discriminant model")
    _curve_arguments(minimize)
    minimize.add_argument("--prime", type=int, help="Minimize at one prime only")
    minimize.add_argument(
        "--depth", type=int, default=config.MINIMIZE_DEPTH, help="Lattice search depth"
    )
    minimize.add_argument("--traceless", action="store_true", help="Diagonal search only")
    minimize.set_defaults(handler=handlers.minimize)

    goodred = commands.add_parser("goodred", help="Good reduction test")
    _curve_arguments(goodred)
    goodred.add_argument("--primes", help="Verdicts at these primes, e.g. 2,3,5,7")
    goodred.add_argument("--prime", type=int, help="Verdict at one prime")
    goodred.set_defaults(handler=handlers.goodred)

    validate = commands.add_parser("validate", help="Check conductor exponents against the bounds")
    _curve_arguments(validate, required=False)
    validate.add_argument("--db", help="Validate every record of a database")
    validate.add_argument("--exponents", help="e.g. 2:6,3:6, for a single curve")
    validate.add_argument("--type3", choices=["potentially_good", "compact_type", "loops"])
    validate.set_defaults(handler=handlers.validate)

    invariants = commands.add_parser("invariants", help="Weighted point and twist class")
    _curve_arguments(invariants)
    invariants.set_defaults(handler=handlers.invariants)

    twists = commands.add_parser("twists", help="Twists with good reduction outside S")
    _curve_arguments(twists)
    twists.add_argument("--primes", default="2,3")
    twists.set_defaults(handler=handlers.twists)

    special = commands.add_parser("special", help="Special curves with good reduction outside 2, 3")
    special.add_argument("action", choices=["classify", "twists", "shadow"])
    special.add_argument("--poly", help="Quartic whose Hessian shadow to print, e.g. 'x^4+2*x'")
    special.set_defaults(handler=handlers.special)

    # --- Database ---
    db = commands.add_parser("db", help="Curve database")
    db.add_argument("action", choices=["build", "query", "validate"])
    db.add_argument("--in", dest="input", help="Curve list, one literal per line")
    db.add_argument("--out", help=f"Output file (default {config.DATABASE_FILE})")
    db.add_argument("--db", help=f"Database file (default {config.DATABASE_FILE})")
    db.add_argument("--special-23", action="store_true", help="Add the special twists")
    db.add_argument("--branch", help="Add rational-branch curves for these primes")
    db.add_argument("--bound", type=int, default=config.SUNIT_EXPONENT_BOUND)
    db.add_argument("--workers", type=int, default=1)
    db.add_argument("--curve", help="Query by Q-isomorphism class")
    db.add_argument("--twists", help="Query all twists of a curve")
    db.add_argument("--point", help="Query by weighted point c2,c3,c4")
    db.add_argument("--bad-primes", help="Query records with bad primes inside this set")
    db.set_defaults(handler=handlers.db)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Parses the command line and runs the selected handler."""
    _setup_logging()
    parser = build_parser(CommandHandlers())
    args = _resolve_aliases(parser, parser.parse_args(argv))
    try:
        return args.handler(args)
    except (MalformedInputError, DegenerateFormError, ValueError, FileNotFoundError) as e:
        logger.error(f"Malformed input: {e}")
        return MALFORMED
    except VerificationError as e:
        logger.error(f"Verification failed: {e} {e.certificate}")
        return VIOLATIONS
    except PicardError as e:
        logger.error(f"Computation failed: {e}")
        return VIOLATIONS
    except Exception:
        logger.exception(f"Unexpected failure in '{args.command}'")
        return VIOLATIONS


if __name__ == "__main__":
    sys.exit(main())
