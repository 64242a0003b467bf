from loguru import logger

from curves.conversions import model_from_ternary
from curves.curve import PicardCurve
from errors import DegenerateFormError, MalformedInputError

from .parsers.base_parser import BaseCurveParser
from .parsers.equation_parser import EquationParser
from .parsers.ternary_parser import TernaryParser


ALL_PARSERS = [
    EquationParser,
    TernaryParser,
]


def get_parser(text: str) -> BaseCurveParser | None:
    """
    Factory function that returns an instance of the parser matching the
    format of a curve literal.
    """
    for parser_class in ALL_PARSERS:
        parser = parser_class()
        if parser.can_parse(text):
            logger.debug(f"Selected '{parser_class.get_format_name()}' parser for {text!r}.")
            return parser

    logger.warning(f"No suitable parser found for literal: {text!r}.")
    return None


def parse_curve(text: str, provenance: str = "") -> PicardCurve:
    """Parses a curve literal into a Picard curve in Weierstrass shape."""
    parser = get_parser(text)
    if parser is None:
        raise MalformedInputError(f"Unrecognized curve literal: {text!r}")
    form, prefer = parser.parse(text)
    try:
        model = model_from_ternary(form, prefer=prefer)
    except DegenerateFormError as e:
        raise MalformedInputError(f"{text!r} is not a smooth Picard curve: {e}") from e
    return PicardCurve(model, provenance or text)
