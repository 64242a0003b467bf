import random

import pytest

from curves.curve import PicardCurve
from curves.models import NonspecialShort, SpecialShort
from forms.binary_quartic import BinaryQuartic


@pytest.fixture
def rng():
    return random.Random(20240613)


@pytest.fixture
def standard_curve():
    """y^3 = x^4 - 1."""
    return PicardCurve(NonspecialShort(1, BinaryQuartic.of(1, 0, 0, 0, -1)), "fixture")


@pytest.fixture
def special_curve():
    """x^4 = y^3 + 1."""
    return PicardCurve(SpecialShort(1, BinaryQuartic.of(0, 1, 0, 0, 1)), "fixture")
