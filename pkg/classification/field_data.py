"""
Number fields unramified outside {2, 3} that occur as fields of definition of
the roots of special polynomials. The lists are verified, not enumerated.
"""

# Fields with discriminant -3 modulo squares
QUADRATIC_FIELDS = ["x^2+x+1"]
CUBIC_FIELDS = ["x^3-2", "x^3-3", "x^3-6", "x^3-12"]
QUARTIC_FIELDS = [
    "x^4-6*x^2-3",
    "x^4-12*x^2-12",
    "x^4+6*x^2+8*x-3",
    "x^4-24*x^2+32*x-48",
    "x^4+12*x^2-8*x-12",
    "x^4-36*x^2+96*x-108",
    "x^4+12*x^2+64*x-12",
    "x^4+12*x^2-16*x-12",
]

# Pairs of quadratic fields whose discriminants multiply to -3 modulo squares,
# with the Hilbert symbol arguments (d1, d2) of the associated conic
BIQUADRATIC_PAIRS = [
    (("x^2+1", "x^2-3"), (-1, 3)),
    (("x^2-2", "x^2+6"), (2, -6)),
    (("x^2+2", "x^2-6"), (-2, 6)),
]

SINGLE_FIELD_COUNT = len(QUADRATIC_FIELDS) + len(CUBIC_FIELDS) + len(QUARTIC_FIELDS)

# Rows (g, g') with g' equivalent to the shadow of g; None marks a row whose
# polynomial is equivalent to its own shadow
SPECIAL_POLYNOMIAL_ROWS = [
    ("x^4+x", None),
    ("x^4+2*x", "x^3-2"),
    ("x^4+3*x", "x^3-3"),
    ("x^4+6*x", "x^3-6"),
    ("x^4+12*x", "x^3-12"),
    ("x^4-6*x^2-3", "x^4+6*x^2-3"),
    ("x^4-12*x^2-12", "x^4+12*x^2-12"),
    ("x^4+6*x^2+8*x-3", "x^4+4*x^3-6*x^2-4*x-7"),
    ("x^4-24*x^2+32*x-48", "x^4-4*x^3+24*x^2-16*x-32"),
    ("x^4+12*x^2-8*x-12", "x^4-2*x^3-12*x^2+4*x-14"),
    ("x^4-36*x^2+96*x-108", "x^4-8*x^3+36*x^2-48*x-12"),
    ("x^4+12*x^2+64*x-12", "x^4+16*x^3-12*x^2-32*x-140"),
    ("x^4+12*x^2-16*x-12", "x^4-4*x^3-12*x^2+8*x-20"),
    ("x^4-12*x^2+32*x-12", None),
]

EXPECTED_CLASS_COUNT = 26
EXPECTED_TWIST_COUNT = 800
