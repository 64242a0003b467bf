from os import getenv
from dotenv import load_dotenv

load_dotenv()

# File Paths
LOG_FILE = getenv("PICARD_LOG_FILE", "picard.log")
LOG_LEVEL = getenv("PICARD_LOG_LEVEL", "INFO")
DATABASE_FILE = getenv("PICARD_DATABASE_FILE", "curves.pdb")

# Arithmetic
SUNIT_EXPONENT_BOUND = int(getenv("PICARD_SUNIT_BOUND", "10"))
TRIAL_DIVISION_BOUND = int(getenv("PICARD_TRIAL_DIVISION_BOUND", "10000"))

# Ternary forms
MACAULAY_RETRIES = 8
MACAULAY_SEED = 3041
DISCRIMINANT_SCALE = 2**14

# Minimization
MINIMIZE_DEPTH = int(getenv("PICARD_MINIMIZE_DEPTH", "3"))
SHIFT_DEPTH = int(getenv("PICARD_SHIFT_DEPTH", "1"))
MAX_CANDIDATES_PER_STEP = 20000
MAX_MINIMIZE_STEPS = 64

# Binary form equivalence
BRUTE_FORCE_HEIGHT = int(getenv("PICARD_BRUTE_FORCE_HEIGHT", "3"))
FROBENIUS_TEST_PRIMES = 12

# Special curves
SPECIAL_PRIMES = (2, 3)
TWIST_EXPONENT_MAX = 3
CONIC_WITNESS_BOUND = 50

# Database
RECORD_FIELDS = [
    "label",
    "kind",
    "reduced_model",
    "minimal_short",
    "minimal_long",
    "weighted_point",
    "qbar_class",
    "twist_key",
    "disc_factorization",
    "bad_primes",
    "conductor_exponents",
    "conductor_within_disc",
    "reduction_type_at_3",
    "provenance",
]
INDEX_COLUMNS = ["label", "kind", "q_key", "twist_key", "bad_primes"]

# Conductor bounds
SPECIAL_CONDUCTOR_FLOOR = 2**6 * 3**6
