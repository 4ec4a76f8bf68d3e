"""
Shared constants for the ConeLab toolkit
"""

# Exit codes for the command-line surface
EXIT_SUCCESS = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE_ERROR = 2

# Slice verdicts
VERDICT_OUTSIDE_P = "OUTSIDE_P"
VERDICT_WRONG_COMPONENT = "WRONG_COMPONENT"
VERDICT_NON_SYMPLECTIC = "NON_SYMPLECTIC"
VERDICT_SYMPLECTIC_NOT_KAHLER = "SYMPLECTIC_NOT_KAHLER"
VERDICT_KAHLER = "KAHLER"
VERDICT_ON_WALL = "ON_WALL"

SLICE_VERDICTS = [
    VERDICT_OUTSIDE_P,
    VERDICT_WRONG_COMPONENT,
    VERDICT_NON_SYMPLECTIC,
    VERDICT_SYMPLECTIC_NOT_KAHLER,
    VERDICT_KAHLER,
    VERDICT_ON_WALL,
]

# CSV layout for cone slices
SLICE_CSV_HEADER = ["s", "t", "square", "verdict"]

# Built-in model registry names
MODEL_RULED = "ruled"
MODEL_BURNIAT = "burniat"
MODEL_BIDISK = "bidisk"
MODEL_BALL_QUOTIENT = "ball-quotient"
MODEL_RATIONAL_PREFIX = "rational:"

BUILTIN_MODEL_NAMES = [MODEL_RULED, MODEL_BURNIAT, MODEL_BIDISK, MODEL_BALL_QUOTIENT]

# Rational blow-ups of CP^2 beyond eight points have infinitely many exceptional classes
MAX_RATIONAL_BLOWUPS = 8

# Gram data of the one-point blow-up of a minimal ruled surface over an elliptic curve,
# basis (e, f, k)
RULED_BASIS = ["e", "f", "k"]
RULED_GRAM = [
    [-1, 0, -1],
    [0, 0, -2],
    [-1, -2, -1],
]

# Rank-2 shadow span{k, c} of a Burniat surface
BURNIAT_BASIS = ["k", "c"]
BURNIAT_GRAM = [
    [6, 1],
    [1, -1],
]

# Surface with bidisk universal cover and K^2 = 8
BIDISK_BASIS = ["w1", "w2"]
BIDISK_GRAM = [
    [0, 4],
    [4, 0],
]

# Holomorphic Euler characteristic of a minimal surface of general type with p_g = 0
CHI_O_GENERAL_TYPE = 1

# Default precision (bits) for rational lower bounds of quadratic roots
DEFAULT_ROOT_PRECISION_BITS = 32
