"""
Central constants for orbitforge.

Update limits, field choices and other defaults here.
"""

# Orbit enumeration guard (number of points)
DEFAULT_ORBIT_LIMIT = 2 ** 22
LIMIT_ENV_VAR = "ORBITFORGE_LIMIT"

# Finite fields used by the orbit lab
ALLOWED_PRIMES = (2, 3, 5)
DEFAULT_PRIME = 2

# Largest n a survey may run for a given prime
SURVEY_MAX_N = {2: 6, 3: 5, 5: 4}

# Randomized invariance check (random group elements)
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 20

# Output
OUTPUT_FORMATS = ["text", "json", "unicode"]
DEFAULT_OUTPUT_FORMAT = "text"

# Diagram symbols per root class: (unicode, ascii)
DIAGRAM_SYMBOLS = {
    "S": ("⊗", "X"),
    "C+": ("+", "+"),
    "C-": ("−", "-"),
    "M": ("•", "*"),
}

# Paths
CONFIG_DIR = ".orbitforge"
REPORTS_DIR = ".orbitforge/reports"

FINITE_FIELD_CAVEAT = (
    "caveat: the theorems are stated in characteristic zero; finite-field "
    "checks are set-theoretic evidence, not proofs"
)
