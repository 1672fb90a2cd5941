import os


# numerical
TOLERANCE = 1e-12
DEFAULT_EPSILON = 0.25
MAX_STEPS = int(os.getenv("GIBBS_LAB_MAX_STEPS", 10_000_000))

# models
DEFAULT_PRIOR_FACTOR = 100  # M = 100 * n
NEGLIGIBLE_BRIDGE_MASS = 1e-6
MODIFIED_BRIDGE_MASS = 0.1
MAX_ENUMERATED_VARIABLES = 6  # memorize-and-repeat, soft dependencies

# conductance
EXACT_CONDUCTANCE_LIMIT = 24

# harness
ENUMERATION_LIMIT = 50_000
WORKERS = int(os.getenv("GIBBS_LAB_WORKERS", os.cpu_count() or 1))
CSV_SIGNIFICANT_DIGITS = 12
FIG3B_RECORD_EVERY = 100
FIG3B_ITERATIONS = 1_000_000
FUZZ_MODELS = 50
FUZZ_SEED = 42

# http
API_STATE_LIMIT = 256
API_MAX_STEPS = 10_000

LOG_LEVEL = os.getenv("GIBBS_LAB_LOG_LEVEL", "INFO")
