"""Application-wide constants for the joint normality lab."""

import math

# Service identification
SERVICE_NAME = "joint-normality-lab"

# Report schema
REPORT_SCHEMA_VERSION = "1.0"

# Closed-form entropies and growth rates
GAUSS_ENTROPY = math.pi**2 / (6 * math.log(2))
LEVY_CONSTANT = math.pi**2 / (12 * math.log(2))
GOLDEN_RATIO = (1 + math.sqrt(5)) / 2

# Provenance strings embedded in reports next to the values above
GAUSS_ENTROPY_FORMULA = "pi^2 / (6 log 2)"
LEVY_CONSTANT_FORMULA = "pi^2 / (12 log 2)"
TIMES_B_ENTROPY_FORMULA = "log b"
BETA_ENTROPY_FORMULA = "log beta"
ROTATION_ENTROPY_FORMULA = "0"
GAUSS_MEASURE_FORMULA = "log((1 + b) / (1 + a)) / log 2"

# Entropy comparison
ENTROPY_COLLISION_TOLERANCE = 1e-9

# Orbit sampling
SEED_BITS = 64

# Running averages
CHECKPOINT_COUNT = 10

# Exponential fits
NOISE_FLOOR_FACTOR = 10.0
MINIMUM_FIT_POINTS = 4

# Process exit codes
EXIT_CODE_PASS = 0
EXIT_CODE_ERROR = 1
EXIT_CODE_GATE_FAILURE = 2
