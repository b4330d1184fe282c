"""Configuration constants for the streaming longest-path toolkit."""

import os

from dotenv import load_dotenv

load_dotenv()

# Environment Configuration
DEFAULT_SEED = int(os.environ.get("LONGPATH_SEED", "20240101"))
LOG_LEVEL = os.environ.get("LONGPATH_LOG_LEVEL", "INFO")
EXACT_BUDGET = int(os.environ.get("LONGPATH_EXACT_BUDGET", str(10**8)))
MULTIPLICITY_EXPONENT = int(os.environ.get("LONGPATH_MULTIPLICITY_EXPONENT", "2"))
WORKERS = int(os.environ.get("LONGPATH_WORKERS", "1"))

# Sampling Configuration
SAMPLE_CONSTANT = 10
CORE_VERIFY_RESTARTS = 10
DEFAULT_DELTA = 0.01
TURNSTILE_BANK_FACTOR = 4

# Sketch Configuration
FINGERPRINT_PRIME = (1 << 61) - 1
HASH_PRIME = (1 << 31) - 1
HASH_DEGREE = 4
RECOVERY_HASHES = 3
RECOVERY_SLACK = 1.5

# Exact Oracle Configuration
DP_VERTEX_LIMIT = 20
WARM_START_WALKS = 10
ENUMERATION_VERTEX_LIMIT = 14
REDUCTION_ENUMERATION_LIMIT = 20

# Hard Instance Configuration
DEFAULT_SUBDIVISION = 4
RS_SEARCH_VERTEX_LIMIT = 16
GOLOMB_DICKMAN = 0.62432998854

# File Formats
GRAPH_HEADER = "# graph"
STREAM_HEADER = "# stream"
MATCHING_MARKER = "# matching"
METADATA_FILE = "metadata.json"
STREAM_FILE = "stream.txt"
RS_FILE = "rs.txt"
WITNESS_FILE = "witness.txt"

# Seed derivation: spawn keys per component
SEED_STREAM_ORDER = 1
SEED_RESERVOIR = 2
SEED_L0_BANK = 3
SEED_SPARSE_RECOVERY = 4
SEED_PATHFINDER = 5
SEED_GENERATOR = 6
SEED_HARNESS = 7
SEED_GRAPH_FAMILY = 8
