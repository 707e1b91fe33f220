"""
Environment-driven defaults shared by the engines, the oracle and the CLI.
"""

from __future__ import annotations

import os
from pathlib import Path


DEFAULT_SEED = int(os.getenv("ARRANGEMENTS_SEED", "0"))
DEFAULT_WORKERS = int(os.getenv("ARRANGEMENTS_WORKERS", "1"))

# Largest n for which the Whitney numbers are computed by subset enumeration.
BRUTEFORCE_LIMIT = int(os.getenv("ARRANGEMENTS_BRUTEFORCE_LIMIT", "20"))

# Automorphism validation.
EXHAUSTIVE_LIMIT = int(os.getenv("ARRANGEMENTS_EXHAUSTIVE_LIMIT", "12"))
SAMPLED_SUBSETS = int(os.getenv("ARRANGEMENTS_SAMPLED_SUBSETS", "2000"))

# Group computations.
MINIMAL_IMAGE_BUDGET = int(os.getenv("ARRANGEMENTS_MINIMAL_IMAGE_BUDGET", "200000"))
ENUMERATION_LIMIT = int(os.getenv("ARRANGEMENTS_ENUMERATION_LIMIT", "1000000"))

OUTPUT_DIR = Path(os.getenv("ARRANGEMENTS_OUTPUT_DIR", "output"))
