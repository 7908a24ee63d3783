"""
Configuration file for the umbral estimator engine
Contains guard limits, cache sizes, output defaults and benchmark inputs
"""
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Guards
MAX_ORDER = int(os.getenv("UMBRAL_MAX_ORDER", "20"))  # covers k_18 and k_{9,9}
SET_PARTITION_LIMIT = int(os.getenv("UMBRAL_SET_PARTITION_LIMIT", "13"))  # B_13 ~ 2.7e7

# Oracle Settings
ORACLE_MAX_N = 8
ORACLE_MAX_DEGREE = 6

# Output Settings
OUTPUT_FORMATS = ("text", "latex", "json")
DEFAULT_FORMAT = os.getenv("UMBRAL_FORMAT", "text")
DEFAULT_THREADS = int(os.getenv("UMBRAL_THREADS", "1"))

# Caching
SUBDIVISION_CACHE_SIZE = int(os.getenv("UMBRAL_CACHE_SIZE", "4096"))

# Logging
LOG_FILE = os.getenv("UMBRAL_LOG_FILE", "")  # empty = stderr only

# Data Paths
DATA_DIR = os.getenv("UMBRAL_BENCH_DIR", "data")
BENCH_RESULTS_FILE = f"{DATA_DIR}/bench_results_latest.json"

# Benchmark Profiles
# Brackets are lists of univariate parts, polykays are lists of orders,
# multivariate polykays are lists of groups of exponent vectors.
BENCH_PROFILES = {
    "quick": [
        {"label": "k_8", "kind": "kstat", "args": 8},
    ],
    "table5": [
        {"label": "[1^5 2^3 3^2]", "kind": "augtops", "args": [1] * 5 + [2] * 3 + [3] * 2},
        {"label": "[1^6 2^3]", "kind": "augtops", "args": [1] * 6 + [2] * 3},
        {"label": "[2^10]", "kind": "augtops", "args": [2] * 10},
        {"label": "[1^5 2^7 3]", "kind": "augtops", "args": [1] * 5 + [2] * 7 + [3]},
        {"label": "[1^2 2^2 3^2 4^2]", "kind": "augtops", "args": [1, 1, 2, 2, 3, 3, 4, 4]},
    ],
    "table6": [
        {"label": "k_8", "kind": "kstat", "args": 8},
        {"label": "k_10", "kind": "kstat", "args": 10},
        {"label": "k_12", "kind": "kstat", "args": 12},
        {"label": "k_14", "kind": "kstat", "args": 14},
        {"label": "k_16", "kind": "kstat", "args": 16},
        {"label": "k_18", "kind": "kstat", "args": 18},
        {"label": "k_6,6", "kind": "polykay", "args": [6, 6]},
        {"label": "k_9,3", "kind": "polykay", "args": [9, 3]},
        {"label": "k_9,6", "kind": "polykay", "args": [9, 6]},
        {"label": "k_9,9", "kind": "polykay", "args": [9, 9]},
        {"label": "k_3,3 k_2,2", "kind": "mpolykay",
         "args": [[(1, 0)] * 3 + [(0, 1)] * 3, [(1, 0)] * 2 + [(0, 1)] * 2]},
        {"label": "k_3,3 k_3,3", "kind": "mpolykay",
         "args": [[(1, 0)] * 3 + [(0, 1)] * 3, [(1, 0)] * 3 + [(0, 1)] * 3]},
        {"label": "k_2,1,1 k_2,1,1", "kind": "mpolykay",
         "args": [[(1, 0, 0)] * 2 + [(0, 1, 0), (0, 0, 1)], [(1, 0, 0)] * 2 + [(0, 1, 0), (0, 0, 1)]]},
    ],
    "table7": [
        {"label": "[5^3 9 10][1 2 3 4 5]", "kind": "augprod",
         "args": [[5, 5, 5, 9, 10], [1, 2, 3, 4, 5]]},
        {"label": "[5^3 8 9 10][1 2 3 4 5]", "kind": "augprod",
         "args": [[5, 5, 5, 8, 9, 10], [1, 2, 3, 4, 5]]},
        {"label": "[6 7 8 9 10][1 2 3 4 5]", "kind": "augprod",
         "args": [[6, 7, 8, 9, 10], [1, 2, 3, 4, 5]]},
        {"label": "[6 7 8 9 10][1 2][3 4 5]", "kind": "augprod",
         "args": [[6, 7, 8, 9, 10], [1, 2], [3, 4, 5]]},
        {"label": "[6 7][8 9 10][1 2][3 4 5]", "kind": "augprod",
         "args": [[6, 7], [8, 9, 10], [1, 2], [3, 4, 5]]},
        {"label": "[5 6 7 8 9 10][1 2 3 4 5]", "kind": "augprod",
         "args": [[5, 6, 7, 8, 9, 10], [1, 2, 3, 4, 5]]},
        {"label": "[5 6 7 8 9 10][1 2 3 4 5 6]", "kind": "augprod",
         "args": [[5, 6, 7, 8, 9, 10], [1, 2, 3, 4, 5, 6]]},
        {"label": "[6 7 8 9 10][6 7][3 4 5][1 2]", "kind": "augprod",
         "args": [[6, 7, 8, 9, 10], [6, 7], [3, 4, 5], [1, 2]]},
    ],
}

# Soft time budgets in seconds (reported, never enforced)
BENCH_SOFT_BUDGETS = {
    "table5": 5.0,
    "k_18": 60.0,
    "k_9,9": 120.0,
    "[5 6 7 8 9 10][1 2 3 4 5 6]": 30.0,
}
