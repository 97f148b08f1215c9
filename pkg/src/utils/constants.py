"""Application-wide constants: classical root-system data, CLI codes, sheet names."""

from math import factorial
from typing import Dict, Tuple

# Number of positive roots per type, as a function of the rank
POSITIVE_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}

# Weyl group orders per type
WEYL_GROUP_ORDERS = {
    "A": lambda n: factorial(n + 1),
    "B": lambda n: 2**n * factorial(n),
    "C": lambda n: 2**n * factorial(n),
    "D": lambda n: 2 ** (n - 1) * factorial(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}

# Ranks allowed per type letter
VALID_RANKS = {
    "A": range(1, 100),
    "B": range(2, 100),
    "C": range(2, 100),
    "D": range(2, 100),
    "E": range(6, 9),
    "F": range(4, 5),
    "G": range(2, 3),
}

# Named Hermitian symmetric pairs accepted by `resolution --pair`
HS_PAIRS: Dict[str, Tuple[str, int, int]] = {
    "E6": ("E", 6, 6),
    "E7": ("E", 7, 7),
}

# Name of the empty diagram in reports
EMPTY_DIAGRAM = "empty"

# CLI exit codes
EXIT_BAD_FLAGS = 2
EXIT_SIZE_CAP = 3
EXIT_GOLDEN_MISMATCH = 4

# Cache/poset serialization schema
SCHEMA_VERSION = 1

# DOT rendering attributes
DOT_STYLES = {
    "kostant": 'shape=doublecircle',
    "plain": 'shape=circle',
    "dashed": 'style=dashed',
}

# Excel sheet names
EXCEL_SHEETS = {
    "table1": "Table1_Maximal_Parabolics",
    "table2": "Table2_Singular_HS",
    "classification": "Classification",
    "resolution": "Resolution",
    "golden": "Golden_Checks",
}
