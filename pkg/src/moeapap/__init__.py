"""moeapap: parallel algorithm portfolios of multi-objective evolutionary
algorithms, with automatic portfolio construction and an experiment harness.
"""

from ._kernels import BACKEND as kernel_backend
from .core import (
    ConfigurationError,
    ContractViolationError,
    Dominance,
    Individual,
    ProblemSpec,
    SolutionSet,
    crowding_distance,
    crowding_truncate,
    dominates,
    fast_nondominated_sort,
    nondominated_filter,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "ContractViolationError",
    "Dominance",
    "Individual",
    "ProblemSpec",
    "SolutionSet",
    "crowding_distance",
    "crowding_truncate",
    "dominates",
    "fast_nondominated_sort",
    "kernel_backend",
    "nondominated_filter",
    "__version__",
]
