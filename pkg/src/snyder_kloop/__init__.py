"""Snyder momentum space as a K-loop: factorization, sums of momenta, Lie triple
systems, star products, finite Hopf-loop models and a small CLI."""
from . import ambient, finite_hopf, kloop, lts, snyder, star
from .checks import CheckResult
from .errors import (ActionError, BranchCutError, ChartError, DegreeError, DenominatorError,
                     FactorizationError, SnyderError, TableError)
from .snyder import sum_closed_form, sum_exact, sum_first_order

__version__ = "0.1.0"

__all__ = [
    "ambient", "finite_hopf", "kloop", "lts", "snyder", "star", "CheckResult",
    "ActionError", "BranchCutError", "ChartError", "DegreeError", "DenominatorError",
    "FactorizationError", "SnyderError", "TableError",
    "sum_exact", "sum_closed_form", "sum_first_order",
]
