from bifurcation.limit import continue_fold, fold_from_diagram, lambda_b_limit
from bifurcation.sweep import count_zeros, locate_lambda_b, sweep, zeros_at
from bifurcation.variational import (
    fold_direction,
    isolation_scan,
    locate_fold,
    pitchfork_exclusion,
)

__all__ = [
    "continue_fold",
    "count_zeros",
    "fold_direction",
    "fold_from_diagram",
    "isolation_scan",
    "lambda_b_limit",
    "locate_fold",
    "locate_lambda_b",
    "pitchfork_exclusion",
    "sweep",
    "zeros_at",
]
