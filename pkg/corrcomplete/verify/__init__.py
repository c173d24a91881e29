from .checks import (
    VerificationResult,
    check_conditional_independence,
    check_fischer,
    check_inverse_zeros,
    entropy,
    verify_completion,
)
from .oracle import coordinate_optimum, feasible_start, oracle_max_det

__all__ = [
    'VerificationResult',
    'check_conditional_independence',
    'check_fischer',
    'check_inverse_zeros',
    'coordinate_optimum',
    'entropy',
    'feasible_start',
    'oracle_max_det',
    'verify_completion',
]
