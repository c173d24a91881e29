from .cholesky import (
    DEFAULT_PIVOT_TOL,
    CholFactor,
    SymMatrix,
    cholesky,
    gaussian_entropy,
    inverse_spd,
    is_positive_definite,
    log_det,
    solve_spd,
    symmetrize,
)
from .schur import schur_complement

__all__ = [
    'DEFAULT_PIVOT_TOL',
    'CholFactor',
    'SymMatrix',
    'cholesky',
    'gaussian_entropy',
    'inverse_spd',
    'is_positive_definite',
    'log_det',
    'schur_complement',
    'solve_spd',
    'symmetrize',
]
