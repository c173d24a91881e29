import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import cho_solve, lapack

from corrcomplete.errors import NotPositiveDefinite

# Dense symmetric matrix; every routine here keeps exact symmetry.
SymMatrix = NDArray[np.float64]

DEFAULT_PIVOT_TOL = 1e-12


def as_matrix(m):
    values = np.asarray(m, dtype=np.float64)
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {values.shape}")
    return values


def symmetrize(m):
    return (m + m.T) / 2.0


@dataclass(frozen=True, eq=False)
class CholFactor:
    """Lower-triangular L with L @ L.T equal to the factored matrix."""
    lower: np.ndarray

    @property
    def dim(self):
        return self.lower.shape[0]

    @property
    def pivots(self):
        return np.diag(self.lower) ** 2

    @property
    def min_pivot(self):
        return float(self.pivots.min()) if self.dim else math.inf

    @property
    def log_det(self):
        return float(2.0 * np.sum(np.log(np.diag(self.lower))))

    def solve(self, rhs):
        rhs = np.asarray(rhs, dtype=np.float64)
        if self.dim == 0:
            return np.zeros_like(rhs)
        return cho_solve((self.lower, True), rhs, check_finite=False)

    def inverse(self):
        return symmetrize(self.solve(np.eye(self.dim)))


def cholesky(m, pivot_tol=DEFAULT_PIVOT_TOL):
    '''
    Factor a symmetric matrix; pivots (the squared diagonal of L) must exceed pivot_tol.

    Raises NotPositiveDefinite with the index of the first failing pivot.
    '''
    a = as_matrix(m)
    if a.shape[0] == 0:
        return CholFactor(np.zeros((0, 0)))
    lower, info = lapack.dpotrf(a, lower=1, clean=1, overwrite_a=0)
    if info < 0:
        raise ValueError(f"illegal value in argument {-info} of dpotrf")
    if info > 0:
        raise NotPositiveDefinite(info - 1)
    pivots = np.diag(lower) ** 2
    failing = np.flatnonzero(pivots <= pivot_tol)
    if failing.size:
        k = int(failing[0])
        raise NotPositiveDefinite(k, float(pivots[k]))
    return CholFactor(np.asarray(lower))


def is_positive_definite(m, pivot_tol=DEFAULT_PIVOT_TOL):
    try:
        cholesky(m, pivot_tol)
    except NotPositiveDefinite:
        return False
    return True


def solve_spd(c, rhs, pivot_tol=DEFAULT_PIVOT_TOL):
    return cholesky(c, pivot_tol).solve(rhs)


def inverse_spd(m, pivot_tol=DEFAULT_PIVOT_TOL):
    return cholesky(m, pivot_tol).inverse()


def log_det(m, pivot_tol=DEFAULT_PIVOT_TOL):
    return cholesky(m, pivot_tol).log_det


def gaussian_entropy(log_determinant, n):
    '''
    Differential entropy of N_n(mu, H) given log det H.
    '''
    return 0.5 * log_determinant + 0.5 * n * (1.0 + math.log(2.0 * math.pi))
