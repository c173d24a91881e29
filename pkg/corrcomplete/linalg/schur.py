import numpy as np

from .cholesky import DEFAULT_PIVOT_TOL, as_matrix, cholesky, symmetrize


def schur_complement(m, block, pivot_tol=DEFAULT_PIVOT_TOL):
    '''
    Schur complement M/C = A - B C^-1 B^T of the principal block C on `block`.

    The result is indexed by the remaining indices in ascending order.
    '''
    m = as_matrix(m)
    block = sorted(set(int(i) for i in block))
    rest = [i for i in range(m.shape[0]) if i not in set(block)]
    a = m[np.ix_(rest, rest)]
    if not block or not rest:
        return a.copy()
    factor = cholesky(m[np.ix_(block, block)], pivot_tol)
    b = m[np.ix_(rest, block)]
    return symmetrize(a - b @ factor.solve(b.T))
