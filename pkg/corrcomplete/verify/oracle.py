import numpy as np
from scipy.optimize import brentq

from corrcomplete.errors import InvalidInput, NoFeasiblePoint, NotPositiveDefinite
from corrcomplete.linalg import DEFAULT_PIVOT_TOL, cholesky, is_positive_definite
from corrcomplete.pattern import DenseCorrMatrix
from corrcomplete.utils.logger import logger

# Off-diagonal shrink factors tried for the starting point
SHRINK_GRID = tuple(round(1.0 - 0.1 * k, 1) for k in range(11))
MIN_CONTINUATION_STEP = 1e-10
CENTERING_SWEEPS = 3
MAX_BRACKET_TRIALS = 200


def _with_entry(h, i, j, t):
    trial = h.copy()
    trial[i, j] = trial[j, i] = t
    return trial


def _inverse_entry(h, i, j, t, pivot_tol):
    return float(cholesky(_with_entry(h, i, j, t), pivot_tol).inverse()[i, j])


def coordinate_optimum(h, i, j, pivot_tol=DEFAULT_PIVOT_TOL):
    '''
    Value of the free entry (i, j) maximizing log det with all else fixed.

    t -> (H(t)^-1)_ij is decreasing on the PD interval and vanishes at the
    optimum; bracket the root from the current value, then solve with brentq.
    '''
    t0 = float(h[i, j])
    g0 = _inverse_entry(h, i, j, t0, pivot_tol)
    if g0 == 0.0:
        return t0
    direction = 1.0 if g0 > 0 else -1.0
    lo = t0
    step = 0.5 * (1.0 - direction * lo)
    for _ in range(MAX_BRACKET_TRIALS):
        t = lo + direction * step
        try:
            gt = _inverse_entry(h, i, j, t, pivot_tol)
        except NotPositiveDefinite:
            step /= 2.0
            continue
        if gt == 0.0:
            return t
        if gt * direction < 0:
            a, b = sorted((lo, t))
            return brentq(lambda s: _inverse_entry(h, i, j, s, pivot_tol), a, b, xtol=1e-15)
        lo = t
        step = 0.5 * (1.0 - direction * lo)
    logger.warning('Could not bracket coordinate optimum', extra={'entry': [i, j]})
    return lo


def _sweep(h, free, pivot_tol):
    change = 0.0
    for i, j in free:
        t = coordinate_optimum(h, i, j, pivot_tol)
        change = max(change, abs(t - h[i, j]))
        h[i, j] = h[j, i] = t
    return change


def _scaled(h, m, scale):
    scaled = h.copy()
    for (i, j), value in m.specified.items():
        scaled[i, j] = scaled[j, i] = scale * value
    return scaled


def feasible_start(m, free, pivot_tol=DEFAULT_PIVOT_TOL):
    '''
    A PD matrix agreeing with m on every specified entry.

    Starts from the zero fill with off-diagonals shrunk until PD, then walks
    the shrink factor back to one, re-centering the free entries after each
    accepted move.
    '''
    zero_fill = np.eye(m.n)
    scale = next(s for s in SHRINK_GRID if is_positive_definite(_scaled(zero_fill, m, s), pivot_tol))
    h = _scaled(zero_fill, m, scale)
    step = 1.0 - scale
    while scale < 1.0:
        target = min(1.0, scale + step)
        trial = _scaled(h, m, target)
        if not is_positive_definite(trial, pivot_tol):
            step /= 2.0
            if step < MIN_CONTINUATION_STEP:
                raise NoFeasiblePoint(
                    f"no positive definite completion found (stalled at shrink factor {scale!r})"
                )
            continue
        scale, h = target, trial
        for _ in range(CENTERING_SWEEPS if free else 0):
            _sweep(h, free, pivot_tol)
        step = min(2.0 * step, 1.0 - scale)
    return h


def oracle_max_det(m, max_free=6, tol=1e-12, max_sweeps=5000, pivot_tol=DEFAULT_PIVOT_TOL):
    '''
    Numeric maximum-determinant completion by coordinate ascent.

    Independent of the clique-tree construction: works on any pattern with at
    most `max_free` unspecified entries. Returns (matrix, log det).
    '''
    free = m.unspecified_pairs()
    if len(free) > max_free:
        raise InvalidInput(f"oracle handles at most {max_free} unspecified entries, got {len(free)}")
    h = feasible_start(m, free, pivot_tol)

    sweeps = 0
    change = 0.0
    if free:
        for sweeps in range(1, max_sweeps + 1):
            change = _sweep(h, free, pivot_tol)
            if change < tol:
                break
        else:
            logger.warning('Oracle did not converge', extra={'sweeps': max_sweeps, 'last_change': change})

    result = DenseCorrMatrix(m.labels, h)
    best = cholesky(result.values, pivot_tol).log_det
    logger.debug('Oracle finished', extra={'free': len(free), 'sweeps': sweeps, 'log_det': best})
    return result, best
