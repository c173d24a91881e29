from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from corrcomplete.completion import plan_merges
from corrcomplete.errors import InvalidInput, NotChordal, NotPositiveDefinite
from corrcomplete.graph import build_pattern_graph
from corrcomplete.linalg import (
    DEFAULT_PIVOT_TOL,
    cholesky,
    gaussian_entropy,
    log_det,
    schur_complement,
)
from corrcomplete.utils.logger import logger
from .oracle import oracle_max_det


@dataclass(frozen=True)
class VerificationResult:
    '''
    Outcome of checking a dense matrix against the maximum-determinant
    characterizations. Residuals are None when they could not be evaluated
    (matrix not PD, no pattern given, or pattern not chordal).
    '''
    pd: bool
    max_inverse_residual: Optional[float] = None
    fischer_residual: Optional[float] = None
    independence_residual: Optional[float] = None
    specified_residual: Optional[float] = None
    oracle_gap: Optional[float] = None
    entropy: Optional[float] = None
    log_det: Optional[float] = None

    def passed(self, tol=1e-10, oracle_tol=1e-9):
        if not self.pd:
            return False
        residuals = (
            self.max_inverse_residual,
            self.fischer_residual,
            self.independence_residual,
            self.specified_residual,
        )
        if any(r is not None and r > tol for r in residuals):
            return False
        return self.oracle_gap is None or self.oracle_gap <= oracle_tol

    def to_dict(self):
        return asdict(self)


def _principal(values, vertices):
    vertices = list(vertices)
    return values[np.ix_(vertices, vertices)]


def _step_sets(step):
    separator = sorted(step.separator)
    fresh = sorted(step.new_clique - step.separator)
    absorbed = sorted(step.absorbed)
    return fresh, separator, absorbed


def check_inverse_zeros(h, pattern, pivot_tol=DEFAULT_PIVOT_TOL):
    '''
    Largest |(H^-1)_ij| over the non-edges of `pattern`.
    '''
    if pattern.labels is not None and tuple(pattern.labels) != tuple(h.labels):
        h = h.reorder(pattern.labels)
    inverse = cholesky(h.values, pivot_tol).inverse()
    residual = 0.0
    for i, j in pattern.non_edges():
        residual = max(residual, abs(float(inverse[i, j])))
    return residual


def check_fischer(h, step, pivot_tol=DEFAULT_PIVOT_TOL):
    '''
    |log det H_step - (log det C + log det H_X/C + log det H_Y/C)| on the
    block spanned by the step's new clique and absorbed vertices.
    '''
    fresh, separator, absorbed = _step_sets(step)
    values = h.values
    whole = log_det(_principal(values, fresh + separator + absorbed), pivot_tol)
    c = log_det(_principal(values, separator), pivot_tol)
    k = len(separator)
    x_part = schur_complement(_principal(values, separator + fresh), range(k), pivot_tol)
    y_part = schur_complement(_principal(values, separator + absorbed), range(k), pivot_tol)
    return abs(whole - (c + log_det(x_part, pivot_tol) + log_det(y_part, pivot_tol)))


def check_conditional_independence(h, step, pivot_tol=DEFAULT_PIVOT_TOL):
    '''
    Frobenius norm of the cross block of H/C between the new clique's own
    vertices and the absorbed vertices; zero means they are independent given C.
    '''
    fresh, separator, absorbed = _step_sets(step)
    if not fresh or not absorbed:
        return 0.0
    block = _principal(h.values, fresh + separator + absorbed)
    k = len(fresh)
    conditional = schur_complement(block, range(k, k + len(separator)), pivot_tol)
    return float(np.linalg.norm(conditional[:k, k:], 'fro'))


def entropy(h, pivot_tol=DEFAULT_PIVOT_TOL):
    return gaussian_entropy(log_det(h.values, pivot_tol), h.n)


def _specified_residual(h, m):
    residual = 0.0
    for (i, j), value in m.specified.items():
        residual = max(residual, abs(float(h.values[i, j]) - value))
    return residual


def verify_completion(h, m=None, steps=None, oracle=False, pivot_tol=DEFAULT_PIVOT_TOL, oracle_options=None):
    '''
    Run every check that applies to `h`.

    With a partial matrix `m`, `h` is reordered to m's labels and checked for
    inverse zeros and specified-entry agreement; merge-step residuals use
    `steps` or, by default, the merge plan of m when its pattern is chordal.
    '''
    if m is not None:
        if set(h.labels) != set(m.labels):
            raise InvalidInput("dense matrix and pattern have different labels")
        h = h.reorder(m.labels)

    try:
        factor = cholesky(h.values, pivot_tol)
    except NotPositiveDefinite as e:
        logger.info('Matrix is not positive definite', extra={'pivot': e.pivot})
        return VerificationResult(pd=False)

    result = {
        'pd': True,
        'log_det': factor.log_det,
        'entropy': gaussian_entropy(factor.log_det, h.n),
    }
    if m is not None:
        result['max_inverse_residual'] = check_inverse_zeros(h, build_pattern_graph(m), pivot_tol)
        result['specified_residual'] = _specified_residual(h, m)
        if steps is None:
            try:
                steps = plan_merges(m).steps
            except NotChordal:
                logger.info('Pattern is not chordal, skipping merge-step checks')
        if oracle:
            _, best = oracle_max_det(m, pivot_tol=pivot_tol, **(oracle_options or {}))
            result['oracle_gap'] = abs(best - factor.log_det)

    if steps is not None:
        result['fischer_residual'] = max((check_fischer(h, s, pivot_tol) for s in steps), default=0.0)
        result['independence_residual'] = max(
            (check_conditional_independence(h, s, pivot_tol) for s in steps), default=0.0
        )

    verification = VerificationResult(**result)
    logger.info('Verified matrix', extra={
        'n': h.n,
        'max_inverse_residual': verification.max_inverse_residual,
        'fischer_residual': verification.fischer_residual,
    })
    return verification
