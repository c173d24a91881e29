from dataclasses import astuple, dataclass, fields

import numpy as np

from corrcomplete.errors import InvalidInput
from corrcomplete.linalg import is_positive_definite
from corrcomplete.pattern import DenseCorrMatrix, PartialMatrix
from corrcomplete.utils.logger import logger
from corrcomplete.utils.utils import is_correlation_value
from .base_model import BaseModel

XCCY_LABELS = ('E', 'nu_E', 'A', 'nu_A', 'X', 'nu_X')


def check_coefficients(values, names):
    checked = []
    for name, value in zip(names, values):
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise InvalidInput(f"{name} must be a number, got {value!r}")
        if not is_correlation_value(value):
            raise InvalidInput(f"{name} must lie strictly between -1 and 1, got {value!r}")
        checked.append(value)
    return checked


def check_triangle(ab, ac, bc, names):
    '''
    The 3x3 correlation block [[1, ab, ac], [ab, 1, bc], [ac, bc, 1]] must be PD.
    '''
    block = np.array([[1.0, ab, ac], [ab, 1.0, bc], [ac, bc, 1.0]])
    if not is_positive_definite(block):
        raise InvalidInput(f"block on {{{', '.join(names)}}} is not positive definite")


@dataclass(frozen=True)
class XccyParams:
    '''
    The six calibrated coefficients of the cross-currency model: the two rate
    volatility correlations, the three rate/FX correlations and the FX
    volatility correlation.
    '''
    e_nuE: float
    a_nuA: float
    e_a: float
    e_x: float
    a_x: float
    x_nuX: float

    def __post_init__(self):
        names = [f.name for f in fields(self)]
        for name, value in zip(names, check_coefficients(astuple(self), names)):
            object.__setattr__(self, name, value)
        check_triangle(self.e_a, self.e_x, self.a_x, ('E', 'A', 'X'))

    @classmethod
    def from_sequence(cls, values):
        values = list(values)
        if len(values) != 6:
            raise InvalidInput(
                f"expected six coefficients e_nuE,a_nuA,e_a,e_x,a_x,x_nuX, got {len(values)}"
            )
        return cls(*values)

    @classmethod
    def sample(cls, rng, bound=0.95):
        while True:
            values = rng.uniform(-bound, bound, size=6)
            try:
                return cls(*values)
            except InvalidInput:
                continue


def xccy_pattern(p):
    e, nu_e, a, nu_a, x, nu_x = XCCY_LABELS
    return PartialMatrix.from_entries(XCCY_LABELS, [
        (e, nu_e, p.e_nuE),
        (a, nu_a, p.a_nuA),
        (e, a, p.e_a),
        (e, x, p.e_x),
        (a, x, p.a_x),
        (x, nu_x, p.x_nuX),
    ])


def xccy_closed_form(p):
    '''
    Maximum-entropy completion of the cross-currency pattern in closed form.
    '''
    values = xccy_pattern(p).zero_fill()
    index = {label: i for i, label in enumerate(XCCY_LABELS)}
    fills = {
        ('E', 'nu_X'): p.x_nuX * p.e_x,
        ('A', 'nu_X'): p.x_nuX * p.a_x,
        ('E', 'nu_A'): p.a_nuA * p.e_a,
        ('X', 'nu_A'): p.a_nuA * p.a_x,
        ('nu_X', 'nu_A'): p.a_nuA * p.x_nuX * p.a_x,
        ('nu_E', 'A'): p.e_nuE * p.e_a,
        ('nu_E', 'nu_A'): p.e_nuE * p.a_nuA * p.e_a,
        ('nu_E', 'X'): p.e_nuE * p.e_x,
        ('nu_E', 'nu_X'): p.e_nuE * p.x_nuX * p.e_x,
    }
    for (row, col), value in fills.items():
        i, j = index[row], index[col]
        values[i, j] = values[j, i] = value
    return DenseCorrMatrix(XCCY_LABELS, values)


class XccyModel(BaseModel):
    def __init__(self, params):
        super().__init__('xccy')
        self.params = params
        logger.debug('Built cross-currency model', extra={'params': list(astuple(params))})

    def pattern(self):
        return xccy_pattern(self.params)

    def expected_completion(self):
        return xccy_closed_form(self.params)

    def describe(self):
        return {
            'model': self.model_name,
            'labels': list(XCCY_LABELS),
            'params': dict(zip([f.name for f in fields(self.params)], astuple(self.params))),
        }
