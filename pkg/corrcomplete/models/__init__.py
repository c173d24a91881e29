from .base_model import BaseModel
from .xccy_model import XCCY_LABELS, XccyModel, XccyParams, xccy_closed_form, xccy_pattern
from .n_currency_model import ForeignCurrency, NCurrencyModel, NCurrencyParams, n_currency_pattern
from .random_model import RandomModel, random_instance, random_pattern

__all__ = [
    'BaseModel',
    'ForeignCurrency',
    'NCurrencyModel',
    'NCurrencyParams',
    'RandomModel',
    'XCCY_LABELS',
    'XccyModel',
    'XccyParams',
    'n_currency_pattern',
    'random_instance',
    'random_pattern',
    'xccy_closed_form',
    'xccy_pattern',
]
