import itertools
import string
from dataclasses import dataclass, fields

from corrcomplete.errors import InvalidInput
from corrcomplete.pattern import PartialMatrix
from corrcomplete.utils.logger import logger
from corrcomplete.utils.utils import LABEL_FORBIDDEN
from .base_model import BaseModel
from .xccy_model import check_coefficients, check_triangle

COEFFICIENTS = ('k_nuK', 'e_k', 'e_x', 'k_x', 'x_nuX')


@dataclass(frozen=True)
class ForeignCurrency:
    '''
    Coefficients of one foreign currency K against the domestic rate E and
    its exchange rate X_E_K, mirroring the cross-currency model.
    '''
    name: str
    k_nuK: float
    e_k: float
    e_x: float
    k_x: float
    x_nuX: float

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name or any(ch in self.name for ch in LABEL_FORBIDDEN):
            raise InvalidInput(f"invalid currency name {self.name!r}")
        values = check_coefficients([getattr(self, c) for c in COEFFICIENTS], [f"{self.name}.{c}" for c in COEFFICIENTS])
        for name, value in zip(COEFFICIENTS, values):
            object.__setattr__(self, name, value)
        check_triangle(self.e_k, self.e_x, self.k_x, ('E', self.name, fx_label('E', self.name)))

    def labels(self, domestic):
        fx = fx_label(domestic, self.name)
        return (self.name, f"nu_{self.name}", fx, f"nu_{fx}")


def fx_label(domestic, foreign):
    return f"X_{domestic}_{foreign}"


def _generated_names(domestic, taken):
    for size in itertools.count(1):
        for letters in itertools.product(string.ascii_uppercase, repeat=size):
            name = ''.join(letters)
            if name != domestic and name not in taken:
                yield name


@dataclass(frozen=True)
class NCurrencyParams:
    domestic: str
    e_nuE: float
    currencies: tuple

    def __post_init__(self):
        if not isinstance(self.domestic, str) or not self.domestic:
            raise InvalidInput(f"invalid domestic currency name {self.domestic!r}")
        (e_nuE,) = check_coefficients([self.e_nuE], ['e_nuE'])
        currencies = tuple(sorted(self.currencies, key=lambda c: c.name))
        if not currencies:
            raise InvalidInput("at least one foreign currency is required")
        names = [c.name for c in currencies]
        if len(set(names)) != len(names) or self.domestic in names:
            raise InvalidInput("currency names must be distinct from each other and from the domestic currency")
        object.__setattr__(self, 'e_nuE', e_nuE)
        object.__setattr__(self, 'currencies', currencies)

    @classmethod
    def from_config(cls, config, count=None):
        '''
        Build from a parsed YAML mapping:

            domestic: E
            e_nuE: 0.2
            currencies:
              A: {k_nuK: 0.3, e_k: 0.4, e_x: 0.5, k_x: 0.6, x_nuX: 0.7}
            default: {k_nuK: 0.3, e_k: 0.4, e_x: 0.5, k_x: 0.6, x_nuX: 0.7}

        With `count`, the first `count` listed currencies are used and any
        shortfall is made up of generated names carrying the `default` set.
        '''
        if not isinstance(config, dict):
            raise InvalidInput("currency parameters must be a mapping")
        domestic = str(config.get('domestic', 'E'))
        if 'e_nuE' not in config:
            raise InvalidInput("currency parameters need e_nuE")
        listed = config.get('currencies') or {}
        if not isinstance(listed, dict):
            raise InvalidInput("'currencies' must map currency names to coefficients")
        currencies = [cls._currency(str(name), values) for name, values in sorted(listed.items())]

        if count is not None:
            count = int(count)
            if count < 1:
                raise InvalidInput(f"count must be at least 1, got {count}")
            currencies = currencies[:count]
            missing = count - len(currencies)
            if missing:
                default = config.get('default')
                if default is None:
                    raise InvalidInput(f"{missing} currencies missing and no 'default' coefficients given")
                names = _generated_names(domestic, {c.name for c in currencies})
                currencies += [cls._currency(next(names), default) for _ in range(missing)]
        return cls(domestic, config['e_nuE'], tuple(currencies))

    @staticmethod
    def _currency(name, values):
        if not isinstance(values, dict):
            raise InvalidInput(f"coefficients for {name} must be a mapping")
        unknown = set(values) - set(COEFFICIENTS)
        missing = [c for c in COEFFICIENTS if c not in values]
        if unknown or missing:
            raise InvalidInput(
                f"coefficients for {name} must be exactly {', '.join(COEFFICIENTS)}"
            )
        return ForeignCurrency(name, **{c: values[c] for c in COEFFICIENTS})

    def labels(self):
        labels = [self.domestic, f"nu_{self.domestic}"]
        for currency in self.currencies:
            labels.extend(currency.labels(self.domestic))
        return tuple(labels)


def n_currency_pattern(p):
    e = p.domestic
    entries = [(e, f"nu_{e}", p.e_nuE)]
    for c in p.currencies:
        k, nu_k, x, nu_x = c.labels(e)
        entries += [
            (k, nu_k, c.k_nuK),
            (e, k, c.e_k),
            (e, x, c.e_x),
            (k, x, c.k_x),
            (x, nu_x, c.x_nuX),
        ]
    return PartialMatrix.from_entries(p.labels(), entries)


class NCurrencyModel(BaseModel):
    def __init__(self, params):
        super().__init__('ncurrency')
        self.params = params
        logger.debug('Built N-currency model', extra={'currencies': len(params.currencies)})

    def pattern(self):
        return n_currency_pattern(self.params)

    def describe(self):
        return {
            'model': self.model_name,
            'domestic': self.params.domestic,
            'e_nuE': self.params.e_nuE,
            'currencies': {
                c.name: {f.name: getattr(c, f.name) for f in fields(c) if f.name != 'name'}
                for c in self.params.currencies
            },
        }
