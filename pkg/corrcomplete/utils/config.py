import copy
import os

import yaml
from dotenv import find_dotenv, load_dotenv

from corrcomplete.errors import InvalidInput
from corrcomplete.linalg import DEFAULT_PIVOT_TOL
from corrcomplete.models.n_currency_model import NCurrencyModel, NCurrencyParams
from corrcomplete.models.random_model import RandomModel
from corrcomplete.models.xccy_model import XccyModel, XccyParams
from corrcomplete.utils.utils import parse_float_list
from .logger import logger

DEFAULT_SETTINGS = {
    'pivot_tol': DEFAULT_PIVOT_TOL,
    'verify_tol': 1e-10,
    'root': 'auto',
    'oracle': {
        'max_free': 6,
        'tol': 1e-12,
        'max_sweeps': 5000,
    },
    'random': {
        'fill_probability': 0.3,
    },
}

# Environment variables that override individual settings
ENV_OVERRIDES = {
    'CORRCOMPLETE_TOL': 'pivot_tol',
    'CORRCOMPLETE_VERIFY_TOL': 'verify_tol',
}


# Mapping of generator names to their constructors
MODEL_MAP = {
    'xccy': lambda options, settings: XccyModel(
        XccyParams.from_sequence(parse_float_list(options['params']))
    ),
    'ncurrency': lambda options, settings: NCurrencyModel(
        NCurrencyParams.from_config(
            parse_config(options['params_file']),
            count=options.get('count'),
        )
    ),
    'random': lambda options, settings: RandomModel(
        n=options['n'],
        seed=options['seed'],
        fill_probability=settings['random']['fill_probability']
        if options.get('fill_probability') is None else options['fill_probability'],
    ),
}


def parse_config(config_path):
    with open(config_path, 'r') as file:
        try:
            config = yaml.safe_load(file)
        except yaml.YAMLError as e:
            raise InvalidInput(f"could not parse {config_path}: {e}") from e
    if config is None:
        return {}
    if not isinstance(config, dict):
        raise InvalidInput(f"{config_path} must contain a mapping")
    return config


def _merge(base, override):
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            _merge(base[key], value)
        else:
            base[key] = value
    return base


def _positive_float(name, raw):
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise InvalidInput(f"{name} must be a positive number, got {raw!r}")
    if not value > 0:
        raise InvalidInput(f"{name} must be a positive number, got {raw!r}")
    return value


def _section(settings, name):
    section = settings.get(name)
    if not isinstance(section, dict):
        raise InvalidInput(f"setting '{name}' must be a mapping, got {section!r}")
    return section


def _count(name, raw, minimum):
    if isinstance(raw, bool) or not isinstance(raw, int) or raw < minimum:
        raise InvalidInput(f"{name} must be an integer >= {minimum}, got {raw!r}")
    return raw


def _check_sections(settings):
    oracle = _section(settings, 'oracle')
    oracle['max_free'] = _count('oracle.max_free', oracle.get('max_free'), 0)
    oracle['max_sweeps'] = _count('oracle.max_sweeps', oracle.get('max_sweeps'), 1)
    oracle['tol'] = _positive_float('oracle.tol', oracle.get('tol'))

    random = _section(settings, 'random')
    try:
        p = float(random.get('fill_probability'))
    except (TypeError, ValueError):
        p = None
    if p is None or not 0.0 <= p <= 1.0:
        raise InvalidInput(f"random.fill_probability must lie in [0, 1], got {random.get('fill_probability')!r}")
    random['fill_probability'] = p


def load_settings(config_path=None):
    settings = copy.deepcopy(DEFAULT_SETTINGS)
    if config_path:
        _merge(settings, parse_config(config_path))
        logger.info('Configuration parsed successfully', extra={'config_path': config_path})

    # .env is searched for from the working directory upwards
    load_dotenv(find_dotenv(usecwd=True))
    for env_name, key in ENV_OVERRIDES.items():
        raw = os.environ.get(env_name)
        if raw is not None:
            settings[key] = _positive_float(env_name, raw)
            logger.debug('Setting overridden from environment', extra={'setting': key, 'value': settings[key]})

    for key in ('pivot_tol', 'verify_tol'):
        settings[key] = _positive_float(key, settings[key])
    _check_sections(settings)
    return settings


def build_model(name, options, settings):
    constructor = MODEL_MAP.get(name)
    if constructor is None:
        raise InvalidInput(f"Unknown model type: {name}")
    try:
        return constructor(options, settings)
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, InvalidInput):
            raise
        logger.error(f"Error initializing model '{name}': {e}")
        raise InvalidInput(f"invalid parameters for model '{name}': {e}") from e
