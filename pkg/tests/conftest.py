import pytest

from corrcomplete.models import XccyParams, xccy_pattern
from corrcomplete.pattern import PartialMatrix
from tests.helpers import FIXTURE_PARAMS


@pytest.fixture
def three_path():
    return PartialMatrix.from_entries(('a', 'b', 'c'), [('a', 'b', 0.6), ('b', 'c', 0.5)])


@pytest.fixture
def four_cycle():
    return PartialMatrix.from_entries(
        ('a', 'b', 'c', 'd'),
        [('a', 'b', 0.1), ('b', 'c', 0.1), ('c', 'd', 0.1), ('a', 'd', 0.1)],
    )


@pytest.fixture
def xccy_params():
    return XccyParams.from_sequence(FIXTURE_PARAMS)


@pytest.fixture
def xccy_fixture(xccy_params):
    return xccy_pattern(xccy_params)
