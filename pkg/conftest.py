import pytest

from mucoal.automata import TModel
from mucoal.config import default_caps
from mucoal.functors import parse_functor
from mucoal.generators import chain


@pytest.fixture
def powerset():
    return parse_functor('powerset')


@pytest.fixture
def bag():
    return parse_functor('bag')


@pytest.fixture
def caps():
    return default_caps


@pytest.fixture
def chain3() -> TModel:
    """0 → 1 → 2 with p at 2."""
    return chain(3)


@pytest.fixture
def two_cycle(powerset) -> TModel:
    """0 ⇄ 1 with p only at 1."""
    return TModel(powerset, [0, 1], {0: frozenset([1]), 1: frozenset([0])}, {'p': [1]}, 0).validate()
