import pytest

from src.config import SEED_ENV, Config
from src.dilators.zoo import OmegaDilator, TopDilator
from src.trees.kb import BadFamily, DecFamily
from src.utils.orders import CanonicalOrder


@pytest.fixture(autouse=True)
def no_env_seed(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)


@pytest.fixture
def omega():
    return OmegaDilator()


@pytest.fixture
def top():
    return TopDilator()


@pytest.fixture
def dec():
    return DecFamily()


@pytest.fixture
def bad():
    return BadFamily()


@pytest.fixture
def three():
    return CanonicalOrder(3)


@pytest.fixture
def small_config():
    return Config(arity_bound=2, code_bound=60, l_bound=60, depth=4, width=3, random_orders=2, chain_len=10)
