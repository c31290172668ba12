import pytest

from quadselmer import cache
from quadselmer.config import Config
from quadselmer.field import QuadField, make_field


@pytest.fixture
def field10() -> QuadField:
    return make_field(10)


@pytest.fixture
def field34() -> QuadField:
    return make_field(34)


@pytest.fixture
def field3() -> QuadField:
    return make_field(3)


@pytest.fixture
def gaussian() -> QuadField:
    return make_field(-1)


@pytest.fixture
def rational() -> QuadField:
    return QuadField.rational()


@pytest.fixture
def cfg() -> Config:
    # sin .env ni entorno: valores por defecto, fuzz corto
    return Config(fuzz_trials=10)


@pytest.fixture
def clean_cache():
    cache.clear()
    yield
    cache.clear()


@pytest.fixture(autouse=True)
def _no_selmer_env(monkeypatch):
    for name in (
        "SELMER_PRIME_NORM_FACTOR",
        "SELMER_PRIME_NORM_BOUND",
        "SELMER_MEMBERSHIP_BOUND",
        "SELMER_SUPPLEMENTARY_BOUND",
        "SELMER_FUZZ_TRIALS",
        "SELMER_FUZZ_HEIGHT",
        "SELMER_SEED",
        "SELMER_FORMAT",
        "SELMER_JOBS",
        "SELMER_LOG_PATH",
        "SELMER_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)
