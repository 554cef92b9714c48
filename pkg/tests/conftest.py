import pytest

from hankel_fh.config import get_settings


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow oracle sweeps")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="oracle agreement check; run with --runslow (see README)")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
