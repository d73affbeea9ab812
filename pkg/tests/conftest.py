import os
from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"


def pytest_addoption(parser):
    parser.addoption(
        "--run-stretch",
        action="store_true",
        default=False,
        help="run the multi-hour n=9 verification targets",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-stretch"):
        return
    skip = pytest.mark.skip(reason="stretch target; enable with --run-stretch")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(tmp_path_factory):
    """Keep orbit caches inside the test session, never in the user's home."""
    cache = tmp_path_factory.mktemp("orbit-cache")
    old = os.environ.get("GRASSCLIQUE_CACHE")
    os.environ["GRASSCLIQUE_CACHE"] = str(cache)
    yield cache
    if old is None:
        os.environ.pop("GRASSCLIQUE_CACHE", None)
    else:
        os.environ["GRASSCLIQUE_CACHE"] = old


@pytest.fixture()
def data_dir():
    return DATA_DIR
