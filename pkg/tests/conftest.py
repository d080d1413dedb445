import os

import pytest


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(tmp_path_factory):
    """Keep enumeration caches out of the user's home during tests."""
    cache_dir = tmp_path_factory.mktemp("lctkit-cache")
    old = os.environ.get("LCTKIT_CACHE_DIR")
    os.environ["LCTKIT_CACHE_DIR"] = str(cache_dir)
    yield
    if old is None:
        os.environ.pop("LCTKIT_CACHE_DIR", None)
    else:
        os.environ["LCTKIT_CACHE_DIR"] = old
