import random

import mpmath
import pytest

from app.cache import simple_cache
from app.mf.orlov import OrlovEngine
from app.mf.potential import fermat_split


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def fermat():
    return fermat_split()


@pytest.fixture
def engine(fermat):
    return OrlovEngine(potential=fermat)


@pytest.fixture(autouse=True)
def working_precision():
    old = mpmath.mp.dps
    mpmath.mp.dps = 20
    yield
    mpmath.mp.dps = old


@pytest.fixture
def isolated_cache(tmp_path, monkeypatch):
    """Route the shared ledger cache into a temporary directory."""
    cache_dir = tmp_path / "cache"
    monkeypatch.setenv("LGCY_CACHE_DIR", str(cache_dir))
    monkeypatch.setattr(simple_cache, "_cache", None)
    return cache_dir
