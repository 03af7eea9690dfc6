import pytest

from app.cache.simple_cache import SimpleCache, get_cache, ledger_key
from app.config.settings import Settings, get_settings, parse_int_range


def test_parse_int_range_forms():
    assert parse_int_range("4:7") == [4, 5, 6, 7]
    assert parse_int_range("-2:-2") == [-2]
    assert parse_int_range("1, 3,5") == [1, 3, 5]
    assert parse_int_range(3) == [3]
    assert parse_int_range([0, "2"]) == [0, 2]
    assert parse_int_range(None) == []
    assert parse_int_range("") == []


@pytest.mark.parametrize("bad", ["5:1", "1:2:3", "a:b", "0:20000", True])
def test_parse_int_range_rejects(bad):
    with pytest.raises(ValueError):
        parse_int_range(bad)


def test_settings_defaults(monkeypatch):
    for name in ("LGCY_SERIES_TOL", "LGCY_POTENTIAL", "LGCY_POTENTIAL_PATH", "LGCY_MP_DPS"):
        monkeypatch.delenv(name, raising=False)
    settings = Settings(_env_file=None)
    assert settings.series_tol == 1e-8
    assert settings.continuation_tol == 1e-6
    assert settings.pf_tol == 1e-10
    assert settings.contour_sigma == pytest.approx(-1.0 / 6)
    assert settings.potential_path is None
    assert settings.ledger_max_window == 19


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("LGCY_SERIES_TOL", "1e-9")
    monkeypatch.setenv("LGCY_MP_DPS", "30")
    monkeypatch.setenv("LGCY_POTENTIAL", "custom.json")
    settings = get_settings()
    assert settings.series_tol == 1e-9
    assert settings.mp_dps == 30
    assert settings.potential_path == "custom.json"


def test_cache_round_trip(tmp_path):
    cache = SimpleCache(cache_dir=str(tmp_path))
    key = ledger_key("abc")
    assert key == "ledger:abc"
    assert cache.get(key) is None
    cache.set(key, {"window": 2, "entries": [[0, 0, 0, 1]]})

    fresh = SimpleCache(cache_dir=str(tmp_path))
    assert fresh.get(key) == {"window": 2, "entries": [[0, 0, 0, 1]]}
    stats = fresh.get_stats()
    assert stats["file_cache_items"] == 1
    assert stats["hits"] == 1

    fresh.delete(key)
    assert SimpleCache(cache_dir=str(tmp_path)).get(key) is None


def test_cache_memory_limit(tmp_path):
    cache = SimpleCache(cache_dir=str(tmp_path), memory_size=2)
    for n in range(4):
        cache.set(f"k{n}", n)
    assert cache.get_stats()["memory_cache_items"] == 2
    assert cache.get("k0") == 0
    cache.clear()
    assert cache.get_stats()["file_cache_items"] == 0


def test_shared_cache_follows_directory(isolated_cache):
    cache = get_cache()
    assert cache.cache_dir == str(isolated_cache)
    assert get_cache() is cache
