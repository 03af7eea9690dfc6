from collections import Counter

import pytest

from app.cache.simple_cache import SimpleCache
from app.cohomology.gw import gw_exp
from app.mf.factorization import validate_mf
from app.mf.koszul import build_koszul_minus
from app.mf.potential import Potential
from app.mf.orlov import (
    OrlovEngine,
    ParameterRangeError,
    closed_difference,
    ledger_chern,
    orlov_chern_closed,
    orlov_chern_ledger,
    orlov_differences,
    orlov_report,
    recurrence_holds,
)
from app.mf.window import WINDOW_WIDTH, LedgerEntry, WindowError, WindowLedger, window_push

# ch(Orl_{t+1}(K_-)) - ch(Orl_t(K_-)) for t = 1..6
EXPECTED_DIFFERENCES = [(6, 7), (-15, 8), (18, 9), (-3, 10), (-24, 11), (36, 12)]


def test_first_window_replaces_the_trivial_summand(fermat):
    K = build_koszul_minus(fermat)
    pushed, ledger = window_push(K, 1)
    assert ledger.blocks() == [(0, 0, 1)]
    assert all(1 <= s.twist <= WINDOW_WIDTH for s in pushed.summands)
    assert validate_mf(pushed).ok


def test_second_window_appends_the_twist_one_block(fermat):
    K = build_koszul_minus(fermat)
    first, ledger = window_push(K, 1)
    second, ledger = window_push(first, 2, ledger=ledger)
    assert ledger.blocks() == [(0, 0, 1), (1, -1, 6)]
    assert min(second.twists()) == 2


def test_ledger_replay_predicts_the_summands(fermat):
    K = build_koszul_minus(fermat)
    pushed, ledger = window_push(K, 2)
    assert ledger.replay(K.multiset()) == pushed.multiset()


def test_replay_rejects_missing_summands():
    ledger = WindowLedger()
    ledger.record(0, 0, 2)
    with pytest.raises(WindowError):
        ledger.replay(Counter())


def test_downward_push_is_refused(fermat):
    with pytest.raises(WindowError):
        window_push(build_koszul_minus(fermat), -5)


def test_ledger_list_form():
    ledger = WindowLedger()
    ledger.record(0, 0, 1)
    ledger.record(1, -1, 6)
    assert ledger.to_list() == [[0, 0, 0, 1], [1, 1, -1, 6]]
    assert WindowLedger.from_list(ledger.to_list()).blocks() == ledger.blocks()
    assert ledger.up_to(1).blocks() == [(0, 0, 1)]
    with pytest.raises(ValueError):
        WindowLedger.from_list([["a", 0, 0, 1]])


def test_cone_target_of_a_step():
    assert LedgerEntry(step=0, twist=0, shift=0, mult=1).cone_target == (6, -2)


def test_base_case_is_minus_e6p(engine):
    expected = gw_exp(6) * -1
    assert expected.coeffs == (-1, -6, -18, -36)
    assert orlov_chern_ledger(1, 0, 0, engine=engine) == expected
    assert orlov_chern_closed(1, 0, 0) == expected


def test_closed_differences():
    for t, (coeff, power) in enumerate(EXPECTED_DIFFERENCES, start=1):
        assert closed_difference(t) == gw_exp(power) * coeff


def test_ledger_matches_closed_form_in_early_windows(engine):
    for t in range(1, 4):
        for q in (-1, 0):
            for m in (0, 1):
                if t - q < 1:
                    continue
                assert orlov_chern_ledger(t, q, m, engine=engine) == orlov_chern_closed(t, q, m)


def test_twist_and_shift_rules(engine):
    base = orlov_chern_ledger(2, 0, 0, engine=engine)
    assert orlov_chern_ledger(3, 1, 0, engine=engine) == base * gw_exp(1)
    assert orlov_chern_ledger(2, 0, 1, engine=engine) == base * -1


@pytest.mark.slow
def test_ledger_differences_match_closed_form(engine):
    differences = orlov_differences(7, engine=engine)
    assert differences == [gw_exp(power) * coeff for coeff, power in EXPECTED_DIFFERENCES]


def test_difference_recurrence():
    for t in range(7, 25):
        assert recurrence_holds(t)
    with pytest.raises(ParameterRangeError):
        recurrence_holds(6)


def test_ledger_route_needs_positive_window(engine):
    with pytest.raises(ParameterRangeError):
        orlov_chern_ledger(0, 1, 0, engine=engine)
    with pytest.raises(ParameterRangeError):
        engine.push_to(0)


def test_engine_reuses_cached_ledger(tmp_path, fermat):
    cache = SimpleCache(cache_dir=str(tmp_path))
    first = OrlovEngine(potential=fermat, cache=cache)
    ledger = first.ledger_to(2)

    second = OrlovEngine(potential=fermat, cache=SimpleCache(cache_dir=str(tmp_path)))
    reused = second.ledger_to(2)
    assert reused.blocks() == ledger.blocks()
    assert second._state is None
    assert ledger_chern(reused) == ledger_chern(ledger)


def _swapped(potential):
    return Potential(W1=potential.W2, W2=potential.W1, f=(potential.f[1], potential.f[0]), name=potential.name)


def test_cached_ledger_is_keyed_by_the_potential(tmp_path, fermat):
    other = _swapped(fermat)
    assert OrlovEngine(potential=fermat)._cache_key() != OrlovEngine(potential=other)._cache_key()

    OrlovEngine(potential=fermat, cache=SimpleCache(cache_dir=str(tmp_path))).ledger_to(2)
    second = OrlovEngine(potential=other, cache=SimpleCache(cache_dir=str(tmp_path)))
    second.ledger_to(2)
    assert second._state is not None


def test_engine_discards_a_ledger_that_does_not_replay(tmp_path, fermat):
    cache = SimpleCache(cache_dir=str(tmp_path))
    engine = OrlovEngine(potential=fermat, cache=cache)
    cache.set(engine._cache_key(), {"fingerprint": fermat.fingerprint(), "window": 2, "entries": [[0, 0, 0, 1]]})

    ledger = engine.ledger_to(2)
    assert engine._state is not None
    assert ledger.blocks() == [(0, 0, 1), (1, -1, 6)]
    assert SimpleCache(cache_dir=str(tmp_path)).get(engine._cache_key())["entries"] == ledger.to_list()


def test_engine_discards_a_ledger_with_another_fingerprint(tmp_path, fermat):
    cache = SimpleCache(cache_dir=str(tmp_path))
    engine = OrlovEngine(potential=fermat, cache=cache)
    entries = [[0, 0, 0, 1], [1, 1, -1, 6]]
    cache.set(engine._cache_key(), {"fingerprint": "0" * 32, "window": 2, "entries": entries})

    assert engine.ledger_to(2).to_list() == entries
    assert engine._state is not None


def test_orlov_report(engine):
    report = orlov_report(2, 0, 1, engine=engine)
    assert report["pass"]
    assert report["params"] == {"t": 2, "q": 0, "m": 1}
    assert report["ledger_entries"] == [[0, 0, 0, 1], [1, 1, -1, 6]]


@pytest.mark.slow
def test_ledger_matches_closed_form_through_window_twelve(engine):
    for n in range(1, 13):
        assert orlov_chern_ledger(n, 0, 0, engine=engine) == orlov_chern_closed(n, 0, 0), n
    for q in (-6, 3, 6):
        assert orlov_chern_ledger(12 + q, q, 1, engine=engine) == orlov_chern_closed(12 + q, q, 1)


def test_ledger_conserves_summands_at_every_window(engine, fermat):
    initial = build_koszul_minus(fermat).multiset()
    for n in (1, 2, 3):
        state = engine.push_to(n)
        assert engine.ledger_to(n).replay(initial) == state.multiset()
