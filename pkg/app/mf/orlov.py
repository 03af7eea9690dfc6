# app/mf/orlov.py
"""
Chern characters of Orl_t(K_-(q)[m]), two ways:

  ledger  sum over the window-push ledger of -mult * (-1)^shift * e^{(twist+6)p}
          (the first block, O(0)[0], gives the base term -e^{6p})
  closed  (-1)^m sum_{t-3 <= s <= t+2, s = q mod 3} ((s-q)/3)
              sum_{k=0}^{t-s+2} (-1)^{k+1} C(6,k) e^{(k+s+3)p}

Both use Orl_t(F(q)[m]) = Orl_{t-q}(F)(q)[m] and ch(O(k)[l]) = (-1)^l e^{kp}.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, Optional

from app.arith.rational import binomial
from app.cache.simple_cache import ledger_key
from app.cohomology.gw import GwClass, gw_exp
from app.mf.factorization import MatrixFactorization
from app.mf.koszul import build_koszul_minus
from app.mf.potential import Potential, fermat_split
from app.mf.window import WINDOW_WIDTH, WindowError, WindowLedger, window_push


class ParameterRangeError(Exception):
    """Raised when the ledger route is asked for a window below 1"""
    pass


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


class OrlovEngine:
    """
    Incremental window pushes of K_- for one potential. Pushing to window
    n+1 continues from the state left at window n.
    """

    def __init__(
        self,
        potential: Optional[Potential] = None,
        cache: Optional[Any] = None,
        validate_steps: bool = False,
        verbose: bool = False,
    ):
        self.potential = potential or fermat_split()
        self.cache = cache
        self.validate_steps = validate_steps
        self.verbose = verbose
        self._state: Optional[MatrixFactorization] = None
        self._ledger = WindowLedger()
        self._window = 0

    def _cache_key(self) -> str:
        return ledger_key(self.potential.fingerprint())

    def _replays(self, ledger: WindowLedger, n: int) -> bool:
        """The ledger applies step by step to K_- and lands inside window n."""
        try:
            final = ledger.replay(build_koszul_minus(self.potential).multiset())
        except WindowError:
            return False
        return all(n <= s.twist < n + WINDOW_WIDTH for s in final)

    def _cached_ledger(self, n: int) -> Optional[WindowLedger]:
        if self.cache is None:
            return None
        cached = self.cache.get(self._cache_key())
        if not cached or cached.get("window", 0) < n:
            return None
        try:
            if cached.get("fingerprint") != self.potential.fingerprint():
                raise ValueError("fingerprint mismatch")
            ledger = WindowLedger.from_list(cached["entries"]).up_to(n)
        except (KeyError, ValueError) as e:
            if self.verbose:
                print(f"[CACHE] discarding ledger: {e}")
            self.cache.delete(self._cache_key())
            return None
        if not self._replays(ledger, n):
            if self.verbose:
                print(f"[CACHE] discarding ledger: it does not replay to window {n}")
            self.cache.delete(self._cache_key())
            return None
        if self.verbose:
            print(f"[CACHE] ledger for window {cached['window']} reused")
        return ledger

    def push_to(self, n: int) -> MatrixFactorization:
        """The pushed object Phi_n(K_-), continuing from the last window reached."""
        if n < 1:
            raise ParameterRangeError(f"Window index must be at least 1, got {n}")
        if self._state is None:
            self._state = build_koszul_minus(self.potential)
        if n > self._window:
            for w in range(max(self._window, 0) + 1, n + 1):
                self._state, self._ledger = window_push(
                    self._state,
                    w,
                    ledger=self._ledger,
                    validate_steps=self.validate_steps,
                    validate_final=self.validate_steps,
                    verbose=self.verbose,
                )
                if self.verbose:
                    print(f"[WINDOW] reached window {w}: {self._state.size} summands")
            self._window = n
            if self.cache is not None:
                cached = self.cache.get(self._cache_key())
                if not cached or cached.get("window", 0) < n:
                    self.cache.set(
                        self._cache_key(),
                        {"fingerprint": self.potential.fingerprint(), "window": n, "entries": self._ledger.to_list()},
                    )
        return self._state

    def ledger_to(self, n: int) -> WindowLedger:
        if n < 1:
            raise ParameterRangeError(f"Window index must be at least 1, got {n}")
        if n <= self._window:
            return self._ledger.up_to(n)
        cached = self._cached_ledger(n)
        if cached is not None:
            return cached
        self.push_to(n)
        return self._ledger.up_to(n)


_default_engine: Optional[OrlovEngine] = None


def get_engine() -> OrlovEngine:
    """Shared engine for the default potential"""
    global _default_engine
    if _default_engine is None:
        _default_engine = OrlovEngine()
    return _default_engine


def ledger_chern(ledger: WindowLedger) -> GwClass:
    total = GwClass.zero()
    for e in ledger.entries:
        total = total - gw_exp(e.twist + 6) * (e.mult * _sign(e.shift))
    return total


def orlov_chern_ledger(t: int, q: int, m: int, engine: Optional[OrlovEngine] = None) -> GwClass:
    n = t - q
    if n < 1:
        raise ParameterRangeError(f"Ledger route needs t - q >= 1, got t={t}, q={q}")
    engine = engine or get_engine()
    return ledger_chern(engine.ledger_to(n)) * gw_exp(q) * _sign(m)


def orlov_chern_closed(t: int, q: int, m: int) -> GwClass:
    total = GwClass.zero()
    for s in range(t - 3, t + 3):
        if (s - q) % 3:
            continue
        coeff = Fraction(s - q, 3)
        for k in range(t - s + 3):
            total = total + gw_exp(k + s + 3) * (coeff * _sign(k + 1) * binomial(6, k))
    return total * _sign(m)


def orlov_differences(n: int, engine: Optional[OrlovEngine] = None) -> List[GwClass]:
    """ch(Orl_{t+1}(K_-)) - ch(Orl_t(K_-)) for t = 1..n-1, from the ledger."""
    engine = engine or get_engine()
    values = [ledger_chern(engine.ledger_to(t)) for t in range(1, n + 1)]
    return [b - a for a, b in zip(values, values[1:])]


def closed_difference(t: int) -> GwClass:
    return orlov_chern_closed(t + 1, 0, 0) - orlov_chern_closed(t, 0, 0)


def recurrence_holds(t: int) -> bool:
    """Delta(t) = 2 e^{3p} Delta(t-3) - e^{6p} Delta(t-6) for t >= 7."""
    if t < 7:
        raise ParameterRangeError(f"The difference recurrence starts at t = 7, got {t}")
    rhs = gw_exp(3) * closed_difference(t - 3) * 2 - gw_exp(6) * closed_difference(t - 6)
    return closed_difference(t) == rhs


def orlov_report(t: int, q: int, m: int, engine: Optional[OrlovEngine] = None) -> Dict[str, Any]:
    engine = engine or get_engine()
    ledger_value = orlov_chern_ledger(t, q, m, engine=engine)
    closed_value = orlov_chern_closed(t, q, m)
    return {
        "params": {"t": t, "q": q, "m": m},
        "ledger": ledger_value.to_dict(),
        "closed": closed_value.to_dict(),
        "ledger_entries": engine.ledger_to(t - q).to_list(),
        "pass": ledger_value == closed_value,
    }
