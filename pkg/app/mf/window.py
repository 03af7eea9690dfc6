# app/mf/window.py
"""
Pushing a matrix factorization into the window [t, t+5] by repeatedly
replacing the lowest-twist blocks, highest shift first.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from app.mf.factorization import MatrixFactorization, Summand, ensure_valid
from app.mf.replace import NotReplaceableError, find_replaceable, replace_summand

WINDOW_WIDTH = 6


class WindowError(Exception):
    """Raised when a push would need a downward replacement or a block is stuck"""
    pass


@dataclass(frozen=True)
class LedgerEntry:
    step: int
    twist: int
    shift: int
    mult: int

    @property
    def cone_target(self) -> Tuple[int, int]:
        """(twist, shift) of the K_+ twist whose cone performed this step."""
        return self.twist + 6, self.shift - 2

    def to_list(self) -> List[int]:
        return [self.step, self.twist, self.shift, self.mult]


@dataclass
class WindowLedger:
    entries: List[LedgerEntry] = field(default_factory=list)

    def record(self, twist: int, shift: int, mult: int) -> LedgerEntry:
        entry = LedgerEntry(step=len(self.entries), twist=twist, shift=shift, mult=mult)
        self.entries.append(entry)
        return entry

    def blocks(self) -> List[Tuple[int, int, int]]:
        return [(e.twist, e.shift, e.mult) for e in self.entries]

    def up_to(self, window: int) -> "WindowLedger":
        """The entries a push to `window` produces (twists below it)."""
        return WindowLedger([e for e in self.entries if e.twist < window])

    def replay(self, initial: Counter) -> Counter:
        """Apply each step's substitution to a summand multiset."""
        current = Counter(initial)
        for e in self.entries:
            source = Summand(e.twist, e.shift)
            if current[source] < e.mult:
                raise WindowError(f"Ledger step {e.step} removes {e.mult} x {source}, only {current[source]} present")
            current[source] -= e.mult
            if current[source] == 0:
                del current[source]
            current[source.moved(3, -2)] += 2 * e.mult
            current[source.moved(6, -3)] += e.mult
        return current

    def to_list(self) -> List[List[int]]:
        return [e.to_list() for e in self.entries]

    @classmethod
    def from_list(cls, data: List[List[int]]) -> "WindowLedger":
        try:
            return cls([LedgerEntry(*(int(v) for v in row)) for row in data])
        except (TypeError, ValueError) as e:
            raise ValueError(f"Malformed ledger: {e}")


def window_push(
    M: MatrixFactorization,
    t: int,
    ledger: Optional[WindowLedger] = None,
    validate_steps: bool = False,
    validate_final: bool = True,
    verbose: bool = False,
) -> Tuple[MatrixFactorization, WindowLedger]:
    """Replace every block below twist t; the result has all twists in [t, t+5]."""
    if M.size and max(M.twists()) > t + WINDOW_WIDTH - 1:
        raise WindowError(
            f"Twist {max(M.twists())} lies above the window [{t}, {t + WINDOW_WIDTH - 1}]; a downward push is not supported"
        )
    ledger = WindowLedger(list(ledger.entries)) if ledger else WindowLedger()
    current = M
    if current.size:
        for twist in range(min(current.twists()), t):
            shifts = sorted({s.shift for s in current.summands if s.twist == twist}, reverse=True)
            for shift in shifts:
                target = Summand(twist, shift)
                A = [i for i, s in enumerate(current.summands) if s == target]
                try:
                    block = find_replaceable(current, A)
                except NotReplaceableError as e:
                    raise WindowError(f"Block {target}^{len(A)} is not replaceable ({e})")
                current = replace_summand(current, A, block=block, validate=validate_steps)
                entry = ledger.record(twist, shift, len(A))
                if verbose:
                    kind = "p-linear" if block.p_linear else "p-degree 2 arrows"
                    print(f"[WINDOW] step {entry.step}: replaced {target}^{len(A)} ({kind}) -> size {current.size}")

    outside = [s for s in current.summands if not t <= s.twist <= t + WINDOW_WIDTH - 1]
    if outside:
        raise WindowError(f"Summands {outside[:3]} left outside the window [{t}, {t + WINDOW_WIDTH - 1}]")
    if validate_final:
        ensure_valid(current, f"after pushing into window {t}")
    return current, ledger


def ledger_summary(ledger: WindowLedger) -> Dict[str, Any]:
    return {"steps": len(ledger.entries), "entries": ledger.to_list()}
