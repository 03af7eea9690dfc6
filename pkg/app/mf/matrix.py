# app/mf/matrix.py
"""Sparse matrices of BigradedPoly stored as {(row, col): entry}."""
from __future__ import annotations

from collections import defaultdict
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.mf.poly import BigradedPoly

Entry = Tuple[int, int]


class SparseMatrix:
    """Immutable-by-convention sparse matrix; zero entries are dropped"""

    __slots__ = ("rows", "cols", "_entries", "_by_row", "_by_col")

    def __init__(self, rows: int, cols: int, entries: Optional[Dict[Entry, BigradedPoly]] = None):
        self.rows = rows
        self.cols = cols
        self._entries: Dict[Entry, BigradedPoly] = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"Entry ({i}, {j}) outside a {rows}x{cols} matrix")
            if not value.is_zero():
                self._entries[(i, j)] = value
        self._by_row: Optional[Dict[int, List[Tuple[int, BigradedPoly]]]] = None
        self._by_col: Optional[Dict[int, List[Tuple[int, BigradedPoly]]]] = None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        one = BigradedPoly.one()
        return cls(n, n, {(i, i): one for i in range(n)})

    @classmethod
    def scalar_identity(cls, n: int, value: BigradedPoly) -> "SparseMatrix":
        return cls(n, n, {(i, i): value for i in range(n)})

    def get(self, i: int, j: int) -> BigradedPoly:
        return self._entries.get((i, j), BigradedPoly.zero())

    def items(self) -> Iterator[Tuple[Entry, BigradedPoly]]:
        return iter(self._entries.items())

    def nnz(self) -> int:
        return len(self._entries)

    def row(self, i: int) -> List[Tuple[int, BigradedPoly]]:
        if self._by_row is None:
            by_row = defaultdict(list)
            for (r, c), v in self._entries.items():
                by_row[r].append((c, v))
            self._by_row = dict(by_row)
        return self._by_row.get(i, [])

    def col(self, j: int) -> List[Tuple[int, BigradedPoly]]:
        if self._by_col is None:
            by_col = defaultdict(list)
            for (r, c), v in self._entries.items():
                by_col[c].append((r, v))
            self._by_col = dict(by_col)
        return self._by_col.get(j, [])

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out: Dict[Entry, BigradedPoly] = {}
        for (i, k), a in self._entries.items():
            for j, b in other.row(k):
                key = (i, j)
                out[key] = out[key] + a * b if key in out else a * b
        return SparseMatrix(self.rows, other.cols, out)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_shape(other)
        out = dict(self._entries)
        for key, v in other._entries.items():
            out[key] = out[key] + v if key in out else v
        return SparseMatrix(self.rows, self.cols, out)

    def __neg__(self) -> "SparseMatrix":
        return SparseMatrix(self.rows, self.cols, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, factor) -> "SparseMatrix":
        return SparseMatrix(self.rows, self.cols, {k: v * factor for k, v in self._entries.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self._entries == other._entries

    def _check_shape(self, other: "SparseMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"Shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def differences(self, other: "SparseMatrix") -> List[Entry]:
        """Positions where the two matrices differ."""
        self._check_shape(other)
        keys = set(self._entries) | set(other._entries)
        return sorted(k for k in keys if self.get(*k) != other.get(*k))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "SparseMatrix":
        rmap = {r: n for n, r in enumerate(row_idx)}
        cmap = {c: n for n, c in enumerate(col_idx)}
        out = {}
        for (i, j), v in self._entries.items():
            if i in rmap and j in cmap:
                out[(rmap[i], cmap[j])] = v
        return SparseMatrix(len(row_idx), len(col_idx), out)

    def to_triples(self) -> List[Dict[str, object]]:
        return [
            {"row": i, "col": j, "poly": v.to_json()}
            for (i, j), v in sorted(self._entries.items())
        ]
