"""Boolean matrices and NFAs over the Boolean semiring.

Rows are stored as Python ints used as bitsets: bit j of ``rows[i]`` is the
entry (i, j).  Row vectors are plain ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple


def row_times(vec: int, rows: Tuple[int, ...]) -> int:
    '''Row vector times matrix: OR of the rows selected by ``vec``.'''
    out = 0
    i = 0
    while vec:
        if vec & 1:
            out |= rows[i]
        vec >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class BoolMatrix:
    n_rows: int
    n_cols: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n_rows:
            raise ValueError("row count mismatch")
        limit = 1 << self.n_cols
        if any(r < 0 or r >= limit for r in self.rows):
            raise ValueError("row has bits beyond the column count")

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BoolMatrix":
        return cls(n_rows, n_cols, (0,) * n_rows)

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, entries) -> "BoolMatrix":
        entries = [list(r) for r in entries]
        n_cols = len(entries[0]) if entries else 0
        rows = tuple(sum(1 << j for j, x in enumerate(r) if x) for r in entries)
        return cls(len(entries), n_cols, rows)

    def to_lists(self):
        return [[(r >> j) & 1 for j in range(self.n_cols)] for r in self.rows]

    def __getitem__(self, key) -> int:
        i, j = key
        return (self.rows[i] >> j) & 1

    def __matmul__(self, other: "BoolMatrix") -> "BoolMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError("dimension mismatch")
        return BoolMatrix(self.n_rows, other.n_cols, tuple(row_times(r, other.rows) for r in self.rows))

    def __or__(self, other: "BoolMatrix") -> "BoolMatrix":
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols):
            raise ValueError("dimension mismatch")
        return BoolMatrix(self.n_rows, self.n_cols, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other: "BoolMatrix") -> bool:
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols):
            raise ValueError("dimension mismatch")
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __ge__(self, other: "BoolMatrix") -> bool:
        return other <= self

    def transpose(self) -> "BoolMatrix":
        return BoolMatrix(self.n_cols, self.n_rows, tuple(
            sum(((r >> j) & 1) << i for i, r in enumerate(self.rows)) for j in range(self.n_cols)))


def vec_leq(a: int, b: int) -> bool:
    return a & ~b == 0


@dataclass(frozen=True)
class BooleanNFA:
    '''``q0`` and ``a`` are row vectors (bitsets over ``n`` states); a word u
    is accepted iff q0 · T_u · a^T = 1.  ``s`` is the optional steady state.'''
    n: int
    q0: int
    transitions: Dict[str, BoolMatrix]
    a: int
    s: Optional[int] = None

    def __post_init__(self):
        for sym, m in self.transitions.items():
            if (m.n_rows, m.n_cols) != (self.n, self.n):
                raise ValueError(f"matrix for {sym!r} is not {self.n}x{self.n}")

    def run(self, word: Iterable[str], start: Optional[int] = None) -> int:
        vec = self.q0 if start is None else start
        for sym in word:
            try:
                m = self.transitions[sym]
            except KeyError:
                raise ValueError(f"symbol {sym!r} not in the alphabet") from None
            vec = row_times(vec, m.rows)
        return vec


def nfa_accepts(nfa: BooleanNFA, word: Iterable[str]) -> bool:
    return nfa.run(word) & nfa.a != 0
