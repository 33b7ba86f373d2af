"""Binary seed database of 5-state machines.

The file is a 30-byte header followed by 30-byte records.  A record lists,
for states A..E and read symbols 0, 1, three bytes: the symbol written,
the move (0 = R, 1 = L unless flipped) and the next state (0 = undefined,
1..5 = A..E).
"""

from __future__ import annotations

import os
from typing import Iterator

from .tm import Transition, TransitionTable

HEADER_SIZE = 30
RECORD_SIZE = 30
N_STATES = 5


class DecodeError(ValueError):
    pass


def decode_db_record(data: bytes, move_left_is_one: bool = True) -> TransitionTable:
    if len(data) != RECORD_SIZE:
        raise DecodeError(f"record must be {RECORD_SIZE} bytes, got {len(data)}")
    rows = []
    for s in range(N_STATES):
        row = []
        for r in range(2):
            write, move, nxt = data[6 * s + 3 * r:6 * s + 3 * r + 3]
            if write > 1 or move > 1 or nxt > N_STATES:
                raise DecodeError(f"byte out of range in entry {'ABCDE'[s]}{r}")
            if nxt == 0:
                row.append(None)
                continue
            left = (move == 1) == move_left_is_one
            row.append(Transition(write, -1 if left else 1, nxt - 1))
        rows.append(tuple(row))
    return TransitionTable(tuple(rows))


def encode_db_record(table: TransitionTable, move_left_is_one: bool = True) -> bytes:
    if table.n_states != N_STATES:
        raise ValueError("database records hold 5-state machines")
    out = bytearray()
    for (_, _), t in table.transitions():
        if t is None:
            out += bytes(3)
        else:
            move = int((t.move < 0) == move_left_is_one)
            out += bytes((t.write, move, t.next + 1))
    return bytes(out)


class SeedDatabase:
    def __init__(self, path, move_left_is_one: bool = True):
        self.path = path
        self.move_left_is_one = move_left_is_one
        size = os.path.getsize(path)
        if size < HEADER_SIZE or (size - HEADER_SIZE) % RECORD_SIZE:
            raise DecodeError(f"{path}: size {size} is not 30 + 30*count")
        self.count = (size - HEADER_SIZE) // RECORD_SIZE
        with open(path, "rb") as fh:
            self.header = fh.read(HEADER_SIZE)

    def __len__(self) -> int:
        return self.count

    def record(self, index: int) -> bytes:
        if not 0 <= index < self.count:
            raise IndexError(index)
        with open(self.path, "rb") as fh:
            fh.seek(HEADER_SIZE + RECORD_SIZE * index)
            return fh.read(RECORD_SIZE)

    def __getitem__(self, index: int) -> TransitionTable:
        return decode_db_record(self.record(index), self.move_left_is_one)

    def iter_range(self, start: int = 0, stop: int = None) -> Iterator[tuple]:
        '''Yield (index, table) for start <= index < stop.'''
        stop = self.count if stop is None else min(stop, self.count)
        with open(self.path, "rb") as fh:
            fh.seek(HEADER_SIZE + RECORD_SIZE * start)
            for i in range(start, stop):
                yield i, decode_db_record(fh.read(RECORD_SIZE), self.move_left_is_one)
