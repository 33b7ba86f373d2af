"""Turing machine tables, classical and directional simulation.

Machines use the binary alphabet {0, 1} and states A, B, C, ... (state A is
index 0).  Tables are written in the compact underscore format used by the
busy beaver community, e.g. ``1RB1LC_1RC1RB_1RD0LE_1LA1LD_---0LA``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
_TRIPLE = re.compile(r"[01][LR][A-Z]|---")


class MachineParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class Transition(NamedTuple):
    write: int
    move: int  # +1 = right, -1 = left
    next: int

    @property
    def direction(self) -> str:
        return "R" if self.move > 0 else "L"


@dataclass(frozen=True)
class TransitionTable:
    '''Transition function of a machine; ``rows[state][read]`` is a
    Transition or None when undefined (halting).'''

    rows: tuple

    def __post_init__(self):
        if not self.rows:
            raise ValueError("a machine needs at least one state")
        for row in self.rows:
            if len(row) != 2:
                raise ValueError("each state needs one entry per symbol")
            for t in row:
                if t is not None and not 0 <= t.next < len(self.rows):
                    raise ValueError(f"transition to unknown state {t.next}")

    @property
    def n_states(self) -> int:
        return len(self.rows)

    def __getitem__(self, key) -> Optional[Transition]:
        state, read = key
        return self.rows[state][read]

    def transitions(self):
        '''Yield ((state, read), transition) in table order.'''
        for s, row in enumerate(self.rows):
            for r, t in enumerate(row):
                yield (s, r), t

    def halting_transitions(self) -> list:
        return [key for key, t in self.transitions() if t is None]

    def mirrored(self) -> "TransitionTable":
        '''Same machine with every move direction swapped.'''
        return TransitionTable(tuple(
            tuple(None if t is None else Transition(t.write, -t.move, t.next) for t in row)
            for row in self.rows))

    def __str__(self) -> str:
        return format_machine(self)

    @classmethod
    def parse(cls, text: str) -> "TransitionTable":
        return parse_machine(text)


def parse_machine(text: str) -> TransitionTable:
    '''Parse the compact ``row_row_...`` machine format.'''
    text = text.strip()
    rows_text = text.split("_")
    n = len(rows_text)
    if n > len(LETTERS):
        raise MachineParseError("too many states", 0)
    rows = []
    offset = 0
    for row_text in rows_text:
        if len(row_text) != 6:
            raise MachineParseError(f"row {row_text!r} must have 6 characters", offset)
        row = []
        for b in range(2):
            triple = row_text[3 * b:3 * b + 3]
            pos = offset + 3 * b
            if not _TRIPLE.fullmatch(triple):
                raise MachineParseError(f"malformed triple {triple!r}", pos)
            if triple == "---":
                row.append(None)
                continue
            nxt = LETTERS.index(triple[2])
            if nxt >= n:
                raise MachineParseError(f"unknown state letter {triple[2]!r}", pos + 2)
            row.append(Transition(int(triple[0]), 1 if triple[1] == "R" else -1, nxt))
        rows.append(tuple(row))
        offset += 7
    return TransitionTable(tuple(rows))


def format_machine(table: TransitionTable) -> str:
    def triple(t):
        return "---" if t is None else f"{t.write}{t.direction}{LETTERS[t.next]}"
    return "_".join("".join(triple(t) for t in row) for row in table.rows)


# ---------------------------------------------------------------------------
# classical configurations

@dataclass(frozen=True)
class Halted:
    '''Halting outcome.  ``step`` counts every step including the final one
    that hits the undefined entry.'''
    step: int
    state: int
    read: int
    configuration: Optional["Configuration"] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Configuration:
    '''Classical configuration.  The tape is stored as the set of positions
    holding a 1; equality only looks at state, head and tape contents.'''
    state: int
    head: int
    ones: frozenset = frozenset()
    extent: tuple = field(default=(0, 0), compare=False)
    step: int = field(default=0, compare=False)

    @classmethod
    def initial(cls) -> "Configuration":
        return cls(0, 0)

    def symbol(self, pos: int) -> int:
        return 1 if pos in self.ones else 0

    @property
    def tape(self) -> dict:
        return {p: 1 for p in self.ones}

    def word(self, lo: int, hi: int) -> str:
        return "".join("1" if p in self.ones else "0" for p in range(lo, hi + 1))


def machine_step(table: TransitionTable, config: Configuration):
    '''One step of the machine: a new Configuration, or Halted.'''
    read = config.symbol(config.head)
    t = table[config.state, read]
    if t is None:
        return Halted(config.step + 1, config.state, read, config)
    ones = config.ones | {config.head} if t.write else config.ones - {config.head}
    head = config.head + t.move
    lo, hi = config.extent
    return Configuration(t.next, head, frozenset(ones), (min(lo, head), max(hi, head)), config.step + 1)


@dataclass(frozen=True)
class RunningAtLimit:
    configuration: Configuration
    last_visit: Optional[dict] = None


SimulationOutcome = Union[Halted, RunningAtLimit]


class Simulator:
    '''Fast runner on a dense bytearray tape that grows on both sides.

    ``pos`` values are absolute positions; the bytearray index is
    ``pos + offset``.
    '''

    def __init__(self, table: TransitionTable):
        self.table = table
        self.tape = bytearray(256)
        self.offset = 128
        self.head = 0
        self.state = 0
        self.steps = 0
        self.lo = 0
        self.hi = 0
        self.halted: Optional[Halted] = None
        n = table.n_states
        # flat lookup tables indexed by 2*state + read
        self._write = [0] * (2 * n)
        self._move = [0] * (2 * n)
        self._next = [-1] * (2 * n)
        for (s, r), t in table.transitions():
            if t is not None:
                self._write[2 * s + r] = t.write
                self._move[2 * s + r] = t.move
                self._next[2 * s + r] = t.next

    def _grow(self, idx: int) -> int:
        size = len(self.tape)
        if idx < 0:
            self.tape[:0] = bytes(size)
            self.offset += size
            return idx + size
        self.tape.extend(bytes(size))
        return idx

    def read(self, pos: int) -> int:
        idx = pos + self.offset
        return self.tape[idx] if 0 <= idx < len(self.tape) else 0

    def step(self) -> bool:
        '''Perform one step; returns False once the machine has halted.'''
        if self.halted is not None:
            return False
        idx = self.head + self.offset
        if not 0 <= idx < len(self.tape):
            idx = self._grow(idx)
        k = 2 * self.state + self.tape[idx]
        nxt = self._next[k]
        if nxt < 0:
            self.halted = Halted(self.steps + 1, self.state, self.tape[idx], self.configuration())
            return False
        self.tape[idx] = self._write[k]
        self.head += self._move[k]
        self.state = nxt
        self.steps += 1
        if self.head < self.lo:
            self.lo = self.head
        elif self.head > self.hi:
            self.hi = self.head
        return True

    def run(self, limit: int) -> bool:
        '''Run until ``steps == limit`` or a halt; returns True if halted.'''
        if self.halted is not None:
            return True
        tape, offset = self.tape, self.offset
        W, M, N = self._write, self._move, self._next
        head, state, steps = self.head, self.state, self.steps
        lo, hi = self.lo, self.hi
        size = len(tape)
        while steps < limit:
            idx = head + offset
            if idx < 0 or idx >= size:
                self.tape, self.offset = tape, offset
                idx = self._grow(idx)
                tape, offset, size = self.tape, self.offset, len(self.tape)
            k = 2 * state + tape[idx]
            nxt = N[k]
            if nxt < 0:
                break
            tape[idx] = W[k]
            head += M[k]
            state = nxt
            steps += 1
            if head < lo:
                lo = head
            elif head > hi:
                hi = head
        self.tape, self.offset = tape, offset
        self.head, self.state, self.steps, self.lo, self.hi = head, state, steps, lo, hi
        if steps < limit:
            read = self.read(head)
            self.halted = Halted(steps + 1, state, read, self.configuration())
            return True
        return False

    def configuration(self) -> Configuration:
        off = self.offset
        ones = frozenset(p for p in range(self.lo, self.hi + 1)
                         if 0 <= p + off < len(self.tape) and self.tape[p + off])
        return Configuration(self.state, self.head, ones, (self.lo, self.hi), self.steps)


def simulate(table: TransitionTable, step_limit: int, timestamps: bool = False) -> SimulationOutcome:
    '''Run from the all-0 tape for at most ``step_limit`` steps.

    With ``timestamps`` the outcome also carries, for each cell, the last
    step at which the head was on it (slower path).
    '''
    if step_limit < 0:
        raise ValueError("step_limit must be >= 0")
    if not timestamps:
        sim = Simulator(table)
        if sim.run(step_limit):
            return sim.halted
        return RunningAtLimit(sim.configuration())
    config = Configuration.initial()
    last = {0: 0}
    while config.step < step_limit:
        nxt = machine_step(table, config)
        if isinstance(nxt, Halted):
            return nxt
        config = nxt
        last[config.head] = config.step
    return RunningAtLimit(config, last)


def word_representation(config: Configuration, window) -> str:
    '''Window contents with the state letter inserted just before the head.'''
    lo, hi = window
    if not lo <= config.head <= hi:
        raise ValueError("window does not contain the head")
    if any(p < lo or p > hi for p in config.ones):
        raise ValueError("window excludes a cell holding 1")
    out = []
    for p in range(lo, hi + 1):
        if p == config.head:
            out.append(LETTERS[config.state])
        out.append("1" if p in config.ones else "0")
    return "".join(out)


# ---------------------------------------------------------------------------
# directional tapes: the head sits between two cells and faces one of them

@dataclass(frozen=True)
class DirectionalTape:
    '''``left <state right`` or ``left state> right`` with optional 0^inf ends.

    When facing right the head reads the first symbol of ``right``; when
    facing left it reads the last symbol of ``left``.  ``origin`` is the
    absolute position of the first symbol of ``left + right`` and is only
    bookkeeping for the classical correspondence.
    '''
    left: str
    state: int
    facing_right: bool
    right: str
    left_inf: bool = True
    right_inf: bool = True
    origin: int = field(default=0, compare=False)

    @classmethod
    def initial(cls) -> "DirectionalTape":
        return cls("", 0, True, "")

    @property
    def head_position(self) -> int:
        return self.origin + len(self.left) - (0 if self.facing_right else 1)

    def to_configuration(self) -> Configuration:
        word = self.left + self.right
        ones = frozenset(self.origin + i for i, c in enumerate(word) if c == "1")
        return Configuration(self.state, self.head_position, ones)

    def __str__(self) -> str:
        head = f"{LETTERS[self.state]}>" if self.facing_right else f"<{LETTERS[self.state]}"
        parts = (["0^inf"] if self.left_inf else []) + ([self.left] if self.left else [])
        parts.append(head)
        parts += ([self.right] if self.right else []) + (["0^inf"] if self.right_inf else [])
        return " ".join(parts)


def directional_step(table: TransitionTable, tape: DirectionalTape):
    '''Apply the unique rewrite rule; returns the new tape or Halted
    (``step`` = 1).  Raises ValueError when the head faces a finite end.'''
    left, right, origin = tape.left, tape.right, tape.origin
    if tape.facing_right:
        if right:
            read, right = int(right[0]), right[1:]
        elif tape.right_inf:
            read = 0
        else:
            raise ValueError("head faces the finite right end")
    else:
        if left:
            read, left = int(left[-1]), left[:-1]
        elif tape.left_inf:
            read = 0
            origin -= 1
        else:
            raise ValueError("head faces the finite left end")
    t = table[tape.state, read]
    if t is None:
        return Halted(1, tape.state, read)
    if t.move < 0:
        right = str(t.write) + right
    else:
        left = left + str(t.write)
    return DirectionalTape(left, t.next, t.move > 0, right, tape.left_inf, tape.right_inf, origin)
