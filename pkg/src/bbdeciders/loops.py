"""Cyclers and translated cyclers.

A cycler revisits an exact configuration.  A translated cycler keeps
breaking records on one side while repeating the same local pattern; it is
caught by comparing two record-breaking configurations in the same state.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .decision import Decision, halted, nonhalt, unknown
from .tm import Simulator, TransitionTable

CYCLERS = "cyclers"
TRANSLATED_CYCLERS = "translated-cyclers"


def decide_cyclers(table: TransitionTable, time_limit: int = 1000,
                   max_configurations: int = 1_000_000) -> Decision:
    '''NonHalt{i, j} when the configuration at step j equals the one at step i.'''
    if time_limit < 0:
        raise ValueError("time_limit must be >= 0")
    sim = Simulator(table)
    seen = {}
    while sim.steps <= time_limit:
        # key: state, absolute head and tape trimmed to the cells holding 1
        off = sim.offset
        lo, hi = sim.lo + off, sim.hi + off
        raw = bytes(sim.tape[max(lo, 0):hi + 1])
        first = raw.find(1)
        if first < 0:
            key = (sim.state, sim.head, 0, b"")
        else:
            key = (sim.state, sim.head, max(lo, 0) + first - off, raw[first:raw.rfind(1) + 1])
        if key in seen:
            return nonhalt(CYCLERS, i=seen[key], j=sim.steps)
        if len(seen) >= max_configurations:
            return unknown(CYCLERS, reason="memory cap")
        seen[key] = sim.steps
        if not sim.step():
            h = sim.halted
            return halted(CYCLERS, h.step, h.state, h.read)
    return unknown(CYCLERS)


class RecordSide(str, Enum):
    RIGHT = "right"
    LEFT = "left"


@dataclass(frozen=True)
class RecordBreakingConfiguration:
    '''Snapshot at a step where the head stands on a never-visited cell.

    ``tape`` maps every visited position to its symbol and ``last_visit``
    maps it to the last step the head stood there (up to ``step``).
    '''
    step: int
    state: int
    head: int
    side: RecordSide
    tape: dict
    last_visit: dict

    def symbol(self, pos: int) -> int:
        return self.tape.get(pos, 0)

    def extreme(self) -> int:
        return max(self.tape) if self.side is RecordSide.RIGHT else min(self.tape)


def compute_distance_L(current: RecordBreakingConfiguration, older: RecordBreakingConfiguration) -> int:
    '''How far behind the older record the head wandered between the two records.'''
    p1 = older.head
    t1 = older.last_visit[p1]
    t2 = current.last_visit[current.head]
    right = current.side is RecordSide.RIGHT
    dist = 0
    for pos, t in current.last_visit.items():
        if (right and pos > p1) or (not right and pos < p1):
            continue
        if t1 <= t <= t2:
            dist = max(dist, abs(pos - p1))
    return dist


def check_record_pair(current: RecordBreakingConfiguration, older: RecordBreakingConfiguration,
                      distance: int = None) -> bool:
    '''Tapes agree on the ``distance + 1`` cells ending at each record cell.'''
    if distance is None:
        distance = compute_distance_L(current, older)
    step = -1 if current.side is RecordSide.RIGHT else 1
    ce, oe = current.extreme(), older.extreme()
    return all(current.symbol(ce + step * k) == older.symbol(oe + step * k)
               for k in range(distance + 1))


def record_breaking_configurations(table: TransitionTable, time_limit: int):
    '''Yield record-breaking configurations up to ``time_limit``; returns
    the Halted outcome through StopIteration.value when the machine halts.'''
    sim = Simulator(table)
    tape = {}
    last = {}
    ext_lo = ext_hi = 0
    while sim.steps < time_limit:
        head = sim.head
        last[head] = sim.steps
        tape[head] = sim.read(head)
        side = None
        if head > ext_hi:
            ext_hi, side = head, RecordSide.RIGHT
        elif head < ext_lo:
            ext_lo, side = head, RecordSide.LEFT
        if side is not None:
            yield RecordBreakingConfiguration(sim.steps, sim.state, head, side, dict(tape), dict(last))
        if not sim.step():
            return sim.halted
        tape[head] = sim.read(head)
    return None


def decide_translated_cyclers(table: TransitionTable, time_limit: int = 1000) -> Decision:
    records = {RecordSide.RIGHT: [], RecordSide.LEFT: []}
    gen = record_breaking_configurations(table, time_limit)
    while True:
        try:
            cur = next(gen)
        except StopIteration as stop:
            h = stop.value
            if h is not None:
                return halted(TRANSLATED_CYCLERS, h.step, h.state, h.read)
            return unknown(TRANSLATED_CYCLERS)
        for older in records[cur.side]:
            if older.state != cur.state:
                continue
            dist = compute_distance_L(cur, older)
            if check_record_pair(cur, older, dist):
                return nonhalt(TRANSLATED_CYCLERS, t1=older.step, t2=cur.step,
                               side=cur.side.value, distance=dist)
        records[cur.side].append(cur)
