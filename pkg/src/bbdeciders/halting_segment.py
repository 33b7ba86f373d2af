"""Halting segment: abstract simulation restricted to a window of n cells.

The head is either inside the window (position 0..n-1) or just outside of
it (-1 or n), in which case the rest of the tape is unknown.
"""

from __future__ import annotations

from collections import deque
from typing import NamedTuple, Optional

from .decision import Decision, nonhalt, unknown
from .tm import LETTERS, TransitionTable

HALTING_SEGMENT = "halting-segment"


class SegmentConfiguration(NamedTuple):
    '''``state`` is None for halting nodes, which carry the halting
    transition (state, read) in ``halt``.'''
    state: Optional[int]
    segment: tuple
    pos: int
    halt: Optional[tuple] = None

    def __str__(self) -> str:
        name = "⊥" + LETTERS[self.halt[0]] + str(self.halt[1]) if self.state is None else LETTERS[self.state]
        cells = ["-"] + [str(b) for b in self.segment] + ["-"]
        cells[self.pos + 1] = f"[{cells[self.pos + 1]}]"
        return name + "".join(cells)


def initial_nodes(table: TransitionTable, n: int) -> list:
    return [SegmentConfiguration(0, (0,) * n, p) for p in range(-1, n + 1)]


def expand_node(table: TransitionTable, node: SegmentConfiguration) -> list:
    '''Children of a node in deterministic order.'''
    if node.state is None:
        raise ValueError("halting nodes have no children")
    n = len(node.segment)
    s, w, p = node.state, node.segment, node.pos
    if 0 <= p < n:
        read = w[p]
        t = table[s, read]
        if t is None:
            return [SegmentConfiguration(None, w, p, (s, read))]
        w2 = w[:p] + (t.write,) + w[p + 1:]
        return [SegmentConfiguration(t.next, w2, p + t.move)]
    children = []
    inward = 1 if p < 0 else -1
    for read in (0, 1):
        t = table[s, read]
        if t is None:
            children.append(SegmentConfiguration(None, w, p, (s, read)))
        elif t.move != inward:
            children.append(SegmentConfiguration(t.next, w, p))
        else:
            children.append(SegmentConfiguration(t.next, w, p))
            children.append(SegmentConfiguration(t.next, w, p + inward))
    return children


def reachable_halting_nodes(table: TransitionTable, n: int, node_budget: Optional[int] = None):
    '''Set of (halting transition, pos) reachable from the initial nodes, or
    None when the budget runs out.'''
    seen = set(initial_nodes(table, n))
    queue = deque(seen)
    halts = set()
    while queue:
        node = queue.popleft()
        if node.state is None:
            halts.add((node.halt, node.pos))
            continue
        for child in expand_node(table, node):
            if child not in seen:
                seen.add(child)
                queue.append(child)
                if node_budget is not None and len(seen) > node_budget:
                    return None
    return halts


def decide_halting_segment(table: TransitionTable, n: int, node_budget: int = 1_000_000) -> Decision:
    '''NonHalt when, for every halting transition, some position of the
    segment never carries a reachable halting node.'''
    if n < 1:
        raise ValueError("n must be >= 1")
    halts = reachable_halting_nodes(table, n, node_budget)
    if halts is None:
        return unknown(HALTING_SEGMENT, n=n, reason="node budget")
    uncovered = []
    for tr in table.halting_transitions():
        missing = [p for p in range(-1, n + 1) if (tr, p) not in halts]
        if not missing:
            return unknown(HALTING_SEGMENT, n=n)
        uncovered.append([LETTERS[tr[0]] + str(tr[1]), missing])
    return nonhalt(HALTING_SEGMENT, n=n, uncovered=uncovered)


def decide_halting_segment_sweep(table: TransitionTable, n_max: int = 8, n_min: int = 2,
                                 node_budget: int = 1_000_000) -> Decision:
    last = unknown(HALTING_SEGMENT)
    for n in range(n_min, n_max + 1):
        last = decide_halting_segment(table, n, node_budget)
        if last.nonhalt:
            return last
    return last
