"""Backward reasoning: show that no halting configuration has a long enough
chain of predecessors."""

from __future__ import annotations

from dataclasses import dataclass, field

from .decision import Decision, nonhalt, unknown
from .tm import Halted, TransitionTable, simulate

BACKWARD = "backward"


@dataclass(frozen=True)
class PartialConfiguration:
    '''Only the cells in ``tape`` are constrained.  ``depth`` counts backward
    steps, the undoing of the halting transition being the first one.'''
    state: int
    head: int
    tape: dict = field(hash=False)
    depth: int = 1


class Contradiction:
    def __repr__(self):
        return "Contradiction"


CONTRADICTION = Contradiction()


def apply_transition_backwards(conf: PartialConfiguration, transition):
    '''``transition`` is (from_state, read, write, move, to_state) with
    ``move`` being +1 for R and -1 for L.'''
    from_state, read, write, move, to_state = transition
    if to_state != conf.state:
        raise ValueError("transition does not lead to the configuration's state")
    prev = conf.head - move
    if conf.tape.get(prev, write) != write:
        return CONTRADICTION
    tape = dict(conf.tape)
    tape[prev] = read
    return PartialConfiguration(from_state, prev, tape, conf.depth + 1)


def decide_backward(table: TransitionTable, max_depth: int = 30, node_budget: int = 100_000,
                    check_forward: bool = True) -> Decision:
    '''NonHalt when every backward branch from every halting configuration
    contradicts within ``max_depth`` backward steps.

    Depths count the halting transition itself and the contradicting attempt,
    so a contradiction found after undoing k regular steps needs depth k + 2.
    With ``check_forward`` the machine must also run ``max_depth`` steps
    from the blank tape without halting.
    '''
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    halting = table.halting_transitions()
    if not halting:
        return unknown(BACKWARD, reason="no halting transition")
    incoming = {s: [] for s in range(table.n_states)}
    for (s, r), t in table.transitions():
        if t is not None:
            incoming[t.next].append((s, r, t.write, t.move, t.next))
    stack = [PartialConfiguration(s, 0, {0: r}, 1) for s, r in halting]
    nodes = 0
    deepest = 0
    while stack:
        conf = stack.pop()
        nodes += 1
        deepest = max(deepest, conf.depth)
        if conf.depth >= max_depth:
            return unknown(BACKWARD, depth=deepest)
        if nodes > node_budget:
            return unknown(BACKWARD, reason="node budget", depth=deepest)
        for tr in incoming[conf.state]:
            prev = apply_transition_backwards(conf, tr)
            if prev is not CONTRADICTION:
                stack.append(prev)
    if check_forward and isinstance(simulate(table, max_depth), Halted):
        return unknown(BACKWARD, reason="halts during forward check")
    return nonhalt(BACKWARD, depth=deepest + 1)
