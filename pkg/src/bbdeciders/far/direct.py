"""Direct FAR search: enumerate canonical left DFAs and, for each, compute
the least right-hand automaton that closes the configuration language.

Configurations are read by a DFA with ``l`` states up to the head and by
an NFA over ``d = S*l + 1`` states afterwards (S = number of machine
states).  Index ``S*i + f`` of the second part means "the left DFA ended in
state i and the head is in machine state f"; index ``S*l`` is the
accepting sink.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

from ..decision import Decision, nonhalt, unknown
from ..tm import LETTERS, TransitionTable, format_machine
from .boolean import BoolMatrix, BooleanNFA, row_times
from .certificate import far_certificate
from .verify import far_certificate_violation

FAR_DIRECT = "far-direct"


class CheckResult(Enum):
    MORE = "more"
    SKIP = "skip"
    STOP = "stop"


@dataclass(frozen=True)
class DirectFarState:
    '''Least solution for a (possibly partial) left DFA ``delta`` where
    ``delta[2*i + b]`` is the successor of state i on symbol b.'''
    l: int
    n_states: int
    delta: tuple
    R0: tuple
    R1: tuple
    aT: int

    @property
    def d(self) -> int:
        return self.n_states * self.l + 1

    @property
    def sink(self) -> int:
        return self.n_states * self.l

    def rejects_initial(self) -> bool:
        return not self.aT & 1


class _Rules:
    def __init__(self, table: TransitionTable):
        self.S = table.n_states
        self.halting = table.halting_transitions()
        self.left = []   # (f, r, t, w)
        self.right = []
        for (f, r), t in table.transitions():
            if t is None:
                continue
            (self.left if t.move < 0 else self.right).append((f, r, t.next, t.write))


def initial_state(table: TransitionTable, l: int) -> DirectFarState:
    '''Solution for the empty prefix: the sink loops on both symbols and
    every halting (f, r) leads to the sink.'''
    S = table.n_states
    sink = S * l
    R = [[0] * (S * l + 1) for _ in range(2)]
    for r in (0, 1):
        R[r][sink] |= 1 << sink
    for f, r in table.halting_transitions():
        for i in range(l):
            R[r][S * i + f] |= 1 << sink
    return DirectFarState(l, S, (), tuple(R[0]), tuple(R[1]), 1 << sink)


def _extend(rules: _Rules, prior: DirectFarState, entry: int) -> DirectFarState:
    S, l = rules.S, prior.l
    delta = prior.delta + (entry,)
    k = len(delta)
    R = [list(prior.R0), list(prior.R1)]
    i, w = divmod(k - 1, 2)
    for f, r, t, wr in rules.right:
        if wr == w:
            R[r][S * i + f] |= 1 << (S * delta[k - 1] + t)
    changed = True
    while changed:
        changed = False
        for f, r, t, w in rules.left:
            Rw = R[w]
            for ib in range(k):
                i, b = divmod(ib, 2)
                v = row_times(R[b][S * i + t], Rw)
                row = S * delta[ib] + f
                if v & ~R[r][row]:
                    R[r][row] |= v
                    changed = True
    aT = prior.aT
    R0 = R[0]
    while True:
        new = aT
        for idx, row in enumerate(R0):
            if row & aT:
                new |= 1 << idx
        if new == aT:
            break
        aT = new
    return DirectFarState(l, S, delta, tuple(R[0]), tuple(R[1]), aT)


def solve_minimal_right_nfa(table: TransitionTable, delta: Sequence[int], l: int,
                            prior: Optional[DirectFarState] = None) -> DirectFarState:
    '''Least (R0, R1, aT) for the prefix ``delta``; ``prior`` may hold the
    solution for a prefix of ``delta`` to start from.'''
    if delta and delta[0] != 0:
        raise ValueError("delta must map state 0 to itself on 0")
    rules = _Rules(table)
    state = prior if prior is not None else initial_state(table, l)
    if tuple(delta[:len(state.delta)]) != state.delta:
        raise ValueError("prior is not a prefix of delta")
    for entry in delta[len(state.delta):]:
        state = _extend(rules, state, entry)
    return state


class PartialChecker:
    '''CHECK procedure with one saved solution per prefix length, so that
    backtracking costs nothing.'''

    def __init__(self, table: TransitionTable, l: int):
        self.rules = _Rules(table)
        self.l = l
        self.snapshots = [initial_state(table, l)]
        self.found: Optional[DirectFarState] = None
        self.calls = 0

    def __call__(self, prefix: Sequence[int]) -> CheckResult:
        self.calls += 1
        k = len(prefix)
        del self.snapshots[k:]
        state = _extend(self.rules, self.snapshots[k - 1], prefix[k - 1])
        self.snapshots.append(state)
        if not state.rejects_initial():
            return CheckResult.SKIP
        if k == 2 * self.l:
            self.found = state
            return CheckResult.STOP
        return CheckResult.MORE


def check_partial(table: TransitionTable, prefix: Sequence[int], l: int) -> CheckResult:
    '''Stateless version of the CHECK procedure (recomputes from scratch).'''
    state = solve_minimal_right_nfa(table, prefix, l)
    if not state.rejects_initial():
        return CheckResult.SKIP
    return CheckResult.STOP if len(prefix) == 2 * l else CheckResult.MORE


def search_dfa(n: int, check: Callable[[list], CheckResult], max_calls: Optional[int] = None) -> bool:
    '''Walk canonical n-state DFA tables (states numbered in order of first
    appearance, state 0 looping on 0) depth first, pruning on SKIP.'''
    k = 1
    t = [0] * (2 * n)
    m = [0] * (2 * n)
    calls = 0
    while True:
        calls += 1
        if max_calls is not None and calls > max_calls:
            return False
        result = check(t[:k])
        if result is CheckResult.STOP:
            return True
        if result is CheckResult.MORE:
            q_new = m[k - 1] + 1
            t[k] = q_new if (q_new < n and 2 * q_new - 1 == k) else 0
        else:
            while True:
                if k <= 1:
                    return False
                k -= 1
                if t[k] <= m[k - 1] and t[k] < n - 1:
                    break
            t[k] += 1
        m[k] = max(m[k - 1], t[k])
        k += 1


def assemble_nfa(state: DirectFarState) -> BooleanNFA:
    '''Block NFA: left DFA states first, then the d right-hand states.'''
    l, S, d = state.l, state.n_states, state.d
    n = l + d
    delta = state.delta
    T = {}
    for b, R in (("0", state.R0), ("1", state.R1)):
        rows = [1 << delta[2 * i + int(b)] for i in range(l)]
        rows += [row << l for row in R]
        T[b] = BoolMatrix(n, n, tuple(rows))
    for f in range(S):
        rows = [1 << (l + S * i + f) for i in range(l)] + [0] * d
        T[LETTERS[f]] = BoolMatrix(n, n, tuple(rows))
    return BooleanNFA(n, 1, T, state.aT << l, 1 << (l + state.sink))


def _scan_table(table: TransitionTable, left_to_right: bool) -> TransitionTable:
    return table if left_to_right else table.mirrored()


def decide_far_direct(table: TransitionTable, n: int, left_to_right: bool = True,
                      max_calls: Optional[int] = None) -> Decision:
    '''Search n-state left DFAs; on success the assembled NFA is verified
    before NonHalt is reported.'''
    if n < 1:
        raise ValueError("n must be >= 1")
    work = _scan_table(table, left_to_right)
    checker = PartialChecker(work, n)
    direction = "left-to-right" if left_to_right else "right-to-left"
    if not search_dfa(n, checker, max_calls):
        return unknown(FAR_DIRECT, n=n, direction=direction, checks=checker.calls)
    return _certify(table, work, checker.found, direction, FAR_DIRECT)


def _certify(table, work, state: DirectFarState, direction: str, decider: str) -> Decision:
    nfa = assemble_nfa(state)
    violation = far_certificate_violation(work, nfa)
    if violation is not None:
        raise AssertionError(f"assembled NFA fails {violation}")
    cert = far_certificate(format_machine(table), direction, state)
    return nonhalt(decider, certificate=cert, n=state.l, direction=direction)


def decide_far_with_dfa(table: TransitionTable, delta: Sequence[int], left_to_right: bool = True,
                        decider: str = FAR_DIRECT) -> Decision:
    '''Check one complete left DFA.'''
    l = len(delta) // 2
    work = _scan_table(table, left_to_right)
    state = solve_minimal_right_nfa(work, delta, l)
    direction = "left-to-right" if left_to_right else "right-to-left"
    if not state.rejects_initial():
        return unknown(decider, n=l, direction=direction)
    return _certify(table, work, state, direction, decider)


def decide_far_direct_sweep(table: TransitionTable, n_max: int = 4, max_calls: Optional[int] = None) -> Decision:
    last = unknown(FAR_DIRECT)
    for n in range(1, n_max + 1):
        for ltr in (True, False):
            last = decide_far_direct(table, n, ltr, max_calls)
            if last.nonhalt:
                return last
    return last
