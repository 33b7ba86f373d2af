"""Stand-alone check that an NFA proves a machine never halts.

The NFA reads configurations written as words over {0, 1, A, B, ...} with
the state letter placed before the head cell.  The conditions below make
it accept every eventually-halting configuration while rejecting the
initial one.
"""

from __future__ import annotations

from typing import Optional

from ..tm import LETTERS, TransitionTable
from .boolean import BooleanNFA, row_times, vec_leq


def _closure(nfa: BooleanNFA) -> list:
    seen = {nfa.q0}
    todo = [nfa.q0]
    m0, m1 = nfa.transitions["0"].rows, nfa.transitions["1"].rows
    while todo:
        q = todo.pop()
        for m in (m0, m1):
            nq = row_times(q, m)
            if nq not in seen:
                seen.add(nq)
                todo.append(nq)
    return sorted(seen)


def far_certificate_violation(table: TransitionTable, nfa: BooleanNFA) -> Optional[str]:
    '''Name of the first violated condition, or None when all hold.'''
    letters = [LETTERS[i] for i in range(table.n_states)]
    for sym in ["0", "1"] + letters:
        if sym not in nfa.transitions:
            raise ValueError(f"NFA has no matrix for {sym!r}")
    if nfa.s is None:
        raise ValueError("NFA has no steady state")
    T = nfa.transitions
    T0, T1 = T["0"], T["1"]
    if row_times(nfa.q0, T0.rows) != nfa.q0:
        return "q0·T0 = q0"
    # T0 · a^T = a^T, column by column: row i of T0 meets a iff a_i
    for i, r in enumerate(T0.rows):
        if bool(r & nfa.a) != bool((nfa.a >> i) & 1):
            return "T0·a^T = a^T"
    if nfa.s & nfa.a == 0:
        return "s·a^T = 1"
    for b, Tb in (("0", T0), ("1", T1)):
        if not vec_leq(nfa.s, row_times(nfa.s, Tb.rows)):
            return f"s·T{b} ⪰ s"
    halting = table.halting_transitions()
    for q in _closure(nfa):
        for f, r in halting:
            v = row_times(row_times(q, T[letters[f]].rows), T[str(r)].rows)
            if not vec_leq(nfa.s, v):
                return f"q·T{letters[f]}·T{r} ⪰ s for q in the closure of q0"
    for (f, r), t in table.transitions():
        if t is None:
            continue
        Tf, Tr, Tt, Tw = T[letters[f]], T[str(r)], T[letters[t.next]], T[str(t.write)]
        if t.move < 0:
            for b, Tb in (("0", T0), ("1", T1)):
                if not (Tb @ Tf @ Tr) >= (Tt @ Tb @ Tw):
                    return (f"T{b}·T{letters[f]}·T{r} ⪰ T{letters[t.next]}·T{b}·T{t.write} "
                            f"(left rule {letters[f]}{r})")
        else:
            if not (Tf @ Tr) >= (Tw @ Tt):
                return f"T{letters[f]}·T{r} ⪰ T{t.write}·T{letters[t.next]} (right rule {letters[f]}{r})"
    if row_times(nfa.q0, T["A"].rows) & nfa.a:
        return "q0·TA·a^T = 0"
    return None


def verify_far_certificate(table: TransitionTable, nfa: BooleanNFA) -> bool:
    return far_certificate_violation(table, nfa) is None
