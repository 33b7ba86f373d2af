"""Shift rules and single steps on formula tapes."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Tuple, Union

from ..tm import LETTERS, Halted, TransitionTable
from .formula import FormulaTape, align

SHIFT_BUDGET_CAP = 10_000


@dataclass(frozen=True)
class ShiftRule:
    '''``u s> r`` rewrites to ``(r_tilde) u s>`` when ``rightward``; the
    mirror ``(r) <s u`` to ``<s u (r_tilde)`` otherwise.  ``steps`` machine
    steps carry the head across one copy of r.'''
    rightward: bool
    u: str
    state: int
    r: str
    r_tilde: str
    steps: int

    def to_json(self) -> dict:
        return {"u": self.u, "state": LETTERS[self.state], "dir": "R" if self.rightward else "L",
                "r": self.r, "r_tilde": self.r_tilde, "steps": self.steps}


def default_shift_budget(n_states: int, length: int, cap: int = SHIFT_BUDGET_CAP) -> int:
    return min(n_states * (length + 1) * 2 ** min(length, 20), cap)


def detect_shift_rule(table: TransitionTable, u: str, state: int, rightward: bool, r: str,
                      step_budget: Optional[int] = None) -> Optional[ShiftRule]:
    '''Simulate on the finite word u·r (or r·u) and report the rule when the
    head leaves through the far end in the same state with u intact.'''
    if not r:
        raise ValueError("repeater must be nonempty")
    word = list(u + r if rightward else r + u)
    size = len(word)
    if step_budget is None:
        step_budget = default_shift_budget(table.n_states, size)
    if step_budget < 1:
        raise ValueError("step_budget must be >= 1")
    # gap g sits between cells g-1 and g
    gap = len(u) if rightward else len(r)
    facing_right = rightward
    s = state
    seen = set()
    steps = 0
    while True:
        if facing_right and gap == size:
            if not rightward or s != state:
                return None
            if u and "".join(word[size - len(u):]) != u:
                return None
            return ShiftRule(True, u, state, r, "".join(word[:len(r)]), steps)
        if not facing_right and gap == 0:
            if rightward or s != state:
                return None
            if "".join(word[:len(u)]) != u:
                return None
            return ShiftRule(False, u, state, r, "".join(word[len(u):]), steps)
        if steps >= step_budget:
            return None
        key = (s, gap, facing_right, "".join(word))
        if key in seen:
            return None
        seen.add(key)
        cell = gap if facing_right else gap - 1
        t = table[s, int(word[cell])]
        if t is None:
            return None
        word[cell] = str(t.write)
        if t.move > 0:
            gap, facing_right = cell + 1, True
        else:
            gap, facing_right = cell, False
        s = t.next
        steps += 1


class NoRule:
    '''Returned when no step applies to a formula tape.'''

    def __repr__(self):
        return "NoRule"


NO_RULE = NoRule()

StepResult = Union[FormulaTape, Halted, NoRule]


def _usual_step(table: TransitionTable, f: FormulaTape, read: int, lw: str, rw: str):
    t = table[f.state, read]
    if t is None:
        return Halted(1, f.state, read)
    if t.move < 0:
        rw = str(t.write) + rw
    else:
        lw = lw + str(t.write)
    return replace(f, lwalls=f.lwalls[:-1] + (lw,), rwalls=(rw,) + f.rwalls[1:],
                   state=t.next, facing_right=t.move > 0)


def formula_step_with_rule(table: TransitionTable, f: FormulaTape,
                           shift_cap: int = SHIFT_BUDGET_CAP) -> Tuple[StepResult, Optional[ShiftRule]]:
    '''One step of f: a usual step when the head faces a wall symbol or 0^inf,
    otherwise the shift rule with the shortest context u.'''
    lw, rw = f.lwalls[-1], f.rwalls[0]
    if f.facing_right:
        if rw:
            return _usual_step(table, f, int(rw[0]), lw, rw[1:]), None
        if not f.rreps:
            if f.right_inf:
                return _usual_step(table, f, 0, lw, rw), None
            return NO_RULE, None
        r = f.rreps[0]
        for k in range(len(lw) + 1):
            u = lw[len(lw) - k:]
            rule = detect_shift_rule(table, u, f.state, True, r,
                                     default_shift_budget(table.n_states, len(u) + len(r), shift_cap))
            if rule is not None:
                g = replace(f, lwalls=f.lwalls[:-1] + (lw[:len(lw) - k], u), lreps=f.lreps + (rule.r_tilde,),
                            rwalls=f.rwalls[1:], rreps=f.rreps[1:])
                return g, rule
        return NO_RULE, None
    if lw:
        return _usual_step(table, f, int(lw[-1]), lw[:-1], rw), None
    if not f.lreps:
        if f.left_inf:
            return _usual_step(table, f, 0, lw, rw), None
        return NO_RULE, None
    r = f.lreps[-1]
    for k in range(len(rw) + 1):
        u = rw[:k]
        rule = detect_shift_rule(table, u, f.state, False, r,
                                 default_shift_budget(table.n_states, len(u) + len(r), shift_cap))
        if rule is not None:
            g = replace(f, lwalls=f.lwalls[:-1], lreps=f.lreps[:-1],
                        rwalls=(u, rw[k:]) + f.rwalls[1:], rreps=(rule.r_tilde,) + f.rreps)
            return g, rule
    return NO_RULE, None


def formula_step(table: TransitionTable, f: FormulaTape) -> StepResult:
    return formula_step_with_rule(table, f)[0]


def macro_step(table: TransitionTable, f: FormulaTape) -> StepResult:
    '''Align, then take one step.'''
    return formula_step(table, align(f))
