"""Meet-in-the-middle FAR: search a left DFA and a right DFA together with
a SAT solver.

``A[i, f, r, j]`` says "left DFA state i, head in state f reading r,
right DFA state j" is accepted (may lead to halting).  ``tk_eq[side, k,
y]`` says table entry k of that side's DFA is y, ``tk_le`` its running
"at most y" form, and ``mk_eq[side, k, y]`` says the largest state used in
entries 0..k is y.  Indices that can never hold are boolean constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..decision import Decision, unknown
from ..sat import Cnf, solve_cnf
from ..tm import TransitionTable
from .direct import decide_far_with_dfa

FAR_MITM = "far-mitm"
SIDES = ("L", "R")


def _neg(lit):
    return (not lit) if isinstance(lit, bool) else -lit


@dataclass
class MitmInstance:
    n: int
    n_states: int
    n_vars: int = 0
    tk_eq: Dict[tuple, object] = field(default_factory=dict)
    tk_le: Dict[tuple, object] = field(default_factory=dict)
    mk_eq: Dict[tuple, object] = field(default_factory=dict)
    A: Dict[tuple, object] = field(default_factory=dict)
    clauses: List[tuple] = field(default_factory=list)  # may contain constants

    def cnf(self) -> Cnf:
        '''Clauses with constants folded away; an empty clause means UNSAT.'''
        out = Cnf(self.n_vars)
        for clause in self.clauses:
            if any(lit is True for lit in clause):
                continue
            out.clauses.append([lit for lit in clause if lit is not False])
        return out

    def value(self, lit, model) -> bool:
        if isinstance(lit, bool):
            return lit
        v = model[abs(lit) - 1]
        return v if lit > 0 else not v

    def dfa(self, side: str, model) -> list:
        '''Transition table of one side's DFA read off a model.'''
        out = []
        for k in range(2 * self.n):
            ys = [y for y in range(self.n) if self.value(self.tk_eq[side, k, y], model)]
            if len(ys) != 1:
                raise ValueError(f"entry {k} of the {side} DFA is not determined")
            out.append(ys[0])
        return out


def encode_mitm_cnf(table: TransitionTable, n: int) -> MitmInstance:
    if n < 1:
        raise ValueError("n must be >= 1")
    S = table.n_states
    inst = MitmInstance(n, S)

    def new_var():
        inst.n_vars += 1
        return inst.n_vars

    for lr in SIDES:
        for k in range(2 * n):
            for y in range(n + 1):
                if (k, y) == (0, 0) or (y == 0 and n == 1):
                    inst.tk_eq[lr, k, y] = True
                elif 0 <= y <= min(k, n - 1):
                    inst.tk_eq[lr, k, y] = new_var()
                else:
                    inst.tk_eq[lr, k, y] = False
        for k in range(2 * n):
            for y in range(n + 1):
                if y <= 0:
                    inst.tk_le[lr, k, y] = inst.tk_eq[lr, k, 0]
                elif y <= min(k - 1, n - 2):
                    inst.tk_le[lr, k, y] = new_var()
                else:
                    inst.tk_le[lr, k, y] = True
        for k in range(2 * n):
            for y in range(n + 1):
                lo, hi = (k + 1) // 2, min(n, k + 1)
                if (k, y) == (2 * n - 1, n - 1):
                    inst.mk_eq[lr, k, y] = True
                elif not lo <= y < hi:
                    inst.mk_eq[lr, k, y] = False
                elif hi - lo <= 1:
                    inst.mk_eq[lr, k, y] = True
                else:
                    inst.mk_eq[lr, k, y] = new_var()
    for i in range(n):
        for f in range(S):
            for r in (0, 1):
                for j in range(n):
                    inst.A[i, f, r, j] = False if (i, f, r, j) == (0, 0, 0, 0) else new_var()

    def tk_eq(lr, k, y):
        return inst.tk_eq.get((lr, k, y), False)

    def tk_le(lr, k, y):
        if y < 0:
            return False
        return inst.tk_le.get((lr, k, y), True)

    def mk_eq(lr, k, y):
        return inst.mk_eq.get((lr, k, y), False)

    add = inst.clauses.append
    # each table entry takes exactly one value
    for lr in SIDES:
        for k in range(2 * n):
            for y in range(n):
                add((_neg(tk_eq(lr, k, y)), tk_le(lr, k, y)))
                add((_neg(tk_le(lr, k, y)), tk_le(lr, k, y + 1)))
                add((_neg(tk_eq(lr, k, y + 1)), _neg(tk_le(lr, k, y))))
    for lr in SIDES:
        for k in range(1, 2 * n):
            add(tuple(tk_eq(lr, k, y) for y in range(min(k, n - 1) + 1)))
    # closure under the machine's rules
    A = inst.A
    for (f, r), t in table.transitions():
        if t is None:
            for i in range(n):
                for j in range(n):
                    add((A[i, f, r, j],))
    rng = range(n)
    for (f, r), t in table.transitions():
        if t is None or t.move > 0:
            continue
        tn, w = t.next, t.write
        for i in rng:
            for j in rng:
                for ib in rng:
                    for jw in rng:
                        for b in (0, 1):
                            add((_neg(tk_eq("L", 2 * i + b, ib)), _neg(tk_eq("R", 2 * j + w, jw)),
                                 _neg(A[i, tn, b, jw]), A[ib, f, r, j]))
    for (f, r), t in table.transitions():
        if t is None or t.move < 0:
            continue
        tn, w = t.next, t.write
        for i in rng:
            for j in rng:
                for iw in rng:
                    for jb in rng:
                        for b in (0, 1):
                            add((_neg(tk_eq("R", 2 * j + b, jb)), _neg(tk_eq("L", 2 * i + w, iw)),
                                 _neg(A[iw, tn, b, j]), A[i, f, r, jb]))
    # canonical numbering of DFA states
    for lr in SIDES:
        for k in range(1, 2 * n):
            for m in range(k // 2, min(n, k) + 1):
                prev = _neg(mk_eq(lr, k - 1, m))
                add((prev, tk_le(lr, k, m + 1)))
                add((prev, _neg(tk_le(lr, k, m)), mk_eq(lr, k, m)))
                add((prev, _neg(tk_eq(lr, k, m + 1)), mk_eq(lr, k, m + 1)))
    return inst


def decide_far_mitm(table: TransitionTable, n: int) -> Decision:
    '''Solve the CNF; a model only yields NonHalt after its left (or right)
    DFA passes the direct construction and the certificate check.'''
    inst = encode_mitm_cnf(table, n)
    model = solve_cnf(inst.cnf())
    if model is None:
        return unknown(FAR_MITM, n=n, sat=False)
    for side, ltr in (("L", True), ("R", False)):
        decision = decide_far_with_dfa(table, inst.dfa(side, model), ltr, FAR_MITM)
        if decision.nonhalt:
            return decision
    return unknown(FAR_MITM, n=n, sat=True)


def decide_far_mitm_sweep(table: TransitionTable, n_max: int = 3) -> Decision:
    last = unknown(FAR_MITM)
    for n in range(1, n_max + 1):
        last = decide_far_mitm(table, n)
        if last.nonhalt:
            return last
    return last
