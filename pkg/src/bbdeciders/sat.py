"""A small CDCL satisfiability solver.

Two watched literals for unit propagation, first-UIP clause learning,
activity-based branching (ties broken by the smaller variable index) and
Luby restarts.  Everything is deterministic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import List, Optional


@dataclass
class Cnf:
    n_vars: int
    clauses: List[List[int]] = field(default_factory=list)

    def add(self, clause) -> None:
        clause = list(clause)
        for lit in clause:
            if lit == 0 or abs(lit) > self.n_vars:
                raise ValueError(f"literal {lit} out of range")
        self.clauses.append(clause)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dimacs(cls, text: str) -> "Cnf":
        n_vars = None
        lits = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line[0] in "c%":
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) != 4 or parts[1] != "cnf":
                    raise ValueError(f"bad problem line: {line!r}")
                n_vars = int(parts[2])
                continue
            lits += [int(x) for x in line.split()]
        if n_vars is None:
            raise ValueError("missing problem line")
        cnf = cls(n_vars)
        cur = []
        for x in lits:
            if x == 0:
                cnf.add(cur)
                cur = []
            else:
                cur.append(x)
        if cur:
            cnf.add(cur)
        return cnf

    def satisfied_by(self, assignment) -> bool:
        '''``assignment[v - 1]`` is the value of variable v.'''
        return all(any((lit > 0) == assignment[abs(lit) - 1] for lit in c) for c in self.clauses)


def _luby(i: int) -> int:
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while (1 << k) - 1 != i:
        if (1 << (k - 1)) - 1 < i:
            i -= (1 << (k - 1)) - 1
            k = 1
            while (1 << k) - 1 < i:
                k += 1
        else:
            k -= 1
    return 1 << (k - 1)


class Solver:
    def __init__(self, cnf: Cnf):
        self.cnf = cnf
        n = cnf.n_vars
        self.n = n
        self.value = [0] * (n + 1)  # 0 unassigned, 1 true, -1 false
        self.level = [0] * (n + 1)
        self.reason: list = [None] * (n + 1)
        self.phase = [-1] * (n + 1)
        self.activity = [0.0] * (n + 1)
        self.bump = 1.0
        self.trail: list = []
        self.trail_lim: list = []
        self.qhead = 0
        self.clauses: list = []
        self.watches = {}
        self.heap = [(0.0, v) for v in range(1, n + 1)]
        heapq.heapify(self.heap)
        self.conflicts = 0
        self.unsat = False

    # literal helpers
    def _val(self, lit: int) -> int:
        v = self.value[abs(lit)]
        return v if lit > 0 else -v

    def _assign(self, lit: int, reason) -> None:
        var = abs(lit)
        self.value[var] = 1 if lit > 0 else -1
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(lit)

    def _watch(self, ci: int) -> None:
        c = self.clauses[ci]
        self.watches.setdefault(-c[0], []).append(ci)
        self.watches.setdefault(-c[1], []).append(ci)

    def _add_clause(self, clause) -> bool:
        clause = sorted(set(clause), key=lambda x: (abs(x), x))
        if any(-lit in clause for lit in clause):
            return True
        if not clause:
            return False
        if len(clause) == 1:
            lit = clause[0]
            if self._val(lit) < 0:
                return False
            if self._val(lit) == 0:
                self._assign(lit, None)
            return True
        self.clauses.append(clause)
        self._watch(len(self.clauses) - 1)
        return True

    def _propagate(self):
        '''Returns the index of a conflicting clause or None.'''
        while self.qhead < len(self.trail):
            lit = self.trail[self.qhead]
            self.qhead += 1
            watching = self.watches.get(lit, [])
            keep = []
            conflict = None
            i = 0
            while i < len(watching):
                ci = watching[i]
                i += 1
                c = self.clauses[ci]
                false_lit = -lit
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if self._val(c[0]) > 0:
                    keep.append(ci)
                    continue
                for k in range(2, len(c)):
                    if self._val(c[k]) >= 0:
                        c[1], c[k] = c[k], c[1]
                        self.watches.setdefault(-c[1], []).append(ci)
                        break
                else:
                    keep.append(ci)
                    if self._val(c[0]) < 0:
                        conflict = ci
                        keep.extend(watching[i:])
                        break
                    self._assign(c[0], ci)
            self.watches[lit] = keep
            if conflict is not None:
                return conflict
        return None

    def _bump_var(self, var: int) -> None:
        self.activity[var] += self.bump
        if self.activity[var] > 1e100:
            for v in range(1, self.n + 1):
                self.activity[v] *= 1e-100
            self.bump *= 1e-100
            self.heap = [(-self.activity[v], v) for v in range(1, self.n + 1) if self.value[v] == 0]
            heapq.heapify(self.heap)
            return
        heapq.heappush(self.heap, (-self.activity[var], var))

    def _analyze(self, ci: int):
        '''First-UIP learning; returns (learnt clause, backtrack level).'''
        seen = [False] * (self.n + 1)
        learnt = [0]
        counter = 0
        lit = None
        idx = len(self.trail) - 1
        cur_level = len(self.trail_lim)
        clause = self.clauses[ci]
        while True:
            for q in clause:
                if lit is not None and q == lit:
                    continue
                var = abs(q)
                if not seen[var] and self.level[var] > 0:
                    seen[var] = True
                    self._bump_var(var)
                    if self.level[var] >= cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[abs(self.trail[idx])]:
                idx -= 1
            lit = self.trail[idx]
            idx -= 1
            var = abs(lit)
            seen[var] = False
            counter -= 1
            if counter == 0:
                break
            clause = self.clauses[self.reason[var]]
        learnt[0] = -lit
        if len(learnt) == 1:
            return learnt, 0
        # put the literal with the highest level second
        best = max(range(1, len(learnt)), key=lambda k: self.level[abs(learnt[k])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def _backtrack(self, level: int) -> None:
        if len(self.trail_lim) <= level:
            return
        stop = self.trail_lim[level]
        for lit in self.trail[stop:]:
            var = abs(lit)
            self.phase[var] = self.value[var]
            self.value[var] = 0
            self.reason[var] = None
            heapq.heappush(self.heap, (-self.activity[var], var))
        del self.trail[stop:]
        del self.trail_lim[level:]
        self.qhead = len(self.trail)

    def _pick(self) -> Optional[int]:
        while self.heap:
            act, var = heapq.heappop(self.heap)
            if self.value[var] == 0 and -act == self.activity[var]:
                return var
        for var in range(1, self.n + 1):
            if self.value[var] == 0:
                return var
        return None

    def solve(self) -> Optional[List[bool]]:
        for clause in self.cnf.clauses:
            if not self._add_clause(clause):
                return None
        if self._propagate() is not None:
            return None
        restart_no = 1
        budget = 100 * _luby(restart_no)
        since_restart = 0
        while True:
            ci = self._propagate()
            if ci is not None:
                self.conflicts += 1
                since_restart += 1
                if not self.trail_lim:
                    return None
                learnt, back = self._analyze(ci)
                self._backtrack(back)
                if len(learnt) == 1:
                    self._assign(learnt[0], None)
                else:
                    self.clauses.append(learnt)
                    self._watch(len(self.clauses) - 1)
                    self._assign(learnt[0], len(self.clauses) - 1)
                self.bump *= 1.05
                continue
            if since_restart >= budget:
                self._backtrack(0)
                restart_no += 1
                budget = 100 * _luby(restart_no)
                since_restart = 0
            var = self._pick()
            if var is None:
                model = [self.value[v] > 0 for v in range(1, self.n + 1)]
                if not self.cnf.satisfied_by(model):
                    raise AssertionError("solver produced a non-model")
                return model
            self.trail_lim.append(len(self.trail))
            self._assign(var if self.phase[var] > 0 else -var, None)


def solve_cnf(cnf: Cnf) -> Optional[List[bool]]:
    '''A satisfying assignment (index v - 1 for variable v) or None if UNSAT.'''
    return Solver(cnf).solve()
