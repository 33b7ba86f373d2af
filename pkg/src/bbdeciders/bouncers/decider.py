"""The bouncers decider and its certificates.

Record-breaking tapes of a bouncer grow linearly in length at quadratically
spaced steps.  Three of them are fitted into a formula tape, which is then
stepped symbolically until it becomes a special case of itself.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..decision import Decision, halted, nonhalt, unknown
from ..tm import DirectionalTape, Halted, LETTERS, Simulator, TransitionTable, format_machine, parse_machine
from .fitting import fit_formula_tape, is_quadratic
from .formula import FormulaTape, Headless, align, format_formula, is_special_case, parse_formula, tape_in_language
from .steps import formula_step_with_rule

BOUNCERS = "bouncers"
_BITS = bytes.maketrans(b"\x00\x01", b"01")


@dataclass
class BouncerCertificate:
    machine: str
    formula: str
    start_step: int
    macro_steps: int
    shift_rules: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"version": 1, "kind": "bouncer", "machine": self.machine, "formula": self.formula,
               "start_step": self.start_step, "macro_steps": self.macro_steps}
        if self.shift_rules:
            out["shift_rules"] = self.shift_rules
        return out

    @classmethod
    def from_json(cls, data: dict) -> "BouncerCertificate":
        if data.get("version", 1) != 1:
            raise ValueError("unsupported certificate version")
        return cls(data["machine"], data["formula"], int(data["start_step"]), int(data["macro_steps"]),
                   list(data.get("shift_rules", [])))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class RecordTapes(dict):
    '''(state, ">" or "<") -> [(step, word)]; left-end words are reversed so
    that the head always sits at the end of the word.  ``halted`` is set
    when the machine halted during the simulation.'''
    halted: Optional[Halted] = None


def record_breaking_tapes(table: TransitionTable, step_limit: int) -> RecordTapes:
    '''Tapes at the steps where the head stands on a cell never read before.
    The word is the part of the tape read so far.'''
    if step_limit < 0:
        raise ValueError("step_limit must be >= 0")
    sim = Simulator(table)
    out = RecordTapes()
    lo, hi = 0, -1
    while sim.steps <= step_limit:
        p = sim.head
        if sim.steps > 0 and (p > hi or p < lo):
            off = sim.offset
            word = bytes(sim.tape[lo + off:hi + off + 1]).translate(_BITS).decode()
            if p > hi:
                key, stored = (sim.state, ">"), word
            else:
                key, stored = (sim.state, "<"), word[::-1]
            out.setdefault(key, []).append((sim.steps, stored))
        lo, hi = min(lo, p), max(hi, p)
        if sim.steps == step_limit:
            break
        if not sim.step():
            out.halted = sim.halted
            break
    return out


def directional_tape_after(table: TransitionTable, steps: int):
    '''Directional tape after ``steps`` steps from 0^inf A> 0^inf, or Halted.'''
    sim = Simulator(table)
    lo, hi = 0, -1
    facing_right = True
    while sim.steps < steps:
        p = sim.head
        if not sim.step():
            return sim.halted
        lo, hi = min(lo, p), max(hi, p)
        facing_right = sim.head > p
    p, off = sim.head, sim.offset

    def cells(a, b):
        if b < a:
            return ""
        return bytes(sim.tape[a + off:b + off + 1]).translate(_BITS).decode()

    if facing_right:
        left, right = cells(lo, p - 1), cells(p, hi)
    else:
        left, right = cells(lo, p), cells(p + 1, hi)
    return DirectionalTape(left, sim.state, facing_right, right, True, True, lo)


def attach_head(fit: Headless, state: int, orientation: str) -> FormulaTape:
    '''Formula for a record tape: the head at the 0^inf end it just reached.'''
    empty = Headless(("",), ())
    if orientation == ">":
        return FormulaTape.from_sides(fit, state, True, empty)
    return FormulaTape.from_sides(empty, state, False, fit.reversed())


def reaches_special_case(table: TransitionTable, f: FormulaTape, macro_limit: int = 200,
                         start_step: int = 0) -> Optional[BouncerCertificate]:
    '''Apply macro steps until an iterate is a special case of f.'''
    if macro_limit < 1:
        raise ValueError("macro_limit must be >= 1")
    cur = f
    rules = []
    for n in range(1, macro_limit + 1):
        nxt, rule = formula_step_with_rule(table, align(cur))
        if not isinstance(nxt, FormulaTape):
            return None
        if rule is not None:
            rules.append(rule.to_json())
        if is_special_case(nxt, f):
            return BouncerCertificate(format_machine(table), format_formula(f), start_step, n, rules)
        cur = nxt
    return None


def decide_bouncers(table: TransitionTable, step_limit: int = 1000, macro_limit: int = 200,
                    max_formula_tapes: int = 16) -> Decision:
    records = record_breaking_tapes(table, step_limit)
    if records.halted is not None:
        h = records.halted
        return halted(BOUNCERS, h.step, h.state, h.read)
    tested_total = 0
    for (state, orientation), tapes in records.items():
        lengths = [len(w) for _, w in tapes]
        tested = 0
        for i in range(3, len(tapes)):
            step4, tape4 = tapes[i]
            for j in range(2, i):
                step3, tape3 = tapes[j]
                diff = len(tape4) - len(tape3)
                k = bisect.bisect_left(lengths, len(tape3) - diff, 0, j)
                if k == j or lengths[k] != len(tape3) - diff:
                    continue
                step2, tape2 = tapes[k]
                h = bisect.bisect_left(lengths, len(tape2) - diff, 0, k)
                if h == k or lengths[h] != len(tape2) - diff:
                    continue
                step1, tape1 = tapes[h]
                if not is_quadratic([step1, step2, step3, step4]):
                    continue
                fit = fit_formula_tape(tape1, tape2, tape3)
                if fit is None:
                    continue
                formula = attach_head(fit, state, orientation)
                tested += 1
                tested_total += 1
                cert = reaches_special_case(table, formula, macro_limit, step1)
                if cert is not None:
                    return nonhalt(BOUNCERS, certificate=cert.to_json(), formula=cert.formula,
                                   start_step=cert.start_step, macro_steps=cert.macro_steps)
                if tested >= max_formula_tapes:
                    break
            if tested >= max_formula_tapes:
                break
    return unknown(BOUNCERS, tested=tested_total)


def bouncer_certificate_violation(table: TransitionTable, cert: BouncerCertificate) -> Optional[str]:
    '''First failed check, or None when the certificate is valid.'''
    if parse_machine(cert.machine) != table:
        return "certificate is for another machine"
    f = parse_formula(cert.formula)
    if cert.macro_steps < 1:
        return "macro step count must be positive"
    if f.state >= table.n_states:
        return "formula head state is not a machine state"
    tape = directional_tape_after(table, cert.start_step)
    if isinstance(tape, Halted):
        return f"machine halts at step {tape.step}"
    if not tape_in_language(tape, f):
        return f"tape at step {cert.start_step} is not in the formula's language"
    cur = f
    for n in range(cert.macro_steps):
        nxt, _ = formula_step_with_rule(table, align(cur))
        if not isinstance(nxt, FormulaTape):
            return f"macro step {n + 1} fails ({nxt!r})"
        cur = nxt
    if not is_special_case(cur, f):
        return f"formula after {cert.macro_steps} macro steps is not a special case"
    return None


def verify_bouncer_certificate(table: TransitionTable, cert) -> bool:
    if isinstance(cert, dict):
        cert = BouncerCertificate.from_json(cert)
    return bouncer_certificate_violation(table, cert) is None
