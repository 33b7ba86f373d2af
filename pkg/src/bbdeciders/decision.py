"""Decider verdicts shared by every decider."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class Verdict(str, Enum):
    HALT = "halt"
    NONHALT = "nonhalt"
    UNKNOWN = "unknown"


@dataclass
class Decision:
    verdict: Verdict
    decider: str
    witness: dict = field(default_factory=dict)
    certificate: Optional[dict] = None

    @property
    def nonhalt(self) -> bool:
        return self.verdict is Verdict.NONHALT

    def to_json(self, machine: str) -> dict:
        out = {"machine": machine, "decider": self.decider, "verdict": self.verdict.value}
        if self.witness:
            out["witness"] = dict(self.witness)
        return out


def unknown(decider: str, **witness) -> Decision:
    return Decision(Verdict.UNKNOWN, decider, witness)


def nonhalt(decider: str, certificate=None, **witness) -> Decision:
    return Decision(Verdict.NONHALT, decider, witness, certificate)


def halted(decider: str, step: int, state: int, read: int) -> Decision:
    return Decision(Verdict.HALT, decider, {"step": step, "state": state, "read": read})
