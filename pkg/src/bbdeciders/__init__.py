"""Deciders and certificates for the non-halting of small Turing machines."""

from .decision import Decision, Verdict
from .tm import (
    Configuration,
    DirectionalTape,
    Halted,
    RunningAtLimit,
    TransitionTable,
    directional_step,
    format_machine,
    machine_step,
    parse_machine,
    simulate,
    word_representation,
)

__version__ = "0.1.0"
