"""Finite automata reduction: NFAs that recognise every eventually-halting
configuration but not the initial one."""
