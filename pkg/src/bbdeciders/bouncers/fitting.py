"""Guessing a formula from three growing tapes, and small word utilities."""

from __future__ import annotations

from math import gcd
from typing import Optional, Sequence

from .formula import Headless


def _lcp(a: str, b: str) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def fit_formula_tape(t0: str, t1: str, t2: str) -> Optional[Headless]:
    '''Greedy fit of a one-sided formula f with t_k = f with every repeater
    taken k times.  Walls grow while all three words agree; otherwise the
    longest prefix r of t1 such that t2 starts with rr becomes a repeater.
    Returns None when neither move applies.'''
    walls, reps = [""], []
    i0 = i1 = i2 = 0
    while True:
        if i0 == len(t0) and i1 == len(t1) and i2 == len(t2):
            return Headless(tuple(walls), tuple(reps))
        if i0 < len(t0) and i1 < len(t1) and i2 < len(t2) and t0[i0] == t1[i1] == t2[i2]:
            walls[-1] += t0[i0]
            i0, i1, i2 = i0 + 1, i1 + 1, i2 + 1
            continue
        r1, r2 = t1[i1:], t2[i2:]
        for l in range(_lcp(r1, r2), 0, -1):
            if 2 * l <= len(r2) and r2[:l] == r2[l:2 * l]:
                reps.append(r2[:l])
                walls.append("")
                i1 += l
                i2 += 2 * l
                break
        else:
            return None


def is_quadratic(values: Sequence[int]) -> bool:
    '''Constant second differences.'''
    if len(values) < 4:
        raise ValueError("need at least 4 values")
    first = [b - a for a, b in zip(values, values[1:])]
    second = [b - a for a, b in zip(first, first[1:])]
    return all(x == second[0] for x in second)


def word_power_root(a: str, b: str) -> Optional[str]:
    '''Common root c with a and b both powers of c (|c| = gcd), or None.'''
    if not a or not b:
        raise ValueError("words must be nonempty")
    k = gcd(len(a), len(b))
    c = a[:k]
    if a == c * (len(a) // k) and b == c * (len(b) // k):
        return c
    return None
