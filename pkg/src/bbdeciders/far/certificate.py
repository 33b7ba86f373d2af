"""JSON form of FAR certificates.

Matrices are stored as base64 of their rows, each row a little-endian
bitmap of ``ceil(d / 8)`` bytes.  The file holds enough to rebuild the
whole NFA and run the verifier without searching.
"""

from __future__ import annotations

import base64

from ..tm import LETTERS, TransitionTable, parse_machine
from .boolean import BoolMatrix, BooleanNFA


def encode_rows(rows, width: int) -> str:
    nbytes = (width + 7) // 8
    return base64.b64encode(b"".join(r.to_bytes(nbytes, "little") for r in rows)).decode()


def decode_rows(text: str, width: int, count: int) -> tuple:
    nbytes = (width + 7) // 8
    raw = base64.b64decode(text)
    if len(raw) != nbytes * count:
        raise ValueError("row bitmap has the wrong size")
    rows = tuple(int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") for i in range(count))
    if any(r >> width for r in rows):
        raise ValueError("row bitmap has bits beyond the width")
    return rows


def far_certificate(machine: str, direction: str, state) -> dict:
    d = state.d
    return {
        "version": 1,
        "kind": "far",
        "machine": machine,
        "direction": direction,
        "l": state.l,
        "d": d,
        "delta": list(state.delta),
        "R0": encode_rows(state.R0, d),
        "R1": encode_rows(state.R1, d),
        "a": encode_rows([state.aT], d),
        "s": encode_rows([1 << (d - 1)], d),
    }


def nfa_from_certificate(cert: dict):
    '''Rebuild (scanned table, NFA) from a certificate.'''
    if cert.get("version") != 1:
        raise ValueError("unsupported certificate version")
    table = parse_machine(cert["machine"])
    if cert["direction"] == "right-to-left":
        table = table.mirrored()
    elif cert["direction"] != "left-to-right":
        raise ValueError(f"unknown direction {cert['direction']!r}")
    l, d = int(cert["l"]), int(cert["d"])
    S = table.n_states
    if d != S * l + 1:
        raise ValueError("d does not match l and the number of states")
    delta = [int(x) for x in cert["delta"]]
    if len(delta) != 2 * l or any(not 0 <= x < l for x in delta):
        raise ValueError("delta is not a complete l-state table")
    n = l + d
    T = {}
    for b in (0, 1):
        R = decode_rows(cert[f"R{b}"], d, d)
        rows = [1 << delta[2 * i + b] for i in range(l)] + [r << l for r in R]
        T[str(b)] = BoolMatrix(n, n, tuple(rows))
    for f in range(S):
        rows = [1 << (l + S * i + f) for i in range(l)] + [0] * d
        T[LETTERS[f]] = BoolMatrix(n, n, tuple(rows))
    (a,) = decode_rows(cert["a"], d, 1)
    (s,) = decode_rows(cert["s"], d, 1)
    return table, BooleanNFA(n, 1, T, a << l, s << l)


def verify_far_file_entry(cert: dict):
    '''Returns the first violated condition or None.'''
    from .verify import far_certificate_violation
    table, nfa = nfa_from_certificate(cert)
    return far_certificate_violation(table, nfa)
