"""Formula tapes: directional tapes whose words may contain starred
repeaters, e.g. ``0^inf (111) 1110 (11) 00 D> 0^inf``.

Each side is stored as walls and repeaters interleaved: ``walls[0] (reps[0])
walls[1] ... (reps[-1]) walls[-1]``.  The left side is listed from the outer
end to the head and the right side from the head to the outer end, so the
walls next to the head are ``lwalls[-1]`` and ``rwalls[0]``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Sequence, Tuple

from ..tm import LETTERS, DirectionalTape

INF = "0^inf"


@dataclass(frozen=True)
class Headless:
    '''A one-sided formula: ``walls[0] (reps[0]) walls[1] ... walls[-1]``.'''
    walls: Tuple[str, ...]
    reps: Tuple[str, ...]

    def __post_init__(self):
        if len(self.walls) != len(self.reps) + 1:
            raise ValueError("need exactly one more wall than repeaters")
        if any(not r for r in self.reps):
            raise ValueError("repeaters must be nonempty")

    def __str__(self) -> str:
        out = [self.walls[0]]
        for r, w in zip(self.reps, self.walls[1:]):
            out.append(f"({r}){w}")
        return "".join(out)

    def instantiate(self, counts) -> str:
        if isinstance(counts, int):
            counts = [counts] * len(self.reps)
        out = [self.walls[0]]
        for r, c, w in zip(self.reps, counts, self.walls[1:]):
            out.append(r * c + w)
        return "".join(out)

    def reversed(self) -> "Headless":
        return Headless(tuple(w[::-1] for w in reversed(self.walls)),
                        tuple(r[::-1] for r in reversed(self.reps)))


@dataclass(frozen=True)
class FormulaTape:
    lwalls: Tuple[str, ...]
    lreps: Tuple[str, ...]
    state: int
    facing_right: bool
    rwalls: Tuple[str, ...]
    rreps: Tuple[str, ...]
    left_inf: bool = True
    right_inf: bool = True

    def __post_init__(self):
        if len(self.lwalls) != len(self.lreps) + 1 or len(self.rwalls) != len(self.rreps) + 1:
            raise ValueError("need exactly one more wall than repeaters on each side")
        if any(not r for r in self.lreps + self.rreps):
            raise ValueError("repeaters must be nonempty")

    @property
    def left(self) -> Headless:
        return Headless(self.lwalls, self.lreps)

    @property
    def right(self) -> Headless:
        return Headless(self.rwalls, self.rreps)

    @classmethod
    def from_sides(cls, left: Headless, state: int, facing_right: bool, right: Headless,
                   left_inf: bool = True, right_inf: bool = True) -> "FormulaTape":
        return cls(left.walls, left.reps, state, facing_right, right.walls, right.reps, left_inf, right_inf)

    @classmethod
    def from_tape(cls, tape: DirectionalTape) -> "FormulaTape":
        return cls((tape.left,), (), tape.state, tape.facing_right, (tape.right,), (),
                   tape.left_inf, tape.right_inf)

    @property
    def head_token(self) -> str:
        letter = LETTERS[self.state]
        return f"{letter}>" if self.facing_right else f"<{letter}"

    def __str__(self) -> str:
        return format_formula(self)

    def instantiate(self, left_counts, right_counts) -> DirectionalTape:
        return DirectionalTape(self.left.instantiate(left_counts), self.state, self.facing_right,
                               self.right.instantiate(right_counts), self.left_inf, self.right_inf)


def _side_tokens(walls, reps) -> List[str]:
    out = [walls[0]] if walls[0] else []
    for r, w in zip(reps, walls[1:]):
        out.append(f"({r})")
        if w:
            out.append(w)
    return out


def format_formula(f: FormulaTape) -> str:
    tokens = [INF] if f.left_inf else []
    tokens += _side_tokens(f.lwalls, f.lreps)
    tokens.append(f.head_token)
    tokens += _side_tokens(f.rwalls, f.rreps)
    if f.right_inf:
        tokens.append(INF)
    return " ".join(tokens)


def _collect(tokens) -> Headless:
    walls, reps = [""], []
    for tok in tokens:
        if tok.startswith("("):
            reps.append(tok[1:-1])
            walls.append("")
        else:
            walls[-1] += tok
    return Headless(tuple(walls), tuple(reps))


def parse_formula(text: str) -> FormulaTape:
    '''Inverse of format_formula.'''
    tokens = text.split()
    left_inf = bool(tokens) and tokens[0] == INF
    if left_inf:
        tokens = tokens[1:]
    right_inf = bool(tokens) and tokens[-1] == INF
    if right_inf:
        tokens = tokens[:-1]
    heads = [i for i, tok in enumerate(tokens)
             if (len(tok) == 2 and tok[0] == "<" and tok[1] in LETTERS)
             or (len(tok) == 2 and tok[1] == ">" and tok[0] in LETTERS)]
    if len(heads) != 1:
        raise ValueError(f"formula needs exactly one head token: {text!r}")
    h = heads[0]
    for tok in tokens[:h] + tokens[h + 1:]:
        word = tok[1:-1] if tok.startswith("(") and tok.endswith(")") else tok
        if not word or set(word) - {"0", "1"}:
            raise ValueError(f"bad token {tok!r} in {text!r}")
    head = tokens[h]
    facing_right = head.endswith(">")
    state = LETTERS.index(head[0] if facing_right else head[1])
    return FormulaTape.from_sides(_collect(tokens[:h]), state, facing_right, _collect(tokens[h + 1:]),
                                  left_inf, right_inf)


# ---------------------------------------------------------------------------
# alignment

def _push_outward_right(walls: list, reps: list) -> None:
    '''(r) v -> v (r') for every repeater, moving it toward the end.'''
    changed = True
    while changed:
        changed = False
        for j in range(len(reps) - 1, -1, -1):
            r = reps[j]
            while walls[j + 1] and walls[j + 1][0] == r[0]:
                c = walls[j + 1][0]
                walls[j] += c
                walls[j + 1] = walls[j + 1][1:]
                r = r[1:] + c
                changed = True
            reps[j] = r


def _push_outward_left(walls: list, reps: list) -> None:
    '''v (r) -> (r') v for every repeater, moving it toward the start.'''
    changed = True
    while changed:
        changed = False
        for i in range(len(reps)):
            r = reps[i]
            while walls[i] and walls[i][-1] == r[-1]:
                c = walls[i][-1]
                walls[i + 1] = c + walls[i + 1]
                walls[i] = walls[i][:-1]
                r = c + r[:-1]
                changed = True
            reps[i] = r


def align(f: FormulaTape) -> FormulaTape:
    '''Push every repeater away from the head as far as it goes.'''
    lw, lr, rw, rr = list(f.lwalls), list(f.lreps), list(f.rwalls), list(f.rreps)
    _push_outward_left(lw, lr)
    _push_outward_right(rw, rr)
    return replace(f, lwalls=tuple(lw), lreps=tuple(lr), rwalls=tuple(rw), rreps=tuple(rr))


def align_right_headless(h: Headless) -> Headless:
    walls, reps = list(h.walls), list(h.reps)
    _push_outward_right(walls, reps)
    return Headless(tuple(walls), tuple(reps))


def align_right(f: FormulaTape) -> FormulaTape:
    '''Push every repeater, on both sides, as far right as it goes.'''
    left, right = align_right_headless(f.left), align_right_headless(f.right)
    return replace(f, lwalls=left.walls, lreps=left.reps, rwalls=right.walls, rreps=right.reps)


# ---------------------------------------------------------------------------
# special cases and membership

def _wall_is_inflated(new: str, base: str, prev_rep: str, next_rep: str) -> bool:
    '''new == prev_rep^a + base + next_rep^b for some a, b >= 0.'''
    prefix = ""
    while len(prefix) + len(base) <= len(new):
        rest = new[len(prefix):]
        if rest.startswith(base):
            tail = rest[len(base):]
            if not tail or (next_rep and tail == next_rep * (len(tail) // len(next_rep))):
                return True
        if not prev_rep or not new.startswith(prefix + prev_rep):
            return False
        prefix += prev_rep
    return False


def _side_is_inflated(new: Headless, base: Headless) -> bool:
    if new.reps != base.reps:
        return False
    n = len(base.reps)
    for i in range(n + 1):
        prev_rep = base.reps[i - 1] if i > 0 else ""
        next_rep = base.reps[i] if i < n else ""
        if not _wall_is_inflated(new.walls[i], base.walls[i], prev_rep, next_rep):
            return False
    return True


def is_special_case(f_new: FormulaTape, f_base: FormulaTape) -> bool:
    '''True when the aligned f_new is the aligned f_base with some repeaters
    (r) replaced by r^a (r) r^b.'''
    a, b = align(f_new), align(f_base)
    if (a.state, a.facing_right, a.left_inf, a.right_inf) != (b.state, b.facing_right, b.left_inf, b.right_inf):
        return False
    return _side_is_inflated(a.left, b.left) and _side_is_inflated(a.right, b.right)


def _segments(h: Headless) -> List[Tuple[str, bool]]:
    out = []
    for k, w in enumerate(h.walls):
        if k:
            out.append((h.reps[k - 1], True))
        if w:
            out.append((w, False))
    return out


def _closure(segs, positions) -> set:
    todo = list(positions)
    seen = set(todo)
    while todo:
        k, o = todo.pop()
        if k == len(segs):
            continue
        word, star = segs[k]
        nxt = []
        if o == len(word):
            nxt.append((k + 1, 0))
            if star:
                nxt.append((k, 0))
        elif star and o == 0:
            nxt.append((k + 1, 0))
        for p in nxt:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def _read(segs, positions, c) -> set:
    return {(k, o + 1) for k, o in positions if k < len(segs) and o < len(segs[k][0]) and segs[k][0][o] == c}


def matches_side(word: str, h: Headless, zero_padded_start: bool) -> bool:
    '''Does ``word`` belong to the language of ``h``?  When
    ``zero_padded_start`` the word's start touches 0^inf, so leading zeros
    may be added to or removed from either side.'''
    segs = _segments(h)
    pos = _closure(segs, {(0, 0)})
    if zero_padded_start:
        word = word.lstrip("0")
        reach = set(pos)
        while True:
            more = _closure(segs, _read(segs, reach, "0")) - reach
            if not more:
                break
            reach |= more
        pos = reach
    for c in word:
        pos = _closure(segs, _read(segs, pos, c))
        if not pos:
            return False
    return (len(segs), 0) in pos


def tape_in_language(tape: DirectionalTape, f: FormulaTape) -> bool:
    '''Membership of a concrete tape in the match language of f.'''
    if (tape.state, tape.facing_right, tape.left_inf, tape.right_inf) != (
            f.state, f.facing_right, f.left_inf, f.right_inf):
        return False
    return (matches_side(tape.left, f.left, f.left_inf)
            and matches_side(tape.right[::-1], f.right.reversed(), f.right_inf))


def tapes_equal(a: DirectionalTape, b: DirectionalTape) -> bool:
    '''Equality of tapes up to zeros absorbed by 0^inf ends.'''
    def norm(t):
        left = t.left.lstrip("0") if t.left_inf else t.left
        right = t.right.rstrip("0") if t.right_inf else t.right
        return (left, t.state, t.facing_right, right, t.left_inf, t.right_inf)
    return norm(a) == norm(b)
