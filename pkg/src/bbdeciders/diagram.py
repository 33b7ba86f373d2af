"""Space-time diagrams written as binary PPM (P6) images."""

from __future__ import annotations

from dataclasses import dataclass

from .tm import Simulator, TransitionTable

# head colours for states A..E, then cycled
STATE_COLOURS = [
    (230, 60, 50),
    (250, 160, 30),
    (60, 170, 80),
    (50, 110, 220),
    (160, 70, 200),
]
BLACK = (0, 0, 0)
WHITE = (255, 255, 255)


@dataclass(frozen=True)
class SpaceTimeDiagram:
    width: int
    height: int
    pixels: bytes  # RGB, row-major

    def to_ppm(self) -> bytes:
        return b"P6\n%d %d\n255\n" % (self.width, self.height) + self.pixels

    def save(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_ppm())


def render_spacetime(table: TransitionTable, steps: int, scale: int = 1) -> SpaceTimeDiagram:
    '''Row i is the tape after i steps (row 0 is the blank tape); the columns
    span every cell visited.  Stops early when the machine halts.'''
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if scale < 1:
        raise ValueError("scale must be >= 1")
    sim = Simulator(table)
    rows = [(sim.state, sim.head, {})]
    for _ in range(steps):
        if not sim.step():
            break
        ones = {p: 1 for p in range(sim.lo, sim.hi + 1) if sim.read(p)}
        rows.append((sim.state, sim.head, ones))
    lo, hi = sim.lo, sim.hi
    width = hi - lo + 1
    out = bytearray()
    for state, head, ones in rows:
        line = bytearray()
        for p in range(lo, hi + 1):
            if p == head:
                colour = STATE_COLOURS[state % len(STATE_COLOURS)]
            else:
                colour = WHITE if ones.get(p) else BLACK
            line += bytes(colour) * scale
        out += bytes(line) * scale
    return SpaceTimeDiagram(width * scale, len(rows) * scale, bytes(out))
