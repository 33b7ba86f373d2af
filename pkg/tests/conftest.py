import random
import sys

import pytest
from hypothesis import settings

# timings vary a lot on shared machines; correctness is what matters here
settings.register_profile("default", deadline=None)
settings.load_profile("default")

from bbdeciders.tm import LETTERS, parse_machine

CHAMPION = "1RB1LC_1RC1RB_1RD0LE_1LA1LD_---0LA"
BOUNCER = "1RB1LE_1LC1RD_1LB1RC_1LA0RD_---0LA"
BACKWARD_EXAMPLE = "1RB0LD_1LC0RE_---1LD_1LA1LD_1RA0RA"
SEGMENT_EXAMPLE = "1RB1RC_0LA0RA_0LB---"
SEGMENT_HARD = "1RB---_1LC0RB_1LB1LA"
FAR_EXAMPLE = "1RB0LD_1LC1RA_0RB0LC_---1LA"
CYCLER = "0RB---_0LA---"
RUNNER = "1RA---"

# machines with known halting times (checked by simulation in test_tm)
HALTING = {
    "1RB1LB_1LA---": 6,
    "1RB---_1LB0RC_1LC1LA": 21,
    "1RB1LB_1LA0LC_---1LD_1RD0RA": 107,
    "------": 1,
}

CORPUS = [CHAMPION, BOUNCER, BACKWARD_EXAMPLE, SEGMENT_EXAMPLE, SEGMENT_HARD, FAR_EXAMPLE,
          CYCLER, RUNNER] + list(HALTING)


def random_machine(rng: random.Random, n_states: int, undefined: int = 1) -> str:
    '''Random table with ``undefined`` halting entries.'''
    cells = [f"{rng.randint(0, 1)}{rng.choice('LR')}{LETTERS[rng.randrange(n_states)]}"
             for _ in range(2 * n_states)]
    for k in rng.sample(range(2 * n_states), undefined):
        cells[k] = "---"
    return "_".join(cells[2 * s] + cells[2 * s + 1] for s in range(n_states))


def random_machines(seed: int, count: int, sizes=(2, 3, 4)) -> list:
    rng = random.Random(seed)
    return [random_machine(rng, rng.choice(sizes), rng.randint(1, 2)) for _ in range(count)]


@pytest.fixture(scope="session")
def bouncer():
    return parse_machine(BOUNCER)


@pytest.fixture(scope="session")
def champion():
    return parse_machine(CHAMPION)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
