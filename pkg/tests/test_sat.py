import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bbdeciders.sat import Cnf, solve_cnf


def truth_table_sat(n_vars, clauses) -> bool:
    '''Oracle: evaluate every assignment at once with numpy.'''
    rows = np.array(list(itertools.product((False, True), repeat=n_vars)), dtype=bool).reshape(-1, n_vars)
    ok = np.ones(len(rows), dtype=bool)
    for clause in clauses:
        sat = np.zeros(len(rows), dtype=bool)
        for lit in clause:
            col = rows[:, abs(lit) - 1]
            sat |= col if lit > 0 else ~col
        ok &= sat
    return bool(ok.any())


def pigeonhole(pigeons, holes) -> Cnf:
    var = lambda p, h: p * holes + h + 1
    cnf = Cnf(pigeons * holes)
    for p in range(pigeons):
        cnf.add([var(p, h) for h in range(holes)])
    for h in range(holes):
        for p, q in itertools.combinations(range(pigeons), 2):
            cnf.add([-var(p, h), -var(q, h)])
    return cnf


@st.composite
def cnfs(draw):
    n = draw(st.integers(1, 16))
    lit = st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v]))
    clauses = draw(st.lists(st.lists(lit, min_size=0, max_size=4), max_size=int(4.5 * n)))
    return n, clauses


@settings(max_examples=400, deadline=None)
@given(cnfs())
def test_agrees_with_truth_table(case):
    n, clauses = case
    cnf = Cnf(n)
    for c in clauses:
        cnf.add(c)
    model = solve_cnf(cnf)
    assert (model is not None) == truth_table_sat(n, clauses)
    if model is not None:
        assert len(model) == n
        assert cnf.satisfied_by(model)


def test_small_examples():
    cnf = Cnf(3, [[1, 2], [-1], [-2, 3]])
    assert solve_cnf(cnf) == [False, True, True]
    assert solve_cnf(Cnf(1, [[1], [-1]])) is None
    assert solve_cnf(Cnf(2, [])) is not None
    assert solve_cnf(Cnf(2, [[]])) is None


def test_tautology_and_duplicates():
    cnf = Cnf(2, [[1, -1], [2, 2], [-2, -2, 1]])
    assert solve_cnf(cnf) == [True, True]


@pytest.mark.parametrize("p, h, sat", [(2, 2, True), (3, 2, False), (5, 4, False), (4, 4, True)])
def test_pigeonhole(p, h, sat):
    assert (solve_cnf(pigeonhole(p, h)) is not None) == sat


def test_dimacs_round_trip():
    cnf = Cnf(3, [[1, -2], [3], [-1, 2, -3]])
    again = Cnf.from_dimacs("c comment\n" + cnf.to_dimacs())
    assert again == cnf
    assert Cnf.from_dimacs("p cnf 2 1\n1 -2\n 0\n") == Cnf(2, [[1, -2]])


@pytest.mark.parametrize("text", ["1 2 0\n", "p dnf 2 1\n1 0\n", "p cnf 1 1\n2 0\n"])
def test_dimacs_errors(text):
    with pytest.raises(ValueError):
        Cnf.from_dimacs(text)


def test_add_validates():
    with pytest.raises(ValueError):
        Cnf(2).add([0])
    with pytest.raises(ValueError):
        Cnf(2).add([3])


def test_deterministic():
    cnf = pigeonhole(4, 5)
    assert solve_cnf(cnf) == solve_cnf(cnf)
