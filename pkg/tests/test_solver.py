"""Exact solver: frozen values, engine parity, caps, determinism."""

import pytest

from candynim.core import Game, Ply
from candynim.errors import MemoBudgetError, PileCapError
from candynim.solver import (
    DEFAULT_ORACLE_CAP,
    SolveResult,
    Solver,
    kernel_available,
    packable,
    solve,
)
from candynim.allocation import _partitions

# values pinned by hand-checked play-throughs and small-case enumeration
FROZEN = [
    ([], 0),
    ([1], -1),  # lone pile: the winner takes it
    ([2, 2], 0),
    ([1, 2, 3], 2),
    ([1, 4, 5], 4),
    ([1, 6, 7], 6),
    ([3, 4, 7], 6),
    ([3, 5, 6], 6),
    ([1, 2, 5, 6], 6),
    ([1, 2, 4, 7], 8),
    ([7, 8, 15], 18),
    ([1, 5, 16, 20], 28),
]


@pytest.mark.parametrize("piles,value", FROZEN)
def test_frozen_values(piles, value):
    r = solve(Game(piles))
    assert r.value == value
    assert r.n_loser - r.n_winner == value
    assert r.n_loser + r.n_winner == sum(piles)


def test_counterexample_pair():
    assert solve(Game([31, 42, 53])).value == 96


def test_principal_line_replays_to_empty():
    r = solve(Game([1, 5, 16, 20]))
    pos = r.game
    n_l = n_w = 0
    for p, mover, ply, take in r.steps():
        assert p == pos
        if mover == "L":
            n_l += take
        else:
            n_w += take
        pos = pos.apply(ply)
    assert pos == Game([])
    assert (n_l, n_w) == (r.n_loser, r.n_winner)


def test_best_plies_unique_opening():
    plies = Solver().best_plies(Game([1, 5, 16, 20]))
    assert plies == (Ply(2, 2),)
    g = Game([1, 5, 16, 20])
    assert g[2] == 5 and plies[0].new_size == 2  # the 5 -> 2 grab


def test_best_plies_in_n_position():
    # winner to move: the cheapest winning ply only
    plies = Solver().best_plies(Game([5, 3]))
    assert plies == (Ply(0, 3),)


def test_solve_empty():
    r = solve(Game([]))
    assert r.value == 0 and r.principal_line == ()


def test_to_json_dict_schema():
    d = solve(Game([1, 2, 3])).to_json_dict()
    assert set(d) == {"game", "value", "n_loser", "n_winner", "line"}
    assert d["game"] == [3, 2, 1]
    assert all(set(step) == {"pile", "from", "to"} for step in d["line"])


def test_two_fresh_solvers_agree():
    a = Solver().solve(Game([9, 6, 15]))
    b = Solver().solve(Game([9, 6, 15]))
    assert a == b


@pytest.mark.skipif(not kernel_available(), reason="compiled kernel absent")
def test_engine_parity_on_small_sweep():
    native = Solver(engine="native")
    python = Solver(engine="python")
    for total in range(2, 13, 2):
        for piles in _partitions(total, 4, total):
            g = Game(piles)
            rn, rp = native.solve(g), python.solve(g)
            assert (rn.value, rn.n_loser, rn.n_winner) == (
                rp.value,
                rp.n_loser,
                rp.n_winner,
            )
            assert rn.principal_line == rp.principal_line


@pytest.mark.skipif(not kernel_available(), reason="compiled kernel absent")
def test_auto_engine_falls_back_when_unpackable():
    # 33 piles cannot pack into the native key; auto must still answer
    wide = Game([2, 2] * 16 + [1])
    assert not packable(wide.piles, 31)
    r = Solver(engine="auto").solve(wide)
    # pair invariance: worth the same as the lone [1]
    assert r.value == Solver(engine="python").solve(wide).value == -1


def test_oracle_matches_memoized_small():
    s = Solver()
    for total in range(2, 11, 2):
        for piles in _partitions(total, 3, total):
            g = Game(piles)
            assert s.oracle_solve(g) == s.solve(g)


def test_oracle_refuses_big_totals():
    from candynim.errors import BudgetError

    with pytest.raises(BudgetError):
        Solver().oracle_solve(Game([DEFAULT_ORACLE_CAP, DEFAULT_ORACLE_CAP]))


def test_pile_cap_enforced():
    with pytest.raises(PileCapError):
        Solver(pile_cap=4).solve(Game([8, 8]))


def test_memo_cap_enforced():
    with pytest.raises(MemoBudgetError):
        Solver(memo_cap=2, engine="python").solve(Game([4, 5, 6, 7]))


def test_stats_counters_move():
    s = Solver(engine="python")
    s.solve(Game([5, 6, 3]))
    stats = s.stats()
    assert any(entry["entries"] > 0 for entry in stats)


def test_parallel_matches_serial():
    g = Game([5, 4, 3, 2])
    serial = Solver().solve(g)
    fanned = Solver().solve(g, workers=4)
    assert serial == fanned


def test_result_is_plain_data():
    r = solve(Game([2, 2]))
    assert isinstance(r, SolveResult)
    assert r.game == Game([2, 2])
