"""Arrangement construction: equality families, chains, five-pile caps."""

import pytest

from candynim.allocation import (
    AllocationResult,
    best_power_arrangement,
    equality_arrangements,
    equality_family,
    exhaustive_min_winner,
    five_pile_construct,
    lemma_optimal_ply,
    _partitions,
)
from candynim.bounds import five_pile_upper, log_lower_bound
from candynim.core import Game, Ply
from candynim.errors import (
    ConstructionError,
    FamilyError,
    InvariantError,
    ParityError,
)
from candynim.solver import Solver, solve

# every closed-form floor-hitting arrangement by total, up to 32
EQUALITY_TRUTH = {
    2: [(1, 1)],
    4: [(1, 1, 1, 1), (2, 2)],
    6: [(3, 2, 1)],
    8: [(3, 2, 1, 1, 1)],
    10: [(5, 4, 1)],
    12: [(6, 4, 2)],
    14: [(7, 4, 2, 1)],
    16: [(7, 4, 2, 1, 1, 1)],
    18: [],
    20: [],
    22: [(11, 8, 2, 1)],
    24: [],
    26: [(13, 8, 4, 1)],
    28: [(14, 8, 4, 2)],
    30: [(15, 8, 4, 2, 1)],
    32: [(15, 8, 4, 2, 1, 1, 1)],
}


@pytest.mark.parametrize("total", sorted(EQUALITY_TRUTH))
def test_equality_arrangements_match_truth_table(total):
    got = sorted(r.game.piles for r in equality_arrangements(total))
    assert got == sorted(EQUALITY_TRUTH[total])


@pytest.mark.parametrize("total", sorted(EQUALITY_TRUTH))
def test_equality_arrangements_hit_the_floor(total):
    for r in equality_arrangements(total):
        assert r.game.total == total
        assert r.game.grundy == 0
        assert r.n_winner == log_lower_bound(total)


def test_equality_family_priority():
    # total 4 matches two cases; the all-ones shape is preferred
    r = equality_family(4)
    assert r.game == Game([1, 1, 1, 1])
    assert r.construction == "equality-case1"
    assert equality_family(18) is None
    assert equality_family(12).construction == "equality-case3"


def test_equality_rejects_bad_totals():
    with pytest.raises(ParityError):
        equality_arrangements(7)
    with pytest.raises(ValueError):
        equality_arrangements(0)


def test_best_power_arrangement():
    r = best_power_arrangement(4)
    assert r.game == Game([1, 2, 4, 7])
    assert r.game.total == 14
    assert r.n_winner == 3
    assert r.construction == "power-chain"
    assert best_power_arrangement(2).game == Game([1, 1])
    with pytest.raises(ValueError):
        best_power_arrangement(1)


def test_lemma_optimal_ply_closes_the_gap():
    g = Game([2, 4, 6])
    ply = lemma_optimal_ply(g)
    assert g[ply.pile_index] == 6 and ply.new_size == 1
    assert ply in Solver().best_plies(g)

    g2 = Game([1, 4, 5])
    ply2 = lemma_optimal_ply(g2)
    assert g2[ply2.pile_index] == 5 and ply2.new_size == 2
    assert Solver().best_plies(g2) == (ply2,)


def test_lemma_optimal_ply_rejects_other_shapes():
    with pytest.raises(FamilyError):
        lemma_optimal_ply(Game([1, 2, 3]))  # complete chain, no gap
    with pytest.raises(FamilyError):
        lemma_optimal_ply(Game([3, 5, 6]))  # two non-powers
    with pytest.raises(FamilyError):
        lemma_optimal_ply(Game([2, 2]))


def test_five_pile_construct_frozen_instance():
    r = five_pile_construct(20)
    assert r.game == Game([9, 8, 1, 1, 1])
    assert r.n_winner == 6
    assert r.construction == "five-pile-template"


def test_five_pile_construct_sweep():
    for total in range(4, 61, 2):
        r = five_pile_construct(total)
        assert r.game.total == total
        assert r.game.grundy == 0
        assert len(r.game) <= 5
        assert r.n_winner <= five_pile_upper(total)


def test_five_pile_rejects_bad_totals():
    with pytest.raises(ParityError):
        five_pile_construct(9)
    with pytest.raises(ValueError):
        five_pile_construct(2)


def test_partitions_enumerates_zero_nim_sum():
    got = sorted(_partitions(8, 8, 8))
    assert all(sum(p) == 8 for p in got)
    assert all(Game(p).grundy == 0 for p in got)
    assert (5, 2, 1) not in got  # nonzero nim-sum stays out
    assert (4, 4) in got and (3, 3, 1, 1) in got
    # cross-check count against a direct filter
    from itertools import combinations_with_replacement

    brute = set()
    for r in range(1, 9):
        for c in combinations_with_replacement(range(1, 9), r):
            if sum(c) == 8 and Game(c).grundy == 0:
                brute.add(tuple(sorted(c, reverse=True)))
    assert set(got) == brute


def test_partitions_respects_caps():
    assert all(len(p) <= 2 for p in _partitions(8, 2, 8))
    assert all(max(p) <= 3 for p in _partitions(8, 8, 3))


def test_exhaustive_min_winner_small_totals():
    rs = exhaustive_min_winner(10)
    assert [r.game.piles for r in rs] == [(5, 4, 1)]
    assert rs[0].n_winner == 3
    assert rs[0].construction == "exhaustive"
    with pytest.raises(ParityError):
        exhaustive_min_winner(5)


def test_exhaustive_min_winner_respects_caps():
    rs = exhaustive_min_winner(12, max_piles=2)
    assert all(len(r.game) <= 2 for r in rs)
    assert rs[0].game == Game([6, 6])


def test_allocation_result_validation():
    with pytest.raises(InvariantError):
        AllocationResult(Game([5, 3]), 1, "test")  # not a P position
    good = AllocationResult(Game([4, 4]), 0, "test")
    assert good.to_json_dict()["construction"] == "test"


def test_verified_n_winner_matches_solver():
    for total in (6, 10, 12):
        r = equality_family(total)
        assert r.n_winner == solve(r.game).n_winner
