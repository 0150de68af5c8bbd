"""Spreading N candies into piles so the winner collects as little as possible.

Any zero-nim-sum arrangement guarantees every candy a side, and the
arranger sides with the loser: the goal is a P position of the given
total whose ``n_winner`` is minimal.  The closed-form arrangements
(equality families, power chains, the five-pile square-root template)
come with solver-verified hauls; ``exhaustive_min_winner`` is the ground
truth search the constructions are measured against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .core import Game, OutcomeClass, Ply, g_family_realize
from .errors import (
    BudgetError,
    ConstructionError,
    FamilyError,
    InvariantError,
    ParityError,
)
from .solver import Solver, solve as _solve


@dataclass(frozen=True)
class AllocationResult:
    """A P position of the requested total, with its verified winner haul."""

    game: Game
    n_winner: int
    construction: str

    def __post_init__(self):
        if self.game.outcome is not OutcomeClass.P:
            raise InvariantError(f"{self.game} has nonzero nim-sum")
        if self.n_winner < 0:
            raise InvariantError(f"negative winner haul {self.n_winner}")

    def to_json_dict(self) -> dict:
        d = _solve(self.game).to_json_dict()
        d["construction"] = self.construction
        return d


def _verified(game: Game, tag: str, solver: Optional[Solver]) -> AllocationResult:
    result = (solver or _default()).solve(game)
    return AllocationResult(game, result.n_winner, tag)


_shared: Optional[Solver] = None


def _default() -> Solver:
    global _shared
    if _shared is None:
        _shared = Solver()
    return _shared


def _require_even(total: int) -> None:
    if total < 2:
        raise ValueError(f"need total >= 2, got {total}")
    if total % 2:
        raise ParityError(
            f"no zero-nim-sum arrangement has odd total {total}"
        )


def _equality_games(total: int) -> list[tuple[str, Game]]:
    """All closed-form arrangements hitting the log2 floor, case-tagged.

    Most totals admit at most one; total 4 is the lone double hit
    ([1,1,1,1] and [2,2]).
    """
    out = []
    n = total.bit_length() - 1
    if total == 2**n and n >= 2:
        piles = [1, 1, 1] + [2**i for i in range(1, n - 1)] + [2 ** (n - 1) - 1]
        out.append(("equality-case1", Game(piles)))
    n = (total + 2).bit_length() - 1
    if total == 2**n - 2 and n >= 2:
        piles = [2**i for i in range(n - 1)] + [2 ** (n - 1) - 1]
        out.append(("equality-case2", Game(piles)))
    # total = 2^n - 2^k - 2 has at most one such (n, k): the binary form
    # 111..1000 of total + 2 pins both exponents
    shifted = total + 2
    low = shifted & -shifted
    k = low.bit_length() - 1
    n = shifted.bit_length()
    if k >= 1 and n > k + 1 and shifted + low == 2**n:
        piles = (
            [2**i for i in range(k - 1)]
            + [2**i for i in range(k, n - 1)]
            + [2 ** (n - 1) - 1 - 2 ** (k - 1)]
        )
        out.append(("equality-case3", Game(piles)))
    return out


def equality_family(
    total: int, solver: Optional[Solver] = None
) -> Optional[AllocationResult]:
    """The closed-form arrangement whose winner haul meets the log2 floor.

    Covers totals of the shapes 2^n, 2^n - 2, and 2^n - 2^k - 2 (with
    n > k + 1 >= 2); returns None for any other total.  Total 4 fits two
    shapes and the 2^n arrangement wins the tie.

    Raises:
        ParityError: odd totals admit no zero-nim-sum arrangement at all.
    """
    _require_even(total)
    games = _equality_games(total)
    if not games:
        return None
    tag, game = games[0]
    return _verified(game, tag, solver)


def equality_arrangements(
    total: int, solver: Optional[Solver] = None
) -> tuple[AllocationResult, ...]:
    """Every closed-form floor-hitting arrangement for the total."""
    _require_even(total)
    return tuple(_verified(g, tag, solver) for tag, g in _equality_games(total))


def best_power_arrangement(n: int, solver: Optional[Solver] = None) -> AllocationResult:
    """The chain [1, 2, 4, ..., 2^(n-2), 2^(n-1)-1] with total 2^n - 2.

    The winner is forced down the chain one pile per turn, collecting
    n - 1 candies in all; for n = 2 the chain degenerates to [1, 1].
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    piles = [2**i for i in range(n - 1)] + [2 ** (n - 1) - 1]
    return _verified(Game(piles), "power-chain", solver)


def lemma_optimal_ply(g: Game) -> Ply:
    """Best loser ply in a gapped power chain: close the gap.

    ``g`` must consist of distinct powers 2^i for every i in 0..n-2
    except one missing exponent k-1, plus the pile 2^(n-1) - 1 - 2^(k-1).
    The ply reduces that last pile to 2^(k-1), completing the chain and
    leaving the winner exactly n - 1 candies.
    """
    powers = []
    rest = []
    for idx, size in enumerate(g.piles):
        if size & (size - 1) == 0:
            powers.append((idx, size))
        else:
            rest.append((idx, size))
    if len(rest) != 1:
        raise FamilyError(f"{g} does not have exactly one non-power pile")
    last_idx, last = rest[0]
    exps = sorted(size.bit_length() - 1 for _, size in powers)
    if len(set(exps)) != len(exps):
        raise FamilyError(f"{g} repeats a power of two")
    n = exps[-1] + 2 if exps else 2
    missing = sorted(set(range(n - 1)) - set(exps))
    if len(missing) != 1:
        raise FamilyError(f"{g} is not a power chain with one gap")
    k = missing[0] + 1
    if k > n - 2 or last != 2 ** (n - 1) - 1 - 2 ** (k - 1):
        raise FamilyError(f"{g} tail pile does not match its gap")
    return Ply(last_idx, 2 ** (k - 1))


def five_pile_construct(total: int, solver: Optional[Solver] = None) -> AllocationResult:
    """A P position of the given even total within the square-root haul cap.

    Builds the high-bits three-pile family split at half the leading
    exponent, pads the residue with a duplicate pair [d, d], and falls
    back to a sweep of smaller families (and the bare pair) whenever the
    template loses; the cheapest solver-verified candidate wins.

    Raises:
        ParityError: odd total.
        ConstructionError: no candidate meets the square-root cap.
    """
    from .bounds import five_pile_upper

    _require_even(total)
    if total < 4:
        raise ValueError(f"need total >= 4, got {total}")
    candidates: list[tuple[str, Game]] = []
    if total >= 16:
        split = (total.bit_length() - 1) // 2
        high = total & ~((1 << split) - 1)
        m = high // 2**split - 1
        family = g_family_realize(2 ** (split - 1) - 1, m, 0)
        d = (total - family.total) // 2
        piles = family.piles + ((d, d) if d else ())
        candidates.append(("five-pile-template", Game(piles)))
    for j in range(1, total.bit_length()):
        a = 2**j - 1
        m = 1
        while 2 ** (j + 1) * (m + 1) - 2 <= total:
            family = g_family_realize(a, m, 0)
            d = (total - family.total) // 2
            piles = family.piles + ((d, d) if d else ())
            candidates.append(("five-pile-repair", Game(piles)))
            m += 1
    candidates.append(("five-pile-repair", Game([total // 2, total // 2])))

    cap = five_pile_upper(total)
    best: Optional[AllocationResult] = None
    for tag, game in candidates:
        if game.total != total or game.grundy != 0 or len(game) > 5:
            raise InvariantError(f"bad candidate {game} for total {total}")
        result = _verified(game, tag, solver)
        if result.n_winner > cap:
            continue
        if (
            best is None
            or result.n_winner < best.n_winner
            or (
                result.n_winner == best.n_winner
                and _rank(result) < _rank(best)
            )
        ):
            best = result
    if best is None:
        raise ConstructionError(
            f"no arrangement of {total} met the cap {cap}"
        )
    return best


def _rank(r: AllocationResult) -> tuple:
    # template beats repair on ties, then canonical pile order
    return (r.construction != "five-pile-template", r.game.piles)


def _partitions(total: int, max_piles: int, max_pile: int) -> Iterator[tuple[int, ...]]:
    """Descending pile tuples with the given sum, grundy 0, within caps."""
    budget = 2_000_000
    seen = 0

    def rec(remaining: int, cap: int, room: int, acc: tuple, xor: int):
        nonlocal seen
        seen += 1
        if seen > budget:
            raise BudgetError(
                f"partition search for total {total} passed {budget} nodes"
            )
        if remaining == 0:
            if xor == 0 and acc:
                yield acc
            return
        if room == 0:
            return
        top = min(cap, remaining)
        # the largest remaining pile must cover an even share
        for size in range(top, 0, -1):
            if size * room < remaining:
                break
            yield from rec(remaining - size, size, room - 1, acc + (size,), xor ^ size)

    yield from rec(total, max_pile, max_piles, (), 0)


def exhaustive_min_winner(
    total: int,
    max_piles: int = 6,
    max_pile: Optional[int] = None,
    solver: Optional[Solver] = None,
) -> tuple[AllocationResult, ...]:
    """All minimum-haul P positions of the total, canonically ordered.

    Enumerates every zero-nim-sum pile multiset within the caps, solves
    each, and keeps the ones whose winner haul hits the minimum.

    Raises:
        ParityError: odd total.
        BudgetError: the partition space exceeds the search budget.
    """
    _require_even(total)
    if max_pile is None:
        max_pile = total
    s = solver or _default()
    best: Optional[int] = None
    keep: list[Game] = []
    for piles in _partitions(total, max_piles, max_pile):
        game = Game(piles)
        n_winner = s.solve(game).n_winner
        if best is None or n_winner < best:
            best = n_winner
            keep = [game]
        elif n_winner == best:
            keep.append(game)
    if best is None:
        raise ConstructionError(f"no P position of total {total} within caps")
    keep.sort(key=lambda g: g.piles)
    return tuple(AllocationResult(g, best, "exhaustive") for g in keep)
