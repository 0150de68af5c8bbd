"""Positions, plies, and the bit algebra of candy Nim.

Candy Nim is ordinary Nim with a side pot: every chip a player removes
goes into that player's own candy bag.  The player facing a zero nim-sum
(the loser, under optimal play) cannot change who wins, so both players
fight over candy instead: the loser grabs as much as possible on the way
down while the winner, restricted to plies that keep the win in hand,
concedes as little as possible.

This module holds the position model shared by everything else: the
canonical :class:`Game`, single plies, validated loser/winner turn pairs,
the 𝔊(a, m, x) three-pile family, and small closed-form helpers.  The
value recursion itself lives in :mod:`candynim.solver`.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import (
    FamilyError,
    IllegalMoveError,
    InvariantError,
    NoMovesError,
    ParseError,
    PileCapError,
)

# Hard ceiling for any single pile anywhere in the toolkit.  The solver
# applies a much smaller default cap on top of this.
PILE_CAP = 2**32 - 1

_GAME_RE = re.compile(r"^\s*(\[\s*(?P<inner>[^\[\]]*)\s*\]|(?P<bare>[^\[\]]*))\s*$")


class OutcomeClass(Enum):
    """Winner-loser classification of the player to move."""

    P = "P"  # zero nim-sum: the mover loses with best play
    N = "N"  # nonzero nim-sum: the mover wins with best play


def nim_sum(piles: Iterable[int]) -> int:
    """Bitwise xor of the pile sizes (the Nim winner test)."""
    total = 0
    for p in piles:
        total ^= p
    return total


@dataclass(frozen=True, order=True)
class Game:
    """A multiset of pile sizes in canonical form.

    Canonical form drops empty piles and sorts descending, so two games
    compare equal exactly when they are the same multiset.  Instances are
    immutable and hashable; ``piles`` is always a tuple.
    """

    piles: tuple[int, ...]

    def __init__(self, piles: Iterable[int] = ()):
        cleaned = []
        for p in piles:
            if not isinstance(p, int) or isinstance(p, bool):
                raise ParseError(f"pile sizes must be integers, got {p!r}")
            if p < 0:
                raise ParseError(f"pile sizes must be nonnegative, got {p}")
            if p > PILE_CAP:
                raise PileCapError(f"pile {p} exceeds the hard cap {PILE_CAP}")
            if p:
                cleaned.append(p)
        cleaned.sort(reverse=True)
        object.__setattr__(self, "piles", tuple(cleaned))

    @classmethod
    def parse(cls, text: str) -> "Game":
        """Parse ``"[1,2,3]"`` or ``"1,2,3"`` (whitespace ignored)."""
        m = _GAME_RE.match(text)
        if m is None:
            raise ParseError(f"unbalanced brackets in game notation: {text!r}")
        inner = m.group("inner")
        if inner is None:
            inner = m.group("bare") or ""
        inner = inner.strip()
        if not inner:
            return cls(())
        piles = []
        for field in inner.split(","):
            field = field.strip()
            if not re.fullmatch(r"\d+", field):
                raise ParseError(f"bad pile size {field!r} in game notation {text!r}")
            piles.append(int(field))
        return cls(piles)

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.piles) + "]"

    def __len__(self) -> int:
        return len(self.piles)

    def __iter__(self) -> Iterator[int]:
        return iter(self.piles)

    def __getitem__(self, i: int) -> int:
        return self.piles[i]

    def __bool__(self) -> bool:
        return bool(self.piles)

    def __add__(self, other: "Game") -> "Game":
        if not isinstance(other, Game):
            return NotImplemented
        return Game(self.piles + other.piles)

    @property
    def total(self) -> int:
        """Total candy on the table."""
        return sum(self.piles)

    @property
    def grundy(self) -> int:
        """Nim-sum of the piles (a Nim pile's Grundy value is its size)."""
        return nim_sum(self.piles)

    @property
    def outcome(self) -> OutcomeClass:
        return OutcomeClass.P if self.grundy == 0 else OutcomeClass.N

    def apply(self, ply: "Ply") -> "Game":
        """The position after ``ply``, back in canonical form."""
        if not 0 <= ply.pile_index < len(self.piles):
            raise IllegalMoveError(f"no pile {ply.pile_index} in {self}")
        old = self.piles[ply.pile_index]
        if not 0 <= ply.new_size < old:
            raise IllegalMoveError(
                f"pile {ply.pile_index} of {self} is {old}; cannot set it to {ply.new_size}"
            )
        rest = self.piles[: ply.pile_index] + self.piles[ply.pile_index + 1 :]
        return Game(rest + ((ply.new_size,) if ply.new_size else ()))

    def candies(self, ply: "Ply") -> int:
        """How much the mover banks by playing ``ply`` here."""
        if not 0 <= ply.pile_index < len(self.piles):
            raise IllegalMoveError(f"no pile {ply.pile_index} in {self}")
        old = self.piles[ply.pile_index]
        if not 0 <= ply.new_size < old:
            raise IllegalMoveError(
                f"pile {ply.pile_index} of {self} is {old}; cannot set it to {ply.new_size}"
            )
        return old - ply.new_size


@dataclass(frozen=True, order=True)
class Ply:
    """One move: pile ``pile_index`` (canonical order) drops to ``new_size``."""

    pile_index: int
    new_size: int

    def describe(self, game: Game) -> str:
        """Render as ``"5->2"`` against the position the ply applies to."""
        return f"{game[self.pile_index]}->{self.new_size}"


def classify(game: Game) -> OutcomeClass:
    """P if the player to move is the loser, N if the winner."""
    return game.outcome


def loser_moves(game: Game) -> tuple[Ply, ...]:
    """Every legal ply, one per (pile, target size) pair.

    The loser is free to play anything.  The count always equals the candy
    total, since pile ``p`` contributes plies to sizes ``0..p-1``.
    """
    if not game:
        raise NoMovesError("the empty game has no moves")
    return tuple(
        Ply(i, new) for i, p in enumerate(game.piles) for new in range(p)
    )


def winning_moves(game: Game) -> tuple[Ply, ...]:
    """Plies that restore a zero nim-sum, in canonical pile order.

    Empty for P positions.  At most one ply per pile: the target size
    ``grundy ^ pile`` is forced, and it is a reduction only when the pile
    contains the leading bit of the nim-sum.
    """
    g = game.grundy
    if g == 0:
        return ()
    out = []
    for i, p in enumerate(game.piles):
        target = g ^ p
        if target < p:
            out.append(Ply(i, target))
    return tuple(out)


def unique_response(game: Game, ply: Ply) -> Ply:
    """The winner's only reply after a loser ply in a ≤3-pile P position.

    With at most three piles the position after any loser ply admits
    exactly one winning ply; this returns it, indexed against the
    canonical form of ``game.apply(ply)``.

    Args:
        game: a P position with at most three piles.
        ply: the loser's ply into ``game``.

    Raises:
        FamilyError: if ``game`` has more than three piles or is not P.
        InvariantError: if the reply is not unique (believed impossible).
    """
    if len(game) > 3:
        raise FamilyError(f"unique replies are only guaranteed for <=3 piles, got {game}")
    if game.grundy != 0:
        raise FamilyError(f"{game} is not a P position")
    after = game.apply(ply)
    replies = winning_moves(after)
    if len(replies) != 1:
        raise InvariantError(
            f"expected exactly one winning reply in {after}, found {len(replies)}"
        )
    return replies[0]


@dataclass(frozen=True)
class Turn:
    """A validated loser ply plus the winner's reply.

    ``before`` must be a nonempty P position, ``after_loser`` the N
    position the loser leaves, and ``after_winner`` the P position the
    winner restores.  Both steps are checked to be single plies.
    """

    before: Game
    after_loser: Game
    after_winner: Game

    def __post_init__(self):
        if not self.before:
            raise IllegalMoveError("a turn cannot start from the empty game")
        if self.before.outcome is not OutcomeClass.P:
            raise IllegalMoveError(f"turns start from P positions, got {self.before}")
        if self.after_loser.outcome is not OutcomeClass.N:
            raise IllegalMoveError(
                f"the loser cannot reach {self.after_loser} from {self.before}"
            )
        if self.after_winner.outcome is not OutcomeClass.P:
            raise IllegalMoveError(
                f"the winner must restore a P position, got {self.after_winner}"
            )
        _check_one_ply(self.before, self.after_loser)
        _check_one_ply(self.after_loser, self.after_winner)

    @property
    def loser_take(self) -> int:
        return self.before.total - self.after_loser.total

    @property
    def winner_take(self) -> int:
        return self.after_loser.total - self.after_winner.total


def _check_one_ply(g: Game, h: Game) -> None:
    """Require that h arises from g by reducing exactly one pile."""
    gone = Counter(g.piles)
    gone.subtract(Counter(h.piles))
    plus = [(s, c) for s, c in gone.items() if c > 0]
    minus = [(s, c) for s, c in gone.items() if c < 0]
    if len(plus) == 1 and plus[0][1] == 1 and not minus:
        return  # one pile emptied
    if (
        len(plus) == 1
        and plus[0][1] == 1
        and len(minus) == 1
        and minus[0][1] == -1
        and minus[0][0] < plus[0][0]
    ):
        return  # one pile shrunk
    raise IllegalMoveError(f"{h} is not one ply away from {g}")


def single_turn_value(turn: Turn) -> int:
    """Loser's haul minus winner's haul over one turn."""
    return turn.loser_take - turn.winner_take


def semiratio(turn: Turn) -> Fraction:
    """Loser's haul over winner's haul for one turn, as an exact fraction.

    Kept rational so bound checks stay bit-exact; the winner's haul is
    never zero, since a reply removes at least one candy.
    """
    return Fraction(turn.loser_take, turn.winner_take)


def game_sum(g: Game, h: Game) -> Game:
    """Disjoint union of two games (pile multisets merged)."""
    return g + h


def reduce_duplicates(game: Game) -> tuple[Game, tuple[int, ...]]:
    """Strip piles that occur an even number of times.

    Returns the reduced game and the removed sizes, one entry per removed
    pair, descending.  The reduced game has the same grundy value, and the
    same candy value: a duplicate pair contributes nothing because the
    winner can mirror the loser inside it.
    """
    counts = Counter(game.piles)
    kept = []
    removed = []
    for size in sorted(counts, reverse=True):
        c = counts[size]
        if c % 2:
            kept.append(size)
        removed.extend([size] * (c // 2))
    return Game(kept), tuple(sorted(removed, reverse=True))


def xor_adjacent(a: int) -> int:
    """``a ^ (a - 1)``: all-ones through a's lowest set bit.

    Equals ``2**(t+1) - 1`` where ``t`` counts a's trailing zero bits.
    """
    if a < 1:
        raise ValueError(f"need a >= 1, got {a}")
    return a ^ (a - 1)


@dataclass(frozen=True)
class GFamily:
    """The three-pile family 𝔊(a, m, x) = [a, B·m + x, B·m + (a^x)].

    Here B = 2**(k+1) with k = floor(log2 a), and the offset satisfies
    0 <= x < 2**k.  All realizations have zero nim-sum.  The standard
    members (a one less than a power of two, x = 0) are the ones the
    closed forms and strategies below target.
    """

    a: int
    m: int
    x: int = 0

    def __post_init__(self):
        if self.a < 1:
            raise FamilyError(f"need a >= 1, got a={self.a}")
        if self.m < 0:
            raise FamilyError(f"need m >= 0, got m={self.m}")
        k = self.a.bit_length() - 1
        if not 0 <= self.x < 2**k:
            raise FamilyError(
                f"offset x={self.x} out of range [0, {2**k}) for a={self.a}"
            )

    @property
    def k(self) -> int:
        return self.a.bit_length() - 1

    @property
    def is_standard(self) -> bool:
        """True when a = 2**(k+1) - 1 and x = 0."""
        return self.x == 0 and (self.a & (self.a + 1)) == 0

    def realize(self) -> Game:
        block = 2 ** (self.k + 1)
        return Game((self.a, block * self.m + self.x, block * self.m + (self.a ^ self.x)))


def g_family_realize(a: int, m: int, x: int = 0) -> Game:
    """Realize 𝔊(a, m, x) as a canonical game."""
    return GFamily(a, m, x).realize()
