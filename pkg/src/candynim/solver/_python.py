"""Pure-Python value engine.

The recursion mirrors the game itself.  At a zero-nim-sum position the
loser is to move and may play anything, so the value is the best of
``candies_taken + V(child)`` over every ply.  At a nonzero position the
winner is to move but only plies restoring a zero nim-sum keep the win,
so the value is the least ``V(child) - candies_taken`` over those.

Only loser-to-move (P) positions are memoized.  A winner position's
value is a fold over at most one winning reply per pile, so caching it
would buy back a handful of dict lookups at the price of storing the far
larger N-side state space; the side to move is therefore implicit in
every table key.

Ties are broken identically everywhere, including in the oracle and the
native kernel: among plies of equal value, prefer the smallest
(successor piles, pile index, new size) triple, comparing successors as
canonical descending tuples.
"""

from __future__ import annotations

from ..errors import InvariantError, MemoBudgetError, NoMovesError


def _child(piles: tuple, i: int, new: int) -> tuple:
    """Canonical successor after pile ``i`` drops to ``new``."""
    rest = piles[:i] + piles[i + 1 :]
    if not new:
        return rest
    return tuple(sorted(rest + (new,), reverse=True))


class TranspositionTable:
    """Bounded memo of solved loser-to-move positions.

    Maps a canonical pile tuple to ``(value, ply_index, new_size)`` for
    the tie-break-optimal ply.  Raises :class:`MemoBudgetError` instead
    of growing past ``cap`` entries.
    """

    __slots__ = ("cap", "hits", "misses", "_entries")

    def __init__(self, cap: int):
        if cap < 1:
            raise ValueError(f"table cap must be positive, got {cap}")
        self.cap = cap
        self.hits = 0
        self.misses = 0
        self._entries: dict = {}

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, piles: tuple):
        entry = self._entries.get(piles)
        if entry is None:
            self.misses += 1
        else:
            self.hits += 1
        return entry

    def put(self, piles: tuple, entry: tuple) -> None:
        if len(self._entries) >= self.cap:
            raise MemoBudgetError(
                f"transposition table reached its cap of {self.cap} entries; "
                "raise memo_cap to solve this position"
            )
        self._entries[piles] = entry

    def stats(self) -> dict:
        return {
            "entries": len(self._entries),
            "hits": self.hits,
            "misses": self.misses,
            "cap": self.cap,
        }


class PyEngine:
    """Memoized exact engine over canonical pile tuples."""

    name = "python"

    def __init__(self, memo_cap: int):
        self.table = TranspositionTable(memo_cap)

    def solve_value(self, piles: tuple) -> int:
        """Exact value of any position (either side to move)."""
        if not piles:
            return 0
        g = 0
        for p in piles:
            g ^= p
        if g == 0:
            return self._search(piles)
        return self._n_value(piles, g)

    def _search(self, piles: tuple) -> int:
        # piles is a nonempty P position: loser to move, maximizing.
        entry = self.table.get(piles)
        if entry is not None:
            return entry[0]
        best_v = None
        best_key = None
        for i, p in enumerate(piles):
            for new in range(p):
                child = _child(piles, i, new)
                if child:
                    cg = 0
                    for q in child:
                        cg ^= q
                    v = (p - new) + self._n_value(child, cg)
                else:
                    v = p - new
                if best_v is None or v > best_v or (v == best_v and (child, i, new) < best_key):
                    best_v = v
                    best_key = (child, i, new)
        self.table.put(piles, (best_v, best_key[1], best_key[2]))
        return best_v

    def _n_value(self, piles: tuple, g: int) -> int:
        # Winner to move, minimizing over nim-sum-restoring plies only.
        best = None
        for i, p in enumerate(piles):
            target = g ^ p
            if target < p:
                child = _child(piles, i, target)
                v = (self._search(child) if child else 0) - (p - target)
                if best is None or v < best:
                    best = v
        if best is None:
            raise InvariantError(f"no winning ply in N position {piles}")
        return best

    def best_entry(self, piles: tuple) -> tuple:
        """``(value, ply_index, new_size)`` of the tie-break-optimal ply."""
        if not piles:
            raise NoMovesError("the empty game has no moves")
        g = 0
        for p in piles:
            g ^= p
        if g == 0:
            self._search(piles)
            v, i, new = self.table.get(piles)
            return v, i, new
        best = None
        for i, p in enumerate(piles):
            target = g ^ p
            if target < p:
                child = _child(piles, i, target)
                v = (self._search(child) if child else 0) - (p - target)
                cand = (v, child, i, target)
                if best is None or cand < best:
                    best = cand
        return best[0], best[2], best[3]

    def stats(self) -> dict:
        out = self.table.stats()
        out["engine"] = self.name
        return out


def oracle_value(piles: tuple) -> int:
    """Memoless reference recursion; exponential, for cross-checking only."""
    if not piles:
        return 0
    g = 0
    for p in piles:
        g ^= p
    best = None
    if g == 0:
        for i, p in enumerate(piles):
            for new in range(p):
                v = (p - new) + oracle_value(_child(piles, i, new))
                if best is None or v > best:
                    best = v
    else:
        for i, p in enumerate(piles):
            target = g ^ p
            if target < p:
                v = oracle_value(_child(piles, i, target)) - (p - target)
                if best is None or v < best:
                    best = v
    return best


def oracle_entry(piles: tuple) -> tuple:
    """Oracle twin of :meth:`PyEngine.best_entry`, same tie-break."""
    if not piles:
        raise NoMovesError("the empty game has no moves")
    g = 0
    for p in piles:
        g ^= p
    best = None
    if g == 0:
        for i, p in enumerate(piles):
            for new in range(p):
                child = _child(piles, i, new)
                v = (p - new) + oracle_value(child)
                cand = (-v, child, i, new)
                if best is None or cand < best:
                    best = cand
        return -best[0], best[2], best[3]
    for i, p in enumerate(piles):
        target = g ^ p
        if target < p:
            child = _child(piles, i, target)
            v = oracle_value(child) - (p - target)
            cand = (v, child, i, target)
            if best is None or cand < best:
                best = cand
    return best[0], best[2], best[3]
