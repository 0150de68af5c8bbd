"""Exact solver facade.

:class:`Solver` wraps two interchangeable engines behind one interface:
a Cython kernel (built as ``candynim.solver._kernel``) that packs
positions into 64-bit keys, and the pure-Python engine in
:mod:`candynim.solver._python`.  Both implement the same recursion and
the same tie-break, so every result is engine-independent; ``auto``
simply prefers the kernel whenever the position fits its packing.

The kernel packs a position into one machine word by giving each pile a
fixed bit field: with ``s`` piles at the root every field gets
``62 // s`` bits, piles are laid out highest-first, and missing piles
pad with zeros.  Integer order on packed keys then coincides with
lexicographic order on canonical tuples, which is what lets the kernel
apply the shared tie-break without unpacking.
"""

from __future__ import annotations

import multiprocessing
import sys
from dataclasses import dataclass

from ..core import Game, Ply
from ..errors import (
    BudgetError,
    EngineError,
    InvariantError,
    PileCapError,
)
from ._python import PyEngine, TranspositionTable, oracle_entry, oracle_value

try:
    from . import _kernel
except ImportError:  # pure-Python install
    _kernel = None

DEFAULT_PILE_CAP = 2**16
DEFAULT_MEMO_CAP = 10_000_000
DEFAULT_ORACLE_CAP = 16

# The kernel recurses on the C stack, one frame per candy, so very tall
# games stay on the Python engine (heap frames) under auto selection.
NATIVE_DEPTH_CAP = 10_000

_KEY_BITS = 62
_MAX_SLOTS = 31  # must match the kernel's buffer width


def kernel_available() -> bool:
    return _kernel is not None


def packable(piles: tuple, slots: int) -> bool:
    """Whether every pile fits the per-slot bit field of a ``slots``-wide key."""
    if not 1 <= slots <= _MAX_SLOTS:
        return False
    bits = _KEY_BITS // slots
    return len(piles) <= slots and (not piles or max(piles) < (1 << bits))


@dataclass(frozen=True)
class SolveResult:
    """Value, candy split, and one optimal line for a solved game.

    ``value`` is loser candies minus winner candies under optimal play by
    both.  ``principal_line`` lists the plies of one optimal play-through,
    each indexed against the canonical form of the position it is played in.
    """

    game: Game
    value: int
    n_loser: int
    n_winner: int
    principal_line: tuple[Ply, ...]

    def steps(self):
        """Yield ``(position, mover, ply, take)`` along the line.

        ``mover`` is ``"L"`` when the position has zero nim-sum (loser to
        move) and ``"W"`` otherwise.
        """
        pos = self.game
        for ply in self.principal_line:
            mover = "L" if pos.grundy == 0 else "W"
            yield pos, mover, ply, pos.candies(ply)
            pos = pos.apply(ply)
        if pos:
            raise InvariantError(f"optimal line stops early at {pos}")

    def to_json_dict(self) -> dict:
        line = []
        pos = self.game
        for ply in self.principal_line:
            line.append(
                {"pile": ply.pile_index, "from": pos[ply.pile_index], "to": ply.new_size}
            )
            pos = pos.apply(ply)
        return {
            "game": list(self.game.piles),
            "value": self.value,
            "n_loser": self.n_loser,
            "n_winner": self.n_winner,
            "line": line,
        }


def _split(total: int, value: int) -> tuple[int, int]:
    if (total + value) % 2:
        raise InvariantError(f"value {value} has wrong parity for total {total}")
    n_loser = (total + value) // 2
    return n_loser, total - n_loser


class Solver:
    """Reusable exact solver with engine selection and shared tables.

    Args:
        engine: ``"auto"``, ``"native"``, or ``"python"``.  ``auto``
            falls back per game; the explicit names raise
            :class:`EngineError` when the request cannot be honored.
        pile_cap: largest root pile accepted by :meth:`solve`.
        memo_cap: transposition-table entry budget (per table).

    Tables persist across calls: the Python engine shares one table for
    all games, the kernel keeps one per root width.
    """

    def __init__(
        self,
        engine: str = "auto",
        pile_cap: int = DEFAULT_PILE_CAP,
        memo_cap: int = DEFAULT_MEMO_CAP,
    ):
        if engine not in ("auto", "native", "python"):
            raise EngineError(f"unknown engine {engine!r}")
        if engine == "native" and _kernel is None:
            raise EngineError("the native kernel is not built in this install")
        self.engine = engine
        self.pile_cap = pile_cap
        self.memo_cap = memo_cap
        self._py: PyEngine | None = None
        self._native: dict[int, object] = {}

    # -- engine plumbing ------------------------------------------------

    def _py_engine(self, total: int) -> PyEngine:
        if self._py is None:
            self._py = PyEngine(self.memo_cap)
        need = 2 * total + 1000
        if sys.getrecursionlimit() < need:
            sys.setrecursionlimit(need)
        return self._py

    def _native_engine(self, slots: int):
        eng = self._native.get(slots)
        if eng is None:
            eng = _kernel.NativeEngine(slots, self.memo_cap)
            self._native[slots] = eng
        return eng

    def _pick(self, piles: tuple):
        total = sum(piles)
        if self.engine == "python":
            return self._py_engine(total)
        fits = (
            _kernel is not None
            and packable(piles, len(piles))
            and total <= NATIVE_DEPTH_CAP
        )
        if fits:
            return self._native_engine(len(piles))
        if self.engine == "native":
            if total > NATIVE_DEPTH_CAP:
                raise EngineError(
                    f"total {total} exceeds the kernel recursion budget "
                    f"{NATIVE_DEPTH_CAP}; use engine='python'"
                )
            raise EngineError(
                f"{len(piles)} piles up to {max(piles)} do not fit a packed "
                "64-bit key; use engine='python'"
            )
        return self._py_engine(total)

    def _check_caps(self, game: Game) -> None:
        if game and game[0] > self.pile_cap:
            raise PileCapError(
                f"pile {game[0]} exceeds the solver cap {self.pile_cap}; "
                "raise pile_cap to accept it"
            )

    # -- public API -----------------------------------------------------

    def value(self, game: Game) -> int:
        """Optimal loser-minus-winner candy difference."""
        self._check_caps(game)
        if not game:
            return 0
        return self._pick(game.piles).solve_value(game.piles)

    def solve(self, game: Game, workers: int = 1) -> SolveResult:
        """Value, candy split, and an optimal line.

        ``workers > 1`` fans the root plies out over that many processes;
        the merge applies the serial tie-break, so the result is
        identical to ``workers=1``.
        """
        self._check_caps(game)
        if not game:
            return SolveResult(game, 0, 0, 0, ())
        if workers > 1:
            return self._solve_parallel(game, workers)
        eng = self._pick(game.piles)
        value = eng.solve_value(game.piles)
        line = []
        piles = game.piles
        while piles:
            _, i, new = eng.best_entry(piles)
            line.append(Ply(i, new))
            rest = piles[:i] + piles[i + 1 :]
            piles = tuple(sorted(rest + (new,), reverse=True)) if new else rest
        n_loser, n_winner = _split(game.total, value)
        return SolveResult(game, value, n_loser, n_winner, tuple(line))

    def best_plies(self, game: Game) -> tuple[Ply, ...]:
        """Every value-optimal ply for the player to move, ascending.

        For a zero nim-sum position these are the loser's best grabs; for
        anything else, the winner's cheapest winning plies.  Ordered by
        ``(pile_index, new_size)``.
        """
        self._check_caps(game)
        if not game:
            return ()
        eng = self._pick(game.piles)
        piles = game.piles
        g = game.grundy
        best_v = None
        out: list[tuple] = []
        if g == 0:
            for i, p in enumerate(piles):
                for new in range(p):
                    child = _apply(piles, i, new)
                    v = (p - new) + (eng.solve_value(child) if child else 0)
                    best_v, out = _collect(best_v, out, v, i, new, maximize=True)
        else:
            for i, p in enumerate(piles):
                target = g ^ p
                if target < p:
                    child = _apply(piles, i, target)
                    v = (eng.solve_value(child) if child else 0) - (p - target)
                    best_v, out = _collect(best_v, out, v, i, target, maximize=False)
        return tuple(Ply(i, new) for i, new in sorted(out))

    def oracle_solve(self, game: Game, max_total: int = DEFAULT_ORACLE_CAP) -> SolveResult:
        """Solve by memoless reference recursion (cross-check path).

        Exponential in the candy total, hence the ``max_total`` fence.
        Uses the kernel's oracle when available, the Python one
        otherwise; both share the solver tie-break, so the result equals
        :meth:`solve` whenever both are in budget.
        """
        self._check_caps(game)
        if game.total > max_total:
            raise BudgetError(
                f"oracle budget is {max_total} total candies, got {game.total}"
            )
        if not game:
            return SolveResult(game, 0, 0, 0, ())
        native = self.engine != "python" and _kernel is not None and len(game) <= 31
        entry_fn = _kernel.oracle_entry if native else oracle_entry
        value_fn = _kernel.oracle_value if native else oracle_value
        value = value_fn(game.piles)
        line = []
        piles = game.piles
        while piles:
            _, i, new = entry_fn(piles)
            line.append(Ply(i, new))
            piles = _apply(piles, i, new)
        n_loser, n_winner = _split(game.total, value)
        return SolveResult(game, value, n_loser, n_winner, tuple(line))

    def stats(self) -> list[dict]:
        """Per-engine table statistics, native tables first."""
        out = []
        for slots in sorted(self._native):
            s = self._native[slots].stats()
            s["engine"] = f"native[{slots}]"
            out.append(s)
        if self._py is not None:
            out.append(self._py.stats())
        return out

    # -- parallel root split ---------------------------------------------

    def _solve_parallel(self, game: Game, workers: int) -> SolveResult:
        piles = game.piles
        g = game.grundy
        if g == 0:
            plies = [(i, new) for i, p in enumerate(piles) for new in range(p)]
        else:
            plies = [(i, g ^ p) for i, p in enumerate(piles) if (g ^ p) < p]
        tasks = [
            (_apply(piles, i, new), self.engine, self.pile_cap, self.memo_cap)
            for i, new in plies
        ]
        ctx = multiprocessing.get_context()
        with ctx.Pool(processes=workers) as pool:
            solved = pool.map(_solve_child_task, tasks)
        best = None
        for (i, new), (child_value, child_line) in zip(plies, solved):
            child = _apply(piles, i, new)
            take = piles[i] - new
            v = take + child_value if g == 0 else child_value - take
            rank = (-v if g == 0 else v, child, i, new)
            if best is None or rank < best[0]:
                best = (rank, v, i, new, child_line)
        if best is None:
            raise InvariantError(f"no root plies in nonempty game {game}")
        _, value, i, new, child_line = best
        line = (Ply(i, new),) + tuple(Ply(a, b) for a, b in child_line)
        n_loser, n_winner = _split(game.total, value)
        return SolveResult(game, value, n_loser, n_winner, line)


def _apply(piles: tuple, i: int, new: int) -> tuple:
    rest = piles[:i] + piles[i + 1 :]
    if not new:
        return rest
    return tuple(sorted(rest + (new,), reverse=True))


def _collect(best_v, out, v, i, new, maximize):
    if best_v is None or (v > best_v if maximize else v < best_v):
        return v, [(i, new)]
    if v == best_v:
        out.append((i, new))
    return best_v, out


def _solve_child_task(args):
    piles, engine, pile_cap, memo_cap = args
    solver = Solver(engine=engine, pile_cap=pile_cap, memo_cap=memo_cap)
    result = solver.solve(Game(piles))
    return result.value, [(p.pile_index, p.new_size) for p in result.principal_line]


_shared: Solver | None = None


def _default_solver() -> Solver:
    global _shared
    if _shared is None:
        _shared = Solver()
    return _shared


def solve(game: Game, workers: int = 1, **kwargs) -> SolveResult:
    """Solve with a module-shared default solver (or a custom one via kwargs)."""
    if kwargs:
        return Solver(**kwargs).solve(game, workers=workers)
    return _default_solver().solve(game, workers=workers)


def value(game: Game, **kwargs) -> int:
    if kwargs:
        return Solver(**kwargs).value(game)
    return _default_solver().value(game)


def best_plies(game: Game, **kwargs) -> tuple[Ply, ...]:
    if kwargs:
        return Solver(**kwargs).best_plies(game)
    return _default_solver().best_plies(game)


def oracle_solve(game: Game, max_total: int = DEFAULT_ORACLE_CAP, **kwargs) -> SolveResult:
    if kwargs:
        return Solver(**kwargs).oracle_solve(game, max_total=max_total)
    return _default_solver().oracle_solve(game, max_total=max_total)
