"""Exception hierarchy for the candynim toolkit."""


class CandyNimError(Exception):
    """Base class for all toolkit errors."""


class ParseError(CandyNimError, ValueError):
    """Game notation that cannot be parsed."""


class BudgetError(CandyNimError):
    """A configured resource budget was exceeded (CLI exit code 3)."""


class PileCapError(BudgetError):
    """A pile exceeds the configured pile-size cap."""


class MemoBudgetError(BudgetError):
    """The transposition table hit its entry cap."""


class EngineError(CandyNimError):
    """The requested solver engine is unavailable or cannot take the game."""


class NoMovesError(CandyNimError):
    """Move generation was asked for a position with no moves."""


class IllegalMoveError(CandyNimError, ValueError):
    """A ply that is not legal in the position it was applied to."""


class FamilyError(CandyNimError, ValueError):
    """A game or argument outside the structural family an operation requires."""


class ParityError(CandyNimError, ValueError):
    """An allocation total with the wrong parity (zero-xor games have even totals)."""


class ConstructionError(CandyNimError):
    """No valid arrangement could be constructed for the requested total."""


class InvariantError(CandyNimError):
    """An internal invariant believed impossible to break was broken."""


class UnknownClaimError(CandyNimError, ValueError):
    """A claim id that is not in the verification registry."""
