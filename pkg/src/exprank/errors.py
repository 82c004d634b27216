"""Exception hierarchy shared by every module."""


class ExpRankError(Exception):
    """Base class for all errors raised by exprank."""


class UniverseMismatch(ExpRankError, ValueError):
    """Operands live over different index universes."""


class DomainError(ExpRankError, ValueError):
    """An argument lies outside the domain of the operation."""


class IndeterminateValuation(ExpRankError):
    """The stored part is zero but the error floor is finite."""


class PrecisionInsufficient(ExpRankError):
    """A sign or comparison is not decided above the error floor."""


class NotInImage(ExpRankError):
    """The infinite part is not in the image of the logarithmic cross-section."""


class NonMonicResidue(ExpRankError):
    """Monic mode cannot take the logarithm (or exponential) of this residue."""


class NoDescent(ExpRankError):
    """Iterated logarithms failed to reach the base stage within the bound."""


class IncompatibleLog(ExpRankError):
    """A logarithm violates compatibility with the natural valuation."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(ExpRankError, ValueError):
    """Malformed text; ``position`` is the character offset of the problem."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
