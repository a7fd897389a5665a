"""
Exception hierarchy for the partial Pi-property engine
"""

from typing import Optional


class PartialPiError(Exception):
    """Base class for every error raised by the engine"""


class PermutationError(PartialPiError, ValueError):
    """Malformed permutation or degree mismatch"""


class GroupFormatError(PartialPiError, ValueError):
    """Unparseable .grp, .sub or manifest input"""


class NotASubgroupError(PartialPiError, ValueError):
    """An argument violates a structural precondition (membership, normality, p-group)"""


class CapExceededError(PartialPiError):
    """A configured size cap refuses the computation"""

    def __init__(self, cap_name: str, limit: int, requested: int, detail: Optional[str] = None):
        self.cap_name = cap_name
        self.limit = limit
        self.requested = requested
        message = f"{cap_name} cap exceeded: {requested} > {limit}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class ChainExplosionError(CapExceededError):
    """Too many maximal chains to enumerate"""


class UnknownPredicateError(PartialPiError, KeyError):
    """Predicate id not in the registry"""


class UnknownStatementError(PartialPiError, KeyError):
    """Statement id not in the verification suite"""
