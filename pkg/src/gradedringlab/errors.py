"""Exception hierarchy.

Verification failures carry a ``witness`` mapping so callers (and the CLI
reports) can re-check the violation in isolation.
"""

from __future__ import annotations

from typing import Any


class AlgebraError(Exception):
    """Base class for every error raised by the library."""

    def __init__(self, message: str, witness: dict[str, Any] | None = None):
        super().__init__(message)
        self.witness = dict(witness or {})


class CapExceeded(AlgebraError):
    """An exhaustive computation would exceed a configured enumeration cap."""


class NotNormal(AlgebraError):
    pass


class NotSubgroup(AlgebraError):
    pass


class NotDirectSum(AlgebraError):
    pass


class ProductLeak(AlgebraError):
    pass


class IdentityNotInE(AlgebraError):
    pass


class ConditionViolation(AlgebraError):
    """An S-grading breaks condition (i) or (ii)."""


class NotHomogeneous(AlgebraError):
    pass


class NotIdempotent(AlgebraError):
    pass


class NotDegreeE(AlgebraError):
    pass


class NotIdempotentModI(AlgebraError):
    pass


class NoDecomposition(AlgebraError):
    pass


class GroupMismatch(AlgebraError):
    pass


class AssociativityFailure(AlgebraError):
    pass


class RingAxiomFailure(AlgebraError):
    pass


class SpecError(AlgebraError):
    """Malformed ring-spec input; ``line``/``column`` locate the problem."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})",
                         {"line": line, "column": column})
        self.line = line
        self.column = column
