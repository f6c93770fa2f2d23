"""Exception hierarchy shared by all pcpkit modules."""

from __future__ import annotations


class PcpError(Exception):
    """Base class for every error raised by pcpkit."""


class InputError(PcpError, ValueError):
    """Malformed arguments: dimension mismatches, bad tolerances, bad indices."""


class DegenerateInputError(InputError):
    """An operation needs a nonzero map (or nonzero leading part) and got zero."""


class ComplexityGuardError(PcpError):
    """Refusal to enumerate 2^n objects for n above the desk-scale cap."""


class EmptyRegionError(PcpError):
    """Rejection sampling exhausted its budget without finding feasible points."""


class CertificationError(PcpError):
    """A candidate point failed solution certification.

    Carries the offending natural-residual norm in ``residual_norm``.
    """

    def __init__(self, message: str, residual_norm: float):
        super().__init__(message)
        self.residual_norm = float(residual_norm)


class PivotBudgetError(PcpError):
    """Complementary pivoting exceeded its pivot budget."""


class ParseError(InputError):
    """Instance document violates the schema. ``path`` locates the offence."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path
