"""Exception hierarchy shared by all hypertransfer modules."""

from __future__ import annotations


class HypertransferError(Exception):
    """Base class for all package-specific failures."""


class DomainError(HypertransferError, ValueError):
    """Input outside an operation's mathematical domain (bad determinant,
    nonpositive height, radicand below tolerance, ...)."""


class SingularLineError(DomainError):
    """Line-boundary evaluation with |g_x| below the singularity cutoff."""


class RegimeError(HypertransferError, ValueError):
    """Parameters outside the regime where a closed form is valid."""


class GeometryError(HypertransferError, RuntimeError):
    """Bracketed root-finding failed: the expected intersection degenerated."""


class DegeneracyError(HypertransferError, RuntimeError):
    """Iteration cap exceeded in a reduction loop."""


class AccuracyError(HypertransferError, RuntimeError):
    """Quadrature finished without reaching the requested tolerance.

    The estimate that WAS achieved is kept in ``achieved`` so callers can
    decide whether to accept the value anyway.
    """

    def __init__(self, message: str, achieved: float) -> None:
        super().__init__(f"{message} (achieved error estimate {achieved:.3e})")
        self.achieved = achieved
