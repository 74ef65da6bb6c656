"""Semantic exception hierarchy shared by all cohtrap modules."""


class CohtrapError(Exception):
    """Base class for all package-specific errors."""


class DomainError(CohtrapError, ValueError):
    """An argument lies outside the mathematical or physical domain."""


class NoTrappingError(DomainError):
    """Requested a trapping time in a regime without coherence trapping
    (Ohmic or sub-Ohmic bath, mu <= 0)."""


class ConvergenceError(CohtrapError, RuntimeError):
    """A numerical procedure exhausted its iteration/depth budget before
    reaching the requested tolerance."""
