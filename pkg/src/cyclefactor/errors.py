"""Typed failures shared across the package.

Precondition violations are ValueError subclasses and map to CLI exit 2.
A failed internal cross-check (two independent routes to the same quantity
disagreeing) raises InternalCheckError and maps to CLI exit 3.
"""


class NoCycleFactorError(ValueError):
    """The graph admits no cycle-factor at all."""


class NotRegularError(ValueError):
    """A d-regularity precondition failed."""


class IndivisibleOrderError(ValueError):
    """The clique benchmark needs d to divide the vertex count."""


class GenerationError(RuntimeError):
    """Random graph sampling exhausted its retry budget."""


class InternalCheckError(RuntimeError):
    """Internal consistency check failed; indicates a bug, never bad input."""
