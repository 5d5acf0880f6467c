"""Exception types shared across the package.

Every error that a caller is expected to catch derives from OneformsError,
so `except OneformsError` at a CLI boundary separates bad input / bad
numerics from genuine bugs.
"""

from __future__ import annotations


class OneformsError(Exception):
    """Base class for all package-specific errors."""


class InputFormatError(OneformsError):
    """Malformed or inconsistent input data (files, literals, flags)."""


class PrecisionError(OneformsError):
    """Two exact values with distinct coordinates embed closer than the
    collision tolerance, so float ordering can no longer be trusted."""


class CocycleError(OneformsError):
    """Edge data is missing, not antisymmetric, or violates the triangle
    identity on some 2-simplex."""


class DegreeError(OneformsError):
    """A degree argument is outside the range supported by the complex."""


class DimensionMismatchError(OneformsError):
    """Operands live in different ambient spaces or over different fields."""


class ContainmentError(OneformsError):
    """A quotient was requested for a subspace that is not contained in
    the numerator."""


class WindowTooSmallError(OneformsError):
    """The requested translation window cannot hold a complete copy of
    every base cell (or has no usable thresholds)."""


class UnsafeThresholdError(OneformsError):
    """A threshold lies too close to the window frontier for the windowed
    computation to be trusted."""


class GeometrizeError(OneformsError):
    """Point-cloud data cannot be turned into a valid simplicial cocycle
    at the requested scale."""
