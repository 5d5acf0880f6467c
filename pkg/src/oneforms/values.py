"""Exact real numbers of the form q0 + q1*theta_1 + ... + qk*theta_k.

Every numeric quantity the pipeline touches (cocycle values, potentials,
periods, thresholds, barcode point locations) is stored as a vector of
rational coordinates over a declared basis of positive reals theta_i,
together with an implicit leading basis element 1 for the rational
offset.  Arithmetic is exact on the coordinates; a float embedding is
kept alongside purely for ordering and display.

Ordering compares embeddings.  When two values have different
coordinates but embed within the collision tolerance of each other, the
comparison raises PrecisionError instead of guessing: a silent tie there
would corrupt every sublevel set computed downstream.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatchError, InputFormatError, PrecisionError

RationalLike = Union[int, str, Fraction]

# Integer-relation search bound for the independence heuristic.
_RELATION_BOUND = 10**6


def parse_rational(text: RationalLike) -> Fraction:
    """Parse "p/q", "0.25", or an int into an exact Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise InputFormatError(
            f"refusing float literal {text!r}: pass a string like '1/3' instead"
        )
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputFormatError(f"not a rational literal: {text!r}") from exc


class PeriodBasis:
    """Shared coordinate context: the reals (1, theta_1, ..., theta_k).

    theta entries are positive decimal literals asserted by the caller to
    be rationally independent *among themselves*.  The heuristic check
    below looks for small integer relations between pairs via continued
    fractions and warns (it never rejects, since the assertion is the
    caller's to make).
    """

    def __init__(self, theta: Sequence[float] = (), tol: float = 1e-9):
        theta = tuple(float(t) for t in theta)
        if any(t <= 0 for t in theta):
            raise InputFormatError(f"basis entries must be positive, got {theta}")
        if not (0 < tol < 1):
            raise InputFormatError(f"tolerance must be in (0, 1), got {tol}")
        self.theta = theta
        self.tol = float(tol)
        self.dim = 1 + len(theta)  # leading coordinate is the rational offset
        self._check_independence()

    @property
    def irrationality_slots(self) -> int:
        return len(self.theta)

    def _check_independence(self) -> None:
        for i in range(len(self.theta)):
            for j in range(i + 1, len(self.theta)):
                ratio = self.theta[i] / self.theta[j]
                approx = Fraction(ratio).limit_denominator(_RELATION_BOUND)
                resid = abs(approx.denominator * self.theta[i]
                            - approx.numerator * self.theta[j])
                if resid < self.tol:
                    warnings.warn(
                        "basis entries theta[%d]=%r and theta[%d]=%r admit the "
                        "integer relation %d*theta[%d] = %d*theta[%d] (residual %.2e); "
                        "coordinates over them are not unique"
                        % (i, self.theta[i], j, self.theta[j],
                           approx.denominator, i, approx.numerator, j, resid),
                        stacklevel=3,
                    )

    def value(self, coords: Iterable[RationalLike]) -> RealValue:
        cs = tuple(parse_rational(c) for c in coords)
        if len(cs) != self.dim:
            raise DimensionMismatchError(
                f"expected {self.dim} coordinates (offset + {len(self.theta)} basis "
                f"entries), got {len(cs)}"
            )
        return RealValue(self, cs)

    def rational(self, q: RationalLike) -> RealValue:
        """Value with no irrational part."""
        return RealValue(self, (parse_rational(q),) + (Fraction(0),) * len(self.theta))

    def zero(self) -> RealValue:
        return self.rational(0)

    def embed(self, coords: Sequence[Fraction]) -> float:
        terms = [float(coords[0])]
        terms.extend(float(q) * t for q, t in zip(coords[1:], self.theta))
        return math.fsum(terms)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, PeriodBasis)
                and self.theta == other.theta and self.tol == other.tol)

    def __hash__(self) -> int:
        return hash((self.theta, self.tol))

    def __repr__(self) -> str:
        return f"PeriodBasis(theta={self.theta!r}, tol={self.tol!r})"


class RealValue:
    """Immutable exact real: rational coordinates over a PeriodBasis."""

    __slots__ = ("basis", "coords", "embed")

    def __init__(self, basis: PeriodBasis, coords: tuple[Fraction, ...]):
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "embed", basis.embed(coords))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("RealValue is immutable")

    # -- arithmetic (exact, componentwise) --------------------------------

    def _need_same_basis(self, other: RealValue) -> None:
        if self.basis != other.basis:
            raise DimensionMismatchError("values come from different bases")

    def __add__(self, other: RealValue) -> RealValue:
        self._need_same_basis(other)
        return RealValue(self.basis,
                         tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: RealValue) -> RealValue:
        self._need_same_basis(other)
        return RealValue(self.basis,
                         tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> RealValue:
        return RealValue(self.basis, tuple(-a for a in self.coords))

    def scale(self, q: RationalLike) -> RealValue:
        q = parse_rational(q)
        return RealValue(self.basis, tuple(a * q for a in self.coords))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RealValue):
            return NotImplemented
        return self.basis == other.basis and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.basis, self.coords))

    def compare(self, other: RealValue) -> int:
        """Exact three-way comparison; raises PrecisionError on collision."""
        self._need_same_basis(other)
        if self.coords == other.coords:
            return 0
        diff = self.embed - other.embed
        if abs(diff) < self.basis.tol:
            raise PrecisionError(
                f"values {self.coords} and {other.coords} differ exactly but embed "
                f"within {self.basis.tol:g} of each other ({diff:+.3e}); raise the "
                "precision of the basis or lower the tolerance"
            )
        return -1 if diff < 0 else 1

    def __lt__(self, other: RealValue) -> bool:
        return self.compare(other) < 0

    def __le__(self, other: RealValue) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: RealValue) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: RealValue) -> bool:
        return self.compare(other) >= 0

    def __float__(self) -> float:
        return self.embed

    # -- serialization -----------------------------------------------------

    def coord_strings(self) -> list[str]:
        return [str(c) for c in self.coords]

    def __repr__(self) -> str:
        return f"RealValue({'+'.join(self.coord_strings())}~{self.embed:.6g})"
