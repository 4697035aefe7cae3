"""The forced Boussinesq equation in diagonalized Fourier coordinates.

With ``u(t, x) = sum_k u_k(t) e^{ikx}`` (even, zero mean) every mode obeys
a 2x2 linear block with eigenvalues ``+-lambda_k``, where
``lambda_k**2 = k**2 (beta k**2 - 1)``. The diagonal variables are

    u_k^+ = u_k / 2 + v_k / (2 lambda_k)
    u_k^- = u_k / 2 - v_k / (2 lambda_k)

and ``u_k = u_k^+ + u_k^-``, ``v_k = lambda_k (u_k^+ - u_k^-)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ValidationError
from .interval import Interval, mag, sqrt

__all__ = [
    "Forcing",
    "Problem",
    "DiagPoint",
    "lambda_sq",
    "lambda_k",
    "to_diag",
    "from_diag",
    "family_forcing",
    "FAMILY_MODES",
]

# number of cosine modes carried by each forcing family
FAMILY_MODES = {"A": 1, "B": 4}

_ZERO = Interval(0.0, 0.0)


@dataclass(frozen=True)
class Forcing:
    """Uniform-in-time bounds on ``eps * f_k(t)`` for ``k = 1..len(bounds)``.

    Modes past the last bound are identically zero.
    """

    bounds: tuple[Interval, ...]

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple(self.bounds))
        for b in self.bounds:
            if not isinstance(b, Interval):
                raise ValidationError("forcing bounds must be Intervals", key="forcing")

    @property
    def n_modes(self) -> int:
        return len(self.bounds)

    def bound(self, k: int) -> Interval:
        if 1 <= k <= len(self.bounds):
            return self.bounds[k - 1]
        return _ZERO

    def support(self) -> int:
        """Largest mode index with a bound other than ``[0, 0]`` (0 if none)."""
        for k in range(len(self.bounds), 0, -1):
            b = self.bounds[k - 1]
            if b.lo != 0.0 or b.hi != 0.0:
                return k
        return 0

    def max_magnitude(self) -> float:
        return max((mag(b) for b in self.bounds), default=0.0)


@dataclass(frozen=True)
class Problem:
    beta: Interval
    sigma: Interval
    forcing: Forcing = field(default_factory=lambda: Forcing(()))

    def __post_init__(self):
        if not self.beta.lo > 1.0:
            raise ValidationError(
                f"beta must exceed 1 (got lower endpoint {self.beta.lo!r})", key="beta"
            )
        if not self.sigma.is_finite:
            raise ValidationError("sigma must be finite", key="sigma")


@dataclass(frozen=True)
class DiagPoint:
    """A point of the n-th Galerkin projection in ``(u^+, u^-)`` coordinates."""

    plus: np.ndarray
    minus: np.ndarray

    def __post_init__(self):
        plus = np.asarray(self.plus, dtype=float)
        minus = np.asarray(self.minus, dtype=float)
        if plus.shape != minus.shape or plus.ndim != 1:
            raise ValidationError("plus and minus must be 1-d arrays of equal length")
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    @property
    def n(self) -> int:
        return self.plus.shape[0]

    def u(self) -> np.ndarray:
        """Physical coefficients ``u_k = u_k^+ + u_k^-``."""
        return self.plus + self.minus


def lambda_sq(k: int, beta: Interval) -> Interval:
    """Enclosure of ``k**2 (beta k**2 - 1)``."""
    if k < 1:
        raise DomainError(f"mode index must be >= 1, got {k}")
    k2 = k * k
    return k2 * (beta * k2 - 1)


def lambda_k(k: int, beta: Interval) -> Interval:
    return sqrt(lambda_sq(k, beta))


def to_diag(u: Interval, v: Interval, k: int, beta: Interval) -> tuple[Interval, Interval]:
    lam = lambda_k(k, beta)
    half_u = u / 2
    scaled_v = v / (2 * lam)
    return half_u + scaled_v, half_u - scaled_v


def from_diag(plus: Interval, minus: Interval, k: int, beta: Interval) -> tuple[Interval, Interval]:
    lam = lambda_k(k, beta)
    return plus + minus, lam * (plus - minus)


def family_forcing(family: str, eps: Interval) -> Forcing:
    """Bounds for the cosine families ``2 sum_{k<=m} f_k(t) cos kx``, ``|f_k| <= 1``.

    The Fourier coefficient of ``2 f_k(t) cos kx`` at wavenumber ``k`` is
    ``f_k(t)``, so each active mode gets ``[-|eps|, |eps|]``.
    """
    try:
        n = FAMILY_MODES[family]
    except KeyError:
        raise ValidationError(f"unknown forcing family {family!r}", key="forcing.family") from None
    bar = Interval.symmetric(mag(eps))
    return Forcing((bar,) * n)
