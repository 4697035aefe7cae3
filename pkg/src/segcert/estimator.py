"""Estimator-style front end so refinement composes with sklearn tooling.

``fit`` takes a :class:`~segcert.model.Problem` in place of a data matrix
and learns a candidate segment; ``predict`` reports which problems that
segment certifies::

    >>> est = SegmentRefiner(M=6, c_tilde="3.1").fit(problem)   # doctest: +SKIP
    >>> est.report_.passed                                        # doctest: +SKIP
    True
"""

from __future__ import annotations

from typing import Iterable

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .certificate import Certificate, build_certificate
from .errors import ValidationError
from .interval import Interval, from_decimal
from .isolation import verify
from .model import Problem
from .refinement import (
    DEFAULT_C_TILDE,
    DEFAULT_ENVELOPE_FACTOR,
    DEFAULT_FLOOR,
    DEFAULT_INFLATION,
    refine,
)
from .validation import check_positive_int, check_problem

__all__ = ["SegmentRefiner"]


def _to_interval(x, key: str) -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, str):
        return from_decimal(x)
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return Interval(x)
    raise ValidationError(f"{key} must be a decimal string, number or Interval", key=key)


def _as_problems(X) -> list[Problem]:
    if isinstance(X, Problem):
        return [X]
    return [check_problem(p) for p in X]


class SegmentRefiner(BaseEstimator):
    """Refine and verify an isolating segment for a problem.

    Parameters
    ----------
    M : int
        Number of explicitly bounded low modes.
    iterations : int
        Refinement steps after the initial guess.
    c_tilde : str, float or Interval
        Tail amplitude of the initial guess.
    floor : float
        Minimal half-width of a box.
    inflation : float
        Outward factor applied to each newly computed box endpoint.
    envelope_factor : float
        Initial low-mode envelope ``envelope_factor * max|eps f_k| / k**4``.

    Attributes
    ----------
    segment_ : Segment
    report_ : VerificationReport
    problem_ : Problem
    """

    def __init__(
        self,
        M: int = 6,
        iterations: int = 2,
        c_tilde=DEFAULT_C_TILDE,
        floor: float = DEFAULT_FLOOR,
        inflation: float = DEFAULT_INFLATION,
        envelope_factor: float = DEFAULT_ENVELOPE_FACTOR,
    ):
        self.M = M
        self.iterations = iterations
        self.c_tilde = c_tilde
        self.floor = floor
        self.inflation = inflation
        self.envelope_factor = envelope_factor

    def _check_params(self):
        check_positive_int(self.M, "M")
        check_positive_int(self.iterations, "iterations")
        if not self.floor > 0:
            raise ValidationError("floor must be positive", key="floor")
        if not self.inflation >= 1:
            raise ValidationError("inflation must be >= 1", key="inflation")
        if not self.envelope_factor >= 0:
            raise ValidationError("envelope_factor must be >= 0", key="envelope_factor")

    def fit(self, X: Problem, y=None):
        self._check_params()
        problem = check_problem(X)
        self.segment_, self.report_ = refine(
            problem,
            self.M,
            self.iterations,
            c_tilde=_to_interval(self.c_tilde, "c_tilde"),
            floor=self.floor,
            inflation=self.inflation,
            envelope_factor=self.envelope_factor,
        )
        self.problem_ = problem
        return self

    def predict(self, X: Problem | Iterable[Problem]) -> np.ndarray:
        """Whether the fitted segment certifies each problem in ``X``."""
        check_is_fitted(self, "segment_")
        return np.array([verify(self.segment_, p).passed for p in _as_problems(X)], dtype=bool)

    def score(self, X: Problem | Iterable[Problem], y=None) -> float:
        """Smallest isolation margin of the fitted segment over ``X``."""
        check_is_fitted(self, "segment_")
        return min(verify(self.segment_, p).min_margin for p in _as_problems(X))

    def certificate(self) -> Certificate:
        check_is_fitted(self, "segment_")
        return build_certificate(self.problem_, self.segment_)
