"""Input validation helpers shared by the library, the estimator and the CLI."""

from __future__ import annotations

import math

from .errors import ValidationError
from .interval import Interval
from .model import Problem
from .segment import MIN_CERTIFIED_S, Segment

__all__ = ["check_interval", "check_problem", "check_segment", "check_positive_int"]


def check_interval(x, key: str) -> Interval:
    if not isinstance(x, Interval):
        raise ValidationError(f"{key} must be an Interval, got {type(x).__name__}", key=key)
    if not x.is_finite:
        raise ValidationError(f"{key} must have finite endpoints", key=key)
    return x


def check_positive_int(x, key: str, minimum: int = 1) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < minimum:
        raise ValidationError(f"{key} must be an integer >= {minimum}, got {x!r}", key=key)
    return x


def check_problem(problem: Problem) -> Problem:
    if not isinstance(problem, Problem):
        raise ValidationError(f"expected a Problem, got {type(problem).__name__}", key="problem")
    check_interval(problem.beta, "beta")
    check_interval(problem.sigma, "sigma")
    if not problem.beta.lo > 1.0:
        raise ValidationError("beta must exceed 1", key="beta")
    for k, b in enumerate(problem.forcing.bounds, start=1):
        check_interval(b, f"forcing.modes[{k}]")
    return problem


def check_segment(seg: Segment, certify: bool = False) -> Segment:
    """Strict segment invariants.

    Every box must be nonempty and open (``hi(l_k) < lo(r_k)``) and
    ``C`` must be positive. With ``certify=True`` the tail exponent must
    also reach the certification minimum.
    """
    if not isinstance(seg, Segment):
        raise ValidationError(f"expected a Segment, got {type(seg).__name__}", key="segment")
    check_interval(seg.C, "segment.C")
    if not seg.C.lo > 0:
        raise ValidationError("tail amplitude C must be positive", key="segment.C")
    for k, (l, r) in enumerate(seg.boxes, start=1):
        check_interval(l, f"segment.boxes[{k - 1}].lo")
        check_interval(r, f"segment.boxes[{k - 1}].hi")
        if not l.hi < r.lo:
            raise ValidationError(
                f"box {k} is empty or degenerate: hi(l)={l.hi!r} >= lo(r)={r.lo!r}",
                key=f"segment.boxes[{k - 1}]",
            )
    if certify and seg.s < MIN_CERTIFIED_S:
        raise ValidationError(
            f"tail exponent s={seg.s} is below {MIN_CERTIFIED_S}", key="segment.s"
        )
    if not math.isfinite(seg.C.hi):
        raise ValidationError("tail amplitude C must be finite", key="segment.C")
    return seg
