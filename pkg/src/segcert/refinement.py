"""Heuristic construction of candidate segments.

Each refinement step raises the tail exponent by one, resets ``C`` from the
nonlinearity constant ``D`` of the current segment, and then re-derives the
low-mode boxes one at a time so that each lands (up to ``inflation``) on the
equality case of its isolation inequality. Nothing here is trusted: the
result is only as good as the subsequent :func:`segcert.isolation.verify`.
"""

from __future__ import annotations

import math
from dataclasses import replace

from .errors import DomainError, SegcertError, ValidationError
from .interval import Interval, mag
from .isolation import VerificationReport, verify
from .model import Problem
from .nonlinearity import d_total, n_low
from .segment import Segment
from .validation import check_positive_int, check_problem

__all__ = [
    "RefinementDiverged",
    "DEFAULT_C_TILDE",
    "DEFAULT_FLOOR",
    "DEFAULT_INFLATION",
    "DEFAULT_ENVELOPE_FACTOR",
    "initial_guess",
    "refine_step",
    "refine",
    "rescale_for_epsilon",
]

DEFAULT_C_TILDE = 1.0
DEFAULT_FLOOR = 1e-8
DEFAULT_INFLATION = 1.001
# low-mode envelope of the initial guess, in units of max |eps f_k|
DEFAULT_ENVELOPE_FACTOR = 1.7
INITIAL_S = 4


class RefinementDiverged(SegcertError):
    """The refinement produced non-finite bounds (forcing far too large)."""


def _as_interval(x) -> Interval:
    return x if isinstance(x, Interval) else Interval(x)


def initial_guess(
    problem: Problem,
    M: int,
    c_tilde=DEFAULT_C_TILDE,
    floor: float = DEFAULT_FLOOR,
    envelope: float = 0.0,
) -> Segment:
    """Symmetric boxes from the linear response, tail ``c_tilde / k**4``.

    ``r_k = max(|eps f_k| / (2 (beta k**2 - 1)), envelope / k**4, floor)``.
    The default ``envelope=0`` gives the bare linear response.
    """
    check_positive_int(M, "M")
    boxes = []
    for k in range(1, M + 1):
        f = Interval(mag(problem.forcing.bound(k)))
        linear = (f / (2 * (problem.beta * (k * k) - 1))).hi
        env = (Interval(envelope) / Interval(k) ** 4).hi if envelope > 0 else 0.0
        r = max(linear, env, floor)
        boxes.append((Interval(-r), Interval(r)))
    return Segment(M=M, s=INITIAL_S, C=_as_interval(c_tilde), boxes=tuple(boxes))


def _inflate_up(x: float, factor: Interval) -> float:
    """Move an upper endpoint away from the box by ``factor`` (rounded up)."""
    if x > 0:
        return (Interval(x) * factor).hi
    return (Interval(x) / factor).hi


def _inflate_down(x: float, factor: Interval) -> float:
    if x < 0:
        return (Interval(x) * factor).lo
    return (Interval(x) / factor).lo


def refine_step(
    seg: Segment,
    problem: Problem,
    inflation: float = DEFAULT_INFLATION,
    floor: float = DEFAULT_FLOOR,
) -> Segment:
    """One pass: ``s += 1``, ``C`` from ``D``, then boxes ``k = 1..M`` in order.

    The enclosure for mode ``k`` is evaluated on the partially updated
    segment (new ``C`` and ``s``, boxes ``< k`` already replaced). Each new
    endpoint is pushed outward by ``inflation`` as soon as it is computed,
    so later modes see the inflated boxes.
    """
    if inflation < 1:
        raise DomainError(f"inflation factor must be >= 1, got {inflation!r}")
    M = seg.M
    beta = problem.beta
    D = d_total(seg)
    gap = beta - Interval(1) / ((M + 1) * (M + 1))
    C_new = (Interval(mag(problem.sigma)) * D / (2 * gap)).hi
    if not math.isfinite(C_new):
        raise RefinementDiverged(f"tail amplitude overflowed (D={D.hi!r})")
    C_new = Interval(max(C_new, floor))
    s_new = seg.s + 1
    lam = Interval(inflation)

    boxes = list(seg.boxes)
    for k in range(1, M + 1):
        partial = Segment(M=M, s=s_new, C=C_new, boxes=tuple(boxes))
        N = n_low(partial, problem.sigma, k)
        f = problem.forcing.bound(k)
        k2 = k * k
        denom = 2 * (beta * k2 - 1)
        r = (-(Interval(N.lo) + Interval(f.lo) / k2) / denom).hi
        l = (-(Interval(N.hi) + Interval(f.hi) / k2) / denom).lo
        r, l = _inflate_up(r, lam), _inflate_down(l, lam)
        if not l < r:
            l, r = (Interval(l) - floor).lo, (Interval(r) + floor).hi
        if not (math.isfinite(l) and math.isfinite(r)):
            raise RefinementDiverged(f"box {k} overflowed during refinement")
        boxes[k - 1] = (Interval(l), Interval(r))
    return Segment(M=M, s=s_new, C=C_new, boxes=tuple(boxes))


def refine(
    problem: Problem,
    M: int,
    iterations: int = 2,
    *,
    c_tilde=DEFAULT_C_TILDE,
    floor: float = DEFAULT_FLOOR,
    inflation: float = DEFAULT_INFLATION,
    envelope_factor: float = DEFAULT_ENVELOPE_FACTOR,
) -> tuple[Segment, VerificationReport]:
    """Initial guess, ``iterations`` refinement steps, then verification.

    If a step diverges the last finite segment is verified instead and the
    report carries a diagnostic; ``passed`` is then always false.
    """
    check_problem(problem)
    check_positive_int(iterations, "iterations")
    envelope = envelope_factor * problem.forcing.max_magnitude()
    seg = initial_guess(problem, M, c_tilde=c_tilde, floor=floor, envelope=envelope)
    for step in range(1, iterations + 1):
        try:
            seg = refine_step(seg, problem, inflation=inflation, floor=floor)
        except RefinementDiverged as exc:
            rep = verify(seg, problem)
            note = f"refinement diverged at step {step} of {iterations}: {exc}"
            return seg, replace(rep, passed=False, diagnostics=rep.diagnostics + (note,))
    return seg, verify(seg, problem)


def rescale_for_epsilon(seg: Segment, old_eps_mag, new_eps_mag) -> Segment:
    """Scale boxes and ``C`` by ``new/old``; the tail exponent is kept."""
    old, new = _as_interval(old_eps_mag), _as_interval(new_eps_mag)
    if not old.lo > 0:
        raise ValidationError("old epsilon magnitude must be positive", key="old_eps_mag")
    ratio = new / old
    boxes = tuple((l * ratio, r * ratio) for l, r in seg.boxes)
    return Segment(M=seg.M, s=seg.s, C=seg.C * ratio, boxes=boxes)
