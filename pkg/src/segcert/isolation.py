"""Rigorous check of the isolation inequalities on a box segment.

High modes ``k > M`` are settled at once: on the face ``u_k^+ = C/k**s``
the sign of ``du_k^+/dt`` is that of ``C/k**s + sigma N_k / (2(beta k**2-1))``,
and with ``|N_k| < D/k**(s-1)`` this is positive whenever

    C > |sigma| D / (M+1) * 1 / (2 (beta - (M+1)**-2)),

the right-hand side being largest at ``k = M+1``. Low modes ``k <= M`` need

    l_k < -(sigma N_k + eps f_k / k**2) / (2 (beta k**2 - 1)) < r_k

for every point of the segment; the ``u^+`` and ``u^-`` faces give the
same pair of inequalities. All comparisons go through
:func:`~segcert.interval.strictly_less`, so rounding can only cause a
false negative.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .interval import Interval, mag, strictly_less
from .model import Problem
from .nonlinearity import NEnclosures, enclosures
from .segment import MIN_CERTIFIED_S, Segment
from .validation import check_problem, check_segment

__all__ = [
    "HighModeRecord",
    "LowModeRecord",
    "VerificationReport",
    "high_mode_rhs",
    "low_mode_rhs",
    "check_high",
    "check_low",
    "verify",
]


@dataclass(frozen=True)
class HighModeRecord:
    lhs: Interval
    rhs: Interval
    margin: float
    passed: bool


@dataclass(frozen=True)
class LowModeRecord:
    k: int
    rhs_enclosure: Interval
    upper_margin: float  # lo(r_k) - hi(RHS)
    lower_margin: float  # lo(RHS) - hi(l_k)
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    high_mode: HighModeRecord
    low_modes: tuple[LowModeRecord, ...]
    s_ok: bool
    forcing_support_ok: bool
    enclosures: NEnclosures
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def min_margin(self) -> float:
        margins = [self.high_mode.margin]
        for rec in self.low_modes:
            margins += [rec.upper_margin, rec.lower_margin]
        return min(margins)


def high_mode_rhs(seg: Segment, problem: Problem, D: Interval) -> Interval:
    M1 = seg.M + 1
    sigma = Interval(mag(problem.sigma))
    gap = problem.beta - Interval(1) / (M1 * M1)
    return sigma * D / M1 / (2 * gap)


def check_high(seg: Segment, problem: Problem, D: Interval) -> HighModeRecord:
    lhs = Interval(seg.C.lo, seg.C.hi)
    rhs = high_mode_rhs(seg, problem, D)
    margin = lhs.lo - rhs.hi
    return HighModeRecord(lhs=lhs, rhs=rhs, margin=margin, passed=strictly_less(rhs, lhs))


def low_mode_rhs(problem: Problem, k: int, sigma_n: Interval) -> Interval:
    """``-(sigma N_k + eps f_k k**-2) / (2 (beta k**2 - 1))`` as an interval."""
    k2 = k * k
    f = problem.forcing.bound(k) / k2
    return -(sigma_n + f) / (2 * (problem.beta * k2 - 1))


def check_low(seg: Segment, problem: Problem, encl: NEnclosures) -> tuple[LowModeRecord, ...]:
    records = []
    for k in range(1, seg.M + 1):
        rhs = low_mode_rhs(problem, k, encl.n_low[k - 1])
        l, r = seg.boxes[k - 1]
        up = strictly_less(rhs, r)
        down = strictly_less(l, rhs)
        records.append(
            LowModeRecord(
                k=k,
                rhs_enclosure=rhs,
                upper_margin=r.lo - rhs.hi,
                lower_margin=rhs.lo - l.hi,
                passed=up and down,
            )
        )
    return tuple(records)


def verify(seg: Segment, problem: Problem) -> VerificationReport:
    """Run every isolation check and assemble the report.

    Structural defects (empty boxes, nonpositive ``C``, ``beta <= 1``)
    raise :class:`~segcert.errors.ValidationError`. Soft failures (small
    ``s``, forcing outside the explicit modes, negative margins) are
    reported with ``passed=False`` and a diagnostic line.
    """
    check_problem(problem)
    check_segment(seg, certify=False)

    diagnostics = []
    s_ok = seg.s >= MIN_CERTIFIED_S
    if not s_ok:
        diagnostics.append(
            f"tail exponent s={seg.s} is below the required minimum {MIN_CERTIFIED_S}"
        )
    support = problem.forcing.support()
    forcing_ok = support <= seg.M
    if not forcing_ok:
        diagnostics.append(
            f"forcing mode {support} is nonzero but only modes 1..{seg.M} are explicit; "
            "the high-mode estimate requires f_k = 0 for k > M"
        )

    encl = enclosures(seg, problem.sigma)
    high = check_high(seg, problem, encl.d)
    if not high.passed:
        diagnostics.append(
            f"high-mode inequality fails: C={seg.C.lo!r} does not exceed {high.rhs.hi!r}"
        )
    lows = check_low(seg, problem, encl)
    for rec in lows:
        if not rec.passed:
            diagnostics.append(
                f"low-mode inequality fails for k={rec.k}: "
                f"upper margin {rec.upper_margin:.6g}, lower margin {rec.lower_margin:.6g}"
            )

    passed = s_ok and forcing_ok and high.passed and all(r.passed for r in lows)
    return VerificationReport(
        passed=passed,
        high_mode=high,
        low_modes=lows,
        s_ok=s_ok,
        forcing_support_ok=forcing_ok,
        enclosures=encl,
        diagnostics=tuple(diagnostics),
    )
