"""Amplitude, norm and decay bounds for the solution inside a segment.

Two conventions are reported. ``"table"`` treats ``u = sum_{k>=1} u_k e^{ikx}``
and gives ``L2 = sqrt(2 pi sum a_k**2)``, ``C0 = sum a_k``; this is the
convention of the published tables. ``"parseval"`` uses the full even
expansion ``u = 2 sum_{k>=1} u_k cos kx`` and is the strict one: the L2
value is ``sqrt(2)`` times larger and the C0 value twice as large.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .interval import Interval, mag, sqrt, two_pi
from .model import Problem, lambda_k
from .segment import Segment

__all__ = [
    "CONVENTIONS",
    "TAIL_HEAD_TERMS",
    "NormBounds",
    "velocity_bound",
    "mode_amplitudes",
    "velocity_amplitudes",
    "l2_bound",
    "c0_bound",
    "norm_bounds",
    "decay_constants",
]

CONVENTIONS = ("table", "parseval")
# explicit tail terms summed before the integral remainder takes over
TAIL_HEAD_TERMS = 64


@dataclass(frozen=True)
class NormBounds:
    l2_u: Interval
    c0_u: Interval
    l2_ut: Interval
    c0_ut: Interval
    convention: str


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise DomainError(f"unknown norm convention {convention!r}")


def velocity_bound(seg: Segment, problem: Problem, k: int) -> Interval:
    """Upper bound on ``|v_k| = lambda_k |u_k^+ - u_k^-|``."""
    lam = lambda_k(k, problem.beta)
    if k <= seg.M:
        l, r = seg.boxes[k - 1]
        return 2 * lam * Interval(max(mag(l), mag(r)))
    return 2 * lam * seg.tail_bound(k)


def mode_amplitudes(seg: Segment, n_terms: int) -> list[Interval]:
    return [seg.abs_u(k) for k in range(1, n_terms + 1)]


def velocity_amplitudes(seg: Segment, problem: Problem, n_terms: int) -> list[Interval]:
    return [velocity_bound(seg, problem, k) for k in range(1, n_terms + 1)]


def _remainder(amp: Interval, power: int, start: int) -> Interval:
    # sum_{k > K} 1/k**q <= integral_K^inf x**-q dx = 1/((q-1) K**(q-1))
    return Interval(amp.hi) / ((power - 1) * Interval(start) ** (power - 1))


def l2_bound(
    amplitudes: list[Interval],
    tail_amp: Interval,
    tail_exp: int,
    convention: str = "table",
) -> Interval:
    """L2 bound from ``|c_k| <= amplitudes[k-1]`` and ``|c_k| <= tail_amp / k**tail_exp`` past them."""
    _check_convention(convention)
    if tail_exp < 2:
        raise DomainError(f"tail exponent {tail_exp} too small for a convergent bound")
    total = Interval(0.0)
    for a in amplitudes:
        total = total + Interval(a.hi) ** 2
    total = total + _remainder(Interval(tail_amp.hi) ** 2, 2 * tail_exp, len(amplitudes))
    factor = two_pi() if convention == "table" else 2 * two_pi()
    return sqrt(factor * total)


def c0_bound(
    amplitudes: list[Interval],
    tail_amp: Interval,
    tail_exp: int,
    convention: str = "table",
) -> Interval:
    """Sup-norm bound by absolute summability of the coefficients."""
    _check_convention(convention)
    if tail_exp < 2:
        raise DomainError(f"tail exponent {tail_exp} too small for a convergent bound")
    total = Interval(0.0)
    for a in amplitudes:
        total = total + Interval(a.hi)
    total = total + _remainder(tail_amp, tail_exp, len(amplitudes))
    return total if convention == "table" else 2 * total


def norm_bounds(seg: Segment, problem: Problem, convention: str = "table") -> NormBounds:
    n = seg.M + TAIL_HEAD_TERMS
    amps_u = mode_amplitudes(seg, n)
    amps_v = velocity_amplitudes(seg, problem, n)
    tail_u = 2 * Interval(seg.C.hi)
    # lambda_k <= sqrt(beta) k**2, so |v_k| <= 2 sqrt(beta) C / k**(s-2)
    tail_v = 2 * sqrt(problem.beta) * Interval(seg.C.hi)
    return NormBounds(
        l2_u=l2_bound(amps_u, tail_u, seg.s, convention),
        c0_u=c0_bound(amps_u, tail_u, seg.s, convention),
        l2_ut=l2_bound(amps_v, tail_v, seg.s - 2, convention),
        c0_ut=c0_bound(amps_v, tail_v, seg.s - 2, convention),
        convention=convention,
    )


def decay_constants(seg: Segment, problem: Problem) -> tuple[Interval, Interval]:
    """``(Cu, Cv)`` with ``|u_k| <= Cu / k**6`` and ``|v_k| <= Cv / k**4`` for all k."""
    if seg.s != 6:
        raise DomainError(f"decay constants are stated for s = 6, got s = {seg.s}")
    C = Interval(seg.C.hi)
    cu = 2 * C
    cv = 2 * sqrt(problem.beta) * C
    for k in range(1, seg.M + 1):
        kk = Interval(k)
        cu_k = kk ** 6 * seg.abs_u(k)
        cv_k = kk ** 4 * velocity_bound(seg, problem, k)
        cu = cu if cu.hi >= cu_k.hi else cu_k
        cv = cv if cv.hi >= cv_k.hi else cv_k
    return Interval(cu.hi), Interval(cv.hi)
