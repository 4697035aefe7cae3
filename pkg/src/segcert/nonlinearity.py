"""Interval enclosures of the quadratic convolution terms.

The nonlinearity of mode ``k`` is ``N_k(u) = -2 IS(k) - FS(k)`` with

    IS(k) = sum_{j >= 1} u_{j+k} u_j          (infinite sum)
    FS(k) = sum_{j=1}^{k-1} u_j u_{k-j}       (finite sum)

For ``k <= M`` the infinite sum is split into an explicit head and two
tail remainders. For ``k > M`` both sums are bounded by ``D1 / k**(s-1)``
and ``D2 / k**(s-1)``; ``D = D1 + 2 D2`` then bounds ``|N_k|``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .interval import Interval, imax, mag, square
from .segment import Segment

__all__ = [
    "NEnclosures",
    "is_low",
    "fs_exact",
    "d1",
    "d2",
    "d_total",
    "n_low",
    "enclosures",
]


@dataclass(frozen=True)
class NEnclosures:
    n_low: tuple[Interval, ...]
    d1: Interval
    d2: Interval
    d: Interval


def _c(seg: Segment) -> Interval:
    return Interval(seg.C.hi)


def is_low(seg: Segment, k: int) -> Interval:
    M, s = seg.M, seg.s
    if not 1 <= k <= M:
        raise DomainError(f"is_low needs 1 <= k <= M={M}, got {k}")
    C = _c(seg)
    head = Interval(0.0)
    for j in range(1, M - k + 1):
        head = head + seg.u_box(j + k) * seg.u_box(j)

    # u_{j+k} lies in the tail while u_j is still explicit
    mixed = Interval(0.0)
    for j in range(M - k + 1, M + 1):
        mixed = mixed + seg.abs_u(j) / Interval(k + j) ** s
    mixed = 2 * C * mixed

    # both factors in the tail
    far = 4 * C * C / (Interval(k + M + 1) ** s * (s - 1) * Interval(M) ** (s - 1))
    return head + Interval.symmetric(mixed) + Interval.symmetric(far)


def fs_exact(seg: Segment, k: int) -> Interval:
    if not 2 <= k <= 2 * seg.M:
        raise DomainError(f"fs_exact needs 2 <= k <= 2M={2 * seg.M}, got {k}")
    total = Interval(0.0)
    for j in range(1, (k - 1) // 2 + 1):
        total = total + 2 * (seg.u_box(j) * seg.u_box(k - j))
    if k % 2 == 0:
        total = total + square(seg.u_box(k // 2))
    return total


def d1(seg: Segment) -> Interval:
    """Constant with ``|FS(k)| <= D1 / k**(s-1)`` for all ``k > M``."""
    M, s = seg.M, seg.s
    C = _c(seg)
    near = Interval(0.0)
    for k in range(M + 1, 2 * M + 1):
        near = imax(near, Interval(k) ** (s - 1) * Interval(mag(fs_exact(seg, k))))

    S = seg.sum_abs_u_low()
    two_s1 = Interval(2) ** (s + 1)
    far = 2 * C * (
        two_s1 / (2 * M + 1) * S
        + C * Interval(2) ** (2 * s + 1) / Interval(2 * M + 1) ** (s + 1)
        + C * two_s1 / ((s - 1) * Interval(M) ** s)
    )
    return imax(near, far)


def d2(seg: Segment) -> Interval:
    """Constant with ``|IS(k)| <= D2 / k**(s-1)`` for all ``k > M``."""
    M, s = seg.M, seg.s
    C = _c(seg)
    S = seg.sum_abs_u_low()
    return 2 * C / (M + 1) * (2 * C / (Interval(M + 1) ** (s - 1) * (s - 1)) + S)


def d_total(seg: Segment) -> Interval:
    return d1(seg) + 2 * d2(seg)


def n_low(seg: Segment, sigma: Interval, k: int) -> Interval:
    """Enclosure of ``sigma * N_k(u)`` over the whole segment, ``k <= M``."""
    if not 1 <= k <= seg.M:
        raise DomainError(f"n_low needs 1 <= k <= M={seg.M}, got {k}")
    N = -2 * is_low(seg, k)
    if k >= 2:
        N = N - fs_exact(seg, k)
    return sigma * N


def enclosures(seg: Segment, sigma: Interval) -> NEnclosures:
    lows = tuple(n_low(seg, sigma, k) for k in range(1, seg.M + 1))
    a, b = d1(seg), d2(seg)
    return NEnclosures(n_low=lows, d1=a, d2=b, d=a + 2 * b)
