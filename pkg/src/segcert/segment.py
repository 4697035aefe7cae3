"""Candidate isolating segments: explicit low-mode boxes plus a power-law tail.

A segment constrains both diagonal variables of mode ``k`` to the same box,
``u_k^+, u_k^- in [l_k, r_k]`` for ``k <= M`` and ``|u_k^+-| <= C / k**s``
beyond. The physical coefficient ``u_k = u_k^+ + u_k^-`` then lies in
``[2 l_k, 2 r_k]`` resp. ``[-2C/k**s, 2C/k**s]``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, ValidationError
from .interval import Interval, mag

__all__ = ["Segment", "MIN_CERTIFIED_S"]

# tail exponent needed for the self-consistent bounds argument
MIN_CERTIFIED_S = 6


@dataclass(frozen=True)
class Segment:
    """Low-mode boxes ``(l_k, r_k)``, ``k = 1..M``, and tail ``C / k**s``.

    Construction only enforces shape. Degenerate segments (all zeros) are
    representable so enclosures can be probed on them; the strict
    invariants are checked by :func:`segcert.validation.check_segment`.
    """

    M: int
    s: int
    C: Interval
    boxes: tuple[tuple[Interval, Interval], ...]

    def __post_init__(self):
        boxes = tuple((l, r) for l, r in self.boxes)
        object.__setattr__(self, "boxes", boxes)
        if not isinstance(self.M, int) or self.M < 1:
            raise ValidationError(f"M must be a positive integer, got {self.M!r}", key="M")
        if len(boxes) != self.M:
            raise ValidationError(f"expected {self.M} boxes, got {len(boxes)}", key="segment.boxes")
        if not isinstance(self.s, int) or self.s < 2:
            raise ValidationError(f"tail exponent s must be an integer >= 2, got {self.s!r}", key="segment.s")
        if self.C.lo < 0:
            raise ValidationError("tail amplitude C must be nonnegative", key="segment.C")
        for k, (l, r) in enumerate(boxes, start=1):
            if l.lo > r.hi:
                raise ValidationError(f"box {k} has l > r", key=f"segment.boxes[{k - 1}]")

    @property
    def tail_amplitude(self) -> float:
        return self.C.hi

    def left(self, k: int) -> Interval:
        return self.boxes[k - 1][0]

    def right(self, k: int) -> Interval:
        return self.boxes[k - 1][1]

    def tail_bound(self, k: int) -> Interval:
        """Enclosure of ``C / k**s`` (upper endpoint of ``C``)."""
        return Interval(self.C.hi) / Interval(k) ** self.s

    def u_box(self, k: int) -> Interval:
        """Interval containing ``u_k = u_k^+ + u_k^-`` over the segment."""
        if k < 1:
            raise DomainError(f"mode index must be >= 1, got {k}")
        if k <= self.M:
            l, r = self.boxes[k - 1]
            # doubling a finite binary64 value is exact
            return Interval(2.0 * l.lo, 2.0 * r.hi)
        t = 2 * self.tail_bound(k)
        return Interval(-t.hi, t.hi)

    def abs_u(self, k: int) -> Interval:
        """Upper bound on ``|u_k|`` as a point interval."""
        if k < 1:
            raise DomainError(f"mode index must be >= 1, got {k}")
        if k <= self.M:
            l, r = self.boxes[k - 1]
            return Interval(2.0 * max(mag(l), mag(r)))
        return Interval((2 * self.tail_bound(k)).hi)

    def sum_abs_u_low(self) -> Interval:
        total = Interval(0.0)
        for k in range(1, self.M + 1):
            total = total + self.abs_u(k)
        return total

    def is_symmetric(self) -> bool:
        return all(l.lo == -r.hi and l.hi == -r.lo for l, r in self.boxes)
