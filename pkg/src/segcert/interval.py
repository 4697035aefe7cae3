"""Outward-rounded interval arithmetic over binary64 endpoints.

Rounding is done without touching the FPU control word. Sums use an
error-free transformation (TwoSum) to decide whether the rounded result
is exact; products, quotients and square roots compare the rounded value
against the exact rational result. Only inexact results move one ulp
outward, so operations on exactly representable data stay tight::

    >>> Interval(1, 2) + Interval(3, 4)
    Interval(lo=4.0, hi=6.0)
    >>> Interval(-1, 2) * Interval(3, 4)
    Interval(lo=-4.0, hi=8.0)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Rational, Real

from .errors import DomainError, ParseError

__all__ = [
    "Interval",
    "add",
    "sub",
    "mul",
    "div",
    "neg",
    "sqrt",
    "square",
    "pow_int",
    "mag",
    "hull",
    "intersect",
    "contains",
    "strictly_less",
    "imax",
    "from_decimal",
    "two_pi",
]

_INF = math.inf
_MAX = 1.7976931348623157e308


def _down(q: Fraction) -> float:
    """Largest binary64 value not exceeding ``q``."""
    try:
        f = q.numerator / q.denominator  # correctly rounded int division
    except OverflowError:
        return _MAX if q > 0 else -_INF
    if math.isinf(f):
        return _MAX if f > 0 else -_INF
    if f > q:
        f = math.nextafter(f, -_INF)
    return f


def _up(q: Fraction) -> float:
    """Smallest binary64 value not below ``q``."""
    try:
        f = q.numerator / q.denominator
    except OverflowError:
        return _INF if q > 0 else -_MAX
    if math.isinf(f):
        return _INF if f > 0 else -_MAX
    if f < q:
        f = math.nextafter(f, _INF)
    return f


def _two_sum_bounds(a: float, b: float) -> tuple[float, float]:
    """Tight binary64 bounds on the exact sum ``a + b``."""
    s = a + b
    if not math.isfinite(s):
        if math.isnan(s):
            raise DomainError("undefined sum of opposite infinities")
        # overflow of finite operands saturates towards the true sign
        if math.isfinite(a) and math.isfinite(b):
            return (_MAX, _INF) if s > 0 else (-_INF, -_MAX)
        return s, s
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    if err > 0:
        return s, math.nextafter(s, _INF)
    if err < 0:
        return math.nextafter(s, -_INF), s
    return s, s


def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval ``[lo, hi]`` with binary64 endpoints.

    Non-float endpoints (ints, Fractions) are rounded outward on
    construction, so ``Interval(Fraction(1, 3))`` already encloses 1/3.
    """

    lo: float
    hi: float = None  # type: ignore[assignment]

    def __post_init__(self):
        lo, hi = self.lo, self.hi
        if hi is None:
            hi = lo
        if not isinstance(lo, float):
            lo = _down(_exact(lo)) if isinstance(lo, Rational) else float(lo)
        if not isinstance(hi, float):
            hi = _up(_exact(hi)) if isinstance(hi, Rational) else float(hi)
        if math.isnan(lo) or math.isnan(hi):
            raise DomainError("interval endpoint is NaN")
        if lo > hi:
            raise DomainError(f"empty interval [{lo!r}, {hi!r}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    # -- constructors -----------------------------------------------------

    @classmethod
    def symmetric(cls, radius: float | Interval) -> Interval:
        """``radius * [-1, 1]`` using the upper bound of ``radius``."""
        r = radius.hi if isinstance(radius, Interval) else float(radius)
        r = abs(r)
        return cls(-r, r)

    # -- basic queries ----------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    @property
    def width(self) -> float:
        lo, hi = _two_sum_bounds(self.hi, -self.lo)
        return hi

    @property
    def mid(self) -> float:
        return 0.5 * self.lo + 0.5 * self.hi

    def __contains__(self, x) -> bool:
        return contains(self, x)

    def __repr__(self) -> str:
        return f"Interval(lo={self.lo!r}, hi={self.hi!r})"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, p: int):
        return pow_int(self, p)


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, (Real, Fraction)):
        return Interval(x, x)
    return NotImplemented


def add(x: Interval, y: Interval) -> Interval:
    x, y = _coerce(x), _coerce(y)
    return Interval(_two_sum_bounds(x.lo, y.lo)[0], _two_sum_bounds(x.hi, y.hi)[1])


def sub(x: Interval, y: Interval) -> Interval:
    x, y = _coerce(x), _coerce(y)
    return Interval(_two_sum_bounds(x.lo, -y.hi)[0], _two_sum_bounds(x.hi, -y.lo)[1])


def neg(x: Interval) -> Interval:
    return Interval(-x.hi, -x.lo)


def _mul_nonfinite(x: Interval, y: Interval) -> Interval:
    # only reachable after saturation; fall back to the widest sound answer
    cands = []
    for a in (x.lo, x.hi):
        for b in (y.lo, y.hi):
            p = 0.0 if (a == 0 or b == 0) else a * b
            cands.append(p)
    lo, hi = min(cands), max(cands)
    return Interval(math.nextafter(lo, -_INF) if math.isfinite(lo) else lo,
                    math.nextafter(hi, _INF) if math.isfinite(hi) else hi)


def mul(x: Interval, y: Interval) -> Interval:
    x, y = _coerce(x), _coerce(y)
    if not (x.is_finite and y.is_finite):
        return _mul_nonfinite(x, y)
    a, b = Fraction(x.lo), Fraction(x.hi)
    c, d = Fraction(y.lo), Fraction(y.hi)
    if x.lo >= 0 and y.lo >= 0:
        return Interval(_down(a * c), _up(b * d))
    prods = (a * c, a * d, b * c, b * d)
    return Interval(_down(min(prods)), _up(max(prods)))


def div(x: Interval, y: Interval) -> Interval:
    x, y = _coerce(x), _coerce(y)
    if y.lo <= 0 <= y.hi:
        raise DomainError(f"division by an interval containing zero: {y!r}")
    if not (x.is_finite and y.is_finite):
        cands = [a / b for a in (x.lo, x.hi) for b in (y.lo, y.hi)]
        lo, hi = min(cands), max(cands)
        return Interval(math.nextafter(lo, -_INF), math.nextafter(hi, _INF))
    a, b = Fraction(x.lo), Fraction(x.hi)
    c, d = Fraction(y.lo), Fraction(y.hi)
    quots = (a / c, a / d, b / c, b / d)
    return Interval(_down(min(quots)), _up(max(quots)))


def _sqrt_down(v: float) -> float:
    r = math.sqrt(v)
    if Fraction(r) ** 2 > Fraction(v):
        r = math.nextafter(r, 0.0)
    return r


def _sqrt_up(v: float) -> float:
    if math.isinf(v):
        return v
    r = math.sqrt(v)
    if Fraction(r) ** 2 < Fraction(v):
        r = math.nextafter(r, _INF)
    return r


def sqrt(x: Interval) -> Interval:
    x = _coerce(x)
    if x.lo < 0:
        raise DomainError(f"sqrt of an interval with negative lower endpoint: {x!r}")
    return Interval(_sqrt_down(x.lo), _sqrt_up(x.hi))


def pow_int(x: Interval, p: int) -> Interval:
    """``{t**p : t in x}`` for a nonnegative integer ``p``."""
    x = _coerce(x)
    if p < 0 or int(p) != p:
        raise DomainError(f"pow_int needs a nonnegative integer exponent, got {p!r}")
    p = int(p)
    if p == 0:
        return Interval(1.0, 1.0)
    if p == 1:
        return x
    if not x.is_finite:
        return _mul_nonfinite(x, pow_int(x, p - 1))
    a, b = Fraction(x.lo) ** p, Fraction(x.hi) ** p
    if p % 2 == 1:
        return Interval(_down(a), _up(b))
    if x.lo >= 0:
        return Interval(_down(a), _up(b))
    if x.hi <= 0:
        return Interval(_down(b), _up(a))
    return Interval(0.0, _up(max(a, b)))


def square(x: Interval) -> Interval:
    """Dependent square; tighter than ``mul(x, x)`` when ``0`` is inside ``x``."""
    return pow_int(x, 2)


def mag(x: Interval) -> float:
    x = _coerce(x)
    return max(abs(x.lo), abs(x.hi))


def hull(x: Interval, y: Interval) -> Interval:
    x, y = _coerce(x), _coerce(y)
    return Interval(min(x.lo, y.lo), max(x.hi, y.hi))


def intersect(x: Interval, y: Interval) -> Interval | None:
    """Set intersection, or ``None`` when the intervals are disjoint."""
    x, y = _coerce(x), _coerce(y)
    lo, hi = max(x.lo, y.lo), min(x.hi, y.hi)
    if lo > hi:
        return None
    return Interval(lo, hi)


def imax(*xs: Interval) -> Interval:
    """Enclosure of ``max`` over representatives of each argument."""
    xs = [_coerce(x) for x in xs]
    return Interval(max(x.lo for x in xs), max(x.hi for x in xs))


def contains(x: Interval, v) -> bool:
    """Exact membership test for a real number or a sub-interval."""
    if isinstance(v, Interval):
        return x.lo <= v.lo and v.hi <= x.hi
    if isinstance(v, float) or isinstance(v, int):
        return x.lo <= v <= x.hi
    q = _exact(v)
    return Fraction(x.lo) <= q <= Fraction(x.hi)


def strictly_less(x: Interval, y: Interval) -> bool:
    """Certified ``x < y`` for every pair of representatives."""
    x, y = _coerce(x), _coerce(y)
    return x.hi < y.lo


def from_decimal(text: str) -> Interval:
    """Tightest interval containing the exact value of a decimal literal."""
    if not isinstance(text, str):
        raise ParseError(f"decimal literal must be a string, got {type(text).__name__}")
    try:
        d = Decimal(text.strip())
    except InvalidOperation as exc:
        raise ParseError(f"malformed decimal literal {text!r}") from exc
    if not d.is_finite():
        raise ParseError(f"decimal literal must be finite, got {text!r}")
    q = Fraction(d)
    return Interval(_down(q), _up(q))


# math.tau is the binary64 value nearest 2*pi and lies just below it.
_TWO_PI = Interval(math.tau, math.nextafter(math.tau, _INF))


def two_pi() -> Interval:
    return _TWO_PI
