from fractions import Fraction

import numpy as np
import pytest

from conftest import refined
from segcert.errors import DomainError
from segcert.interval import Interval, contains, from_decimal
from segcert.nonlinearity import d1, d2, d_total, enclosures, fs_exact, is_low, n_low
from segcert.reference import REFERENCE_CONFIGS
from segcert.sandbox import nonlinearity
from segcert.segment import Segment

A15 = REFERENCE_CONFIGS[0]
NAMES = [r.name for r in REFERENCE_CONFIGS]


def zero_segment(C=0.0, M=6):
    z = Interval(0.0)
    return Segment(M=M, s=6, C=Interval(C), boxes=((z, z),) * M)


def scaled(seg: Segment, factor: float) -> Segment:
    f = Interval(factor)
    return Segment(
        M=seg.M,
        s=seg.s,
        C=Interval((seg.C * f).hi),
        boxes=tuple((Interval((l * f).lo), Interval((r * f).hi)) for l, r in seg.boxes),
    )


def segment_points(seg: Segment, n: int, rng, size: int):
    """Diagonal coordinates: half uniform, half on vertices of the n-mode box."""
    lo = np.array([seg.left(k).mid if k <= seg.M else -seg.C.lo / k ** seg.s for k in range(1, n + 1)])
    hi = np.array([seg.right(k).mid if k <= seg.M else seg.C.lo / k ** seg.s for k in range(1, n + 1)])
    plus = rng.uniform(lo, hi, size=(size, n))
    minus = rng.uniform(lo, hi, size=(size, n))
    half = size // 2
    plus[:half] = np.where(rng.random((half, n)) < 0.5, lo, hi)
    minus[:half] = np.where(rng.random((half, n)) < 0.5, lo, hi)
    return plus, minus


# ------------------------------------------------------------- examples


def test_is_low_at_k_equal_m_has_only_tail_terms():
    seg = A15.published_segment()
    x = is_low(seg, 6)
    assert x.lo == -x.hi  # empty head sum leaves a symmetric enclosure
    assert is_low(zero_segment(), 1) == Interval(0.0)
    assert is_low(zero_segment(), 6) == Interval(0.0)


def test_is_low_contains_sampled_inner_sum_n64():
    seg = A15.published_segment()
    rng = np.random.default_rng(11)
    plus, minus = segment_points(seg, 64, rng, 1000)
    u = plus + minus
    vals = np.sum(u[:, 1:] * u[:, :-1], axis=1)
    box = is_low(seg, 1)
    assert np.all(vals >= box.lo) and np.all(vals <= box.hi)


def test_fs_exact_examples():
    seg = A15.published_segment()
    fs2 = fs_exact(seg, 2)
    assert fs2.lo == 0.0
    assert Fraction(fs2.hi) >= Fraction("0.11486") ** 2
    assert fs2.hi < 0.01319314
    fs3 = fs_exact(seg, 3)
    assert fs3 == 2 * (seg.u_box(1) * seg.u_box(2))
    assert fs_exact(zero_segment(), 5) == Interval(0.0)
    with pytest.raises(DomainError):
        fs_exact(seg, 1)
    with pytest.raises(DomainError):
        fs_exact(seg, 13)


def test_d_examples():
    assert d1(zero_segment()) == Interval(0.0)
    assert d2(zero_segment()) == Interval(0.0)
    assert d_total(zero_segment()) == Interval(0.0)
    a, b = d2(zero_segment(1.0)), d2(zero_segment(2.0))
    assert abs(b.hi / a.hi - 4.0) < 1e-12
    seg = A15.published_segment()
    assert d1(scaled(seg, 2.0)).hi >= 2 * d1(seg).hi
    D = d_total(seg)
    assert D.hi >= d1(seg).hi and D.hi >= 2 * d2(seg).hi
    assert D.is_finite


def test_n_low_sign_and_zero():
    seg = A15.published_segment()
    for k in range(1, 7):
        pos, neg = n_low(seg, Interval(3.0), k), n_low(seg, Interval(-3.0), k)
        assert neg == Interval(-pos.hi, -pos.lo)
        assert n_low(zero_segment(), Interval(3.0), k) == Interval(0.0)
    with pytest.raises(DomainError):
        n_low(seg, Interval(3.0), 7)


# ----------------------------------------------------------- properties


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("n", [24, 64])
def test_p1_containment(name, n):
    _, problem, seg, _ = refined(name)
    sigma = problem.sigma.mid
    encl = enclosures(seg, problem.sigma)
    rng = np.random.default_rng(100 + n)
    plus, minus = segment_points(seg, n, rng, 1000)
    violations = 0
    for p, m in zip(plus, minus):
        N = sigma * nonlinearity(p + m)
        for k in range(1, seg.M + 1):
            violations += not (encl.n_low[k - 1].lo <= N[k - 1] <= encl.n_low[k - 1].hi)
    assert violations == 0


@pytest.mark.parametrize("name", NAMES)
def test_p2_inclusion_monotonicity(name):
    _, problem, seg, _ = refined(name)
    for factor in (1.01, 1.5):
        big = scaled(seg, factor)
        small_e, big_e = enclosures(seg, problem.sigma), enclosures(big, problem.sigma)
        for a, b in zip(small_e.n_low, big_e.n_low):
            assert contains(b, a)
        assert small_e.d1.hi <= big_e.d1.hi
        assert small_e.d2.hi <= big_e.d2.hi
        assert small_e.d.hi <= big_e.d.hi


@pytest.mark.parametrize("name", NAMES)
def test_p3_tail_bound(name):
    _, problem, seg, _ = refined(name)
    D = d_total(seg).hi
    rng = np.random.default_rng(7)
    plus, minus = segment_points(seg, 24, rng, 1000)
    ks = np.arange(seg.M + 1, 25)
    worst = 0.0
    for p, m in zip(plus, minus):
        N = nonlinearity(p + m)
        worst = max(worst, float(np.max(ks ** (seg.s - 1.0) * np.abs(N[ks - 1]))))
    assert worst <= D


def test_p4_zero_segment():
    e = enclosures(zero_segment(), from_decimal("3"))
    assert all(x == Interval(0.0) for x in e.n_low)
    assert e.d == Interval(0.0)
