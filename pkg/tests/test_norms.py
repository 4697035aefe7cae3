from fractions import Fraction

import mpmath
import numpy as np
import pytest

from conftest import refined
from segcert.errors import DomainError
from segcert.interval import Interval, contains, from_decimal, sqrt
from segcert.model import lambda_k
from segcert.norms import (
    c0_bound,
    decay_constants,
    l2_bound,
    norm_bounds,
    velocity_bound,
)
from segcert.reference import REFERENCE_CONFIGS
from segcert.sandbox import sample_segment_points
from segcert.segment import Segment

mpmath.mp.dps = 40
BY_NAME = {r.name: r for r in REFERENCE_CONFIGS}


def zeta_tail(q: int, M: int) -> mpmath.mpf:
    return mpmath.zeta(q) - sum(mpmath.mpf(k) ** -q for k in range(1, M + 1))


def oracle_norms(ref):
    """Table-convention norms of the printed segment, from exact sums and zeta tails."""
    r = [mpmath.mpf(x) for x in ref.boxes_r]
    C = mpmath.mpf(ref.C)
    l2 = mpmath.sqrt(2 * mpmath.pi * (4 * sum(x * x for x in r) + 4 * C * C * zeta_tail(12, 6)))
    c0 = 2 * sum(r) + 2 * C * zeta_tail(6, 6)
    return l2, c0


def tail_only(C=1.0):
    z = Interval(0.0)
    return Segment(M=6, s=6, C=Interval(C), boxes=((z, z),) * 6)


def test_velocity_bound_hand_value():
    ref = BY_NAME["A-2.5"]
    v = velocity_bound(ref.published_segment(), ref.problem(), 2)
    # |v_2| <= lambda_2 |u_2^+ - u_2^-| <= 2 * 6 * r_2
    assert Fraction(v.hi) >= 12 * Fraction("0.020237")
    assert abs(v.hi - 0.242844) < 1e-6


def test_velocity_bound_zero_and_tail():
    ref = BY_NAME["A-1.5"]
    z = Interval(0.0)
    zero = Segment(M=6, s=6, C=z, boxes=((z, z),) * 6)
    assert velocity_bound(zero, ref.problem(), 3) == Interval(0.0)
    seg = ref.published_segment()
    for k in range(7, 40):
        cap = 2 * sqrt(ref.problem().beta) * seg.C / Interval(k) ** (seg.s - 2)
        assert velocity_bound(seg, ref.problem(), k).hi <= cap.hi


@pytest.mark.parametrize("name", list(BY_NAME))
def test_norms_of_printed_segment_match_oracle(name):
    ref = BY_NAME[name]
    nb = norm_bounds(ref.published_segment(), ref.problem(), "table")
    l2, c0 = oracle_norms(ref)
    assert mpmath.mpf(nb.l2_u.hi) >= l2 and nb.l2_u.hi / float(l2) - 1 < 1e-9
    assert mpmath.mpf(nb.c0_u.hi) >= c0 and nb.c0_u.hi / float(c0) - 1 < 1e-8


def test_l2_hand_values():
    a = norm_bounds(BY_NAME["A-1.5"].published_segment(), BY_NAME["A-1.5"].problem())
    assert abs(a.l2_u.hi - 0.288618) < 2e-6
    b = norm_bounds(BY_NAME["A-1.75"].published_segment(), BY_NAME["A-1.75"].problem())
    assert abs(b.l2_u.hi - 0.41503) < 1e-5


def test_trivial_amplitudes():
    z = Interval(0.0)
    assert l2_bound([z] * 3, z, 6) == Interval(0.0)
    assert c0_bound([z] * 3, z, 6) == Interval(0.0)
    assert c0_bound([Interval(0.3)], z, 6) == Interval(0.3)


def test_divergent_exponent_rejected():
    with pytest.raises(DomainError):
        l2_bound([Interval(1.0)], Interval(1.0), 1)
    with pytest.raises(DomainError):
        c0_bound([Interval(1.0)], Interval(1.0), 1)
    with pytest.raises(DomainError):
        l2_bound([Interval(1.0)], Interval(1.0), 6, convention="other")


@pytest.mark.parametrize("name", list(BY_NAME))
def test_parseval_relation(name):
    ref = BY_NAME[name]
    seg = ref.published_segment()
    t, p = norm_bounds(seg, ref.problem(), "table"), norm_bounds(seg, ref.problem(), "parseval")
    root2 = float(mpmath.sqrt(2))
    assert abs(p.l2_u.hi / (root2 * t.l2_u.hi) - 1) < 1e-15
    assert abs(p.l2_ut.hi / (root2 * t.l2_ut.hi) - 1) < 1e-15
    assert p.c0_u.hi == 2 * t.c0_u.hi


def test_decay_constants_trivial_cases():
    p = BY_NAME["A-1.5"].problem()
    z = Interval(0.0)
    zero = Segment(M=6, s=6, C=z, boxes=((z, z),) * 6)
    assert decay_constants(zero, p) == (Interval(0.0), Interval(0.0))
    cu, cv = decay_constants(tail_only(1.5), p)
    assert cu == Interval(3.0)
    assert cv == Interval((2 * sqrt(p.beta) * Interval(1.5)).hi)
    with pytest.raises(DomainError):
        decay_constants(Segment(M=6, s=7, C=z, boxes=((z, z),) * 6), p)


@pytest.mark.parametrize("name", list(BY_NAME))
def test_decay_constants_dominate(name):
    ref, problem, seg, _ = refined(name)
    cu, cv = decay_constants(seg, problem)
    for k in range(1, 257):
        kk = Interval(k)
        assert (kk ** 6 * seg.abs_u(k)).hi <= cu.hi * (1 + 1e-15)
        assert (kk ** 4 * velocity_bound(seg, problem, k)).hi <= cv.hi * (1 + 1e-15)


@pytest.mark.parametrize("name", list(BY_NAME))
def test_sampled_points_respect_bounds(name):
    _, problem, seg, _ = refined(name)
    nb = norm_bounds(seg, problem, "table")
    rng = np.random.default_rng(5)
    n = 64
    plus, minus = sample_segment_points(seg, n, rng, 1000)
    lam = np.array([lambda_k(k, problem.beta).mid for k in range(1, n + 1)])
    u = np.abs(plus + minus)
    v = lam * np.abs(plus - minus)
    ub = np.array([seg.abs_u(k).hi for k in range(1, n + 1)])
    vb = np.array([velocity_bound(seg, problem, k).hi for k in range(1, n + 1)])
    assert np.all(u <= ub) and np.all(v <= vb)
    two_pi = 2 * np.pi
    assert np.all(u.sum(axis=1) <= nb.c0_u.hi)
    assert np.all(v.sum(axis=1) <= nb.c0_ut.hi)
    assert np.all(np.sqrt(two_pi * (u ** 2).sum(axis=1)) <= nb.l2_u.hi)
    assert np.all(np.sqrt(two_pi * (v ** 2).sum(axis=1)) <= nb.l2_ut.hi)
