"""Plain floating-point tooling around the Galerkin projections.

Nothing in this module is rigorous. It evaluates the truncated vector field

    du_k^+/dt =  lambda_k u_k^+ + (sigma k^2 N_{k,n}(u) + eps f_k(t)) / (2 lambda_k)
    du_k^-/dt = -lambda_k u_k^- - (sigma k^2 N_{k,n}(u) + eps f_k(t)) / (2 lambda_k)

integrates it with classical RK4, and samples segment faces. It serves as
a quick pre-check and as the independent oracle in the test-suite.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .model import DiagPoint, Problem
from .segment import Segment

__all__ = [
    "ForcingInstance",
    "convolution_terms",
    "nonlinearity",
    "galerkin_rhs",
    "vector_field",
    "Trajectory",
    "rk4_integrate",
    "sample_segment_points",
    "FaceStats",
    "BoundaryReport",
    "boundary_sample",
    "FACE_FAMILIES",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ForcingInstance:
    """Concrete ``f_k(t)`` with ``|f_k| <= 1``; default ``cos(2 pi t / tau)``."""

    tau: float = 1.0
    funcs: dict[int, Callable[[float], float]] = field(default_factory=dict)

    def value(self, k: int, t: float) -> float:
        f = self.funcs.get(k)
        if f is None:
            return math.cos(2.0 * math.pi * t / self.tau)
        return f(t)


def _rates(n: int, beta: float) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(1, n + 1, dtype=float)
    k2 = k * k
    return k2, np.sqrt(k2 * (beta * k2 - 1.0))


def convolution_terms(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Truncated ``IS(k) = sum u_{j+k} u_j`` and ``FS(k) = sum_{j<k} u_j u_{k-j}``.

    ``u[i]`` holds mode ``i + 1``; both outputs are indexed the same way.
    """
    u = np.asarray(u, dtype=float)
    n = u.shape[0]
    corr = np.correlate(u, u, mode="full")  # corr[n-1+m] = sum_i u[i+m] u[i]
    IS = np.zeros(n)
    IS[: n - 1] = corr[n:]
    conv = np.convolve(u, u)  # conv[j] = sum_{a+b=j} u[a] u[b]
    FS = np.zeros(n)
    FS[1:] = conv[: n - 1]
    return IS, FS


def nonlinearity(u: np.ndarray) -> np.ndarray:
    """``N_{k,n}(u)`` for ``k = 1..n``."""
    IS, FS = convolution_terms(u)
    return -2.0 * IS - FS


def galerkin_rhs(
    plus: np.ndarray,
    minus: np.ndarray,
    beta: float,
    sigma: float,
    forcing: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Right-hand side given the realized forcing term ``eps f_k(t)`` per mode."""
    n = plus.shape[0]
    k2, lam = _rates(n, beta)
    N = nonlinearity(plus + minus)
    g = (sigma * k2 * N + forcing) / (2.0 * lam)
    return lam * plus + g, -lam * minus - g


def _forcing_vector(n: int, problem: Problem, eps: float, instance: ForcingInstance, t: float):
    out = np.zeros(n)
    for k in range(1, min(n, problem.forcing.support()) + 1):
        out[k - 1] = eps * instance.value(k, t)
    return out


def vector_field(
    t: float,
    point: DiagPoint,
    n: int,
    problem: Problem,
    eps: float = 0.0,
    instance: ForcingInstance | None = None,
) -> DiagPoint:
    if point.n != n:
        raise ValueError(f"point has {point.n} modes, expected n={n}")
    instance = instance or ForcingInstance()
    forcing = _forcing_vector(n, problem, eps, instance, t)
    dp, dm = galerkin_rhs(point.plus, point.minus, problem.beta.mid, problem.sigma.mid, forcing)
    return DiagPoint(dp, dm)


@dataclass
class Trajectory:
    times: np.ndarray
    plus: np.ndarray  # shape (len(times), n)
    minus: np.ndarray
    blew_up: bool = False

    def to_csv(self, path) -> None:
        n = self.plus.shape[1]
        header = ["t"]
        for k in range(1, n + 1):
            header += [f"u_{k}+", f"u_{k}-"]
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for i, t in enumerate(self.times):
                row = [repr(float(t))]
                for k in range(n):
                    row += [repr(float(self.plus[i, k])), repr(float(self.minus[i, k]))]
                w.writerow(row)


def rk4_integrate(
    point: DiagPoint,
    t0: float,
    t1: float,
    steps: int,
    problem: Problem,
    eps: float = 0.0,
    instance: ForcingInstance | None = None,
    csv_path=None,
) -> Trajectory:
    """Classical RK4. Stops early (``blew_up=True``) once the state is non-finite.

    With ``csv_path`` the trajectory is also written as CSV.

    Stability needs roughly ``lambda_n * h < 2.8``; accuracy wants far less.
    """
    instance = instance or ForcingInstance()
    n = point.n
    beta, sigma = problem.beta.mid, problem.sigma.mid
    h = (t1 - t0) / steps

    def f(t, y):
        forcing = _forcing_vector(n, problem, eps, instance, t)
        dp, dm = galerkin_rhs(y[:n], y[n:], beta, sigma, forcing)
        return np.concatenate([dp, dm])

    y = np.concatenate([point.plus, point.minus])
    times, states = [t0], [y]
    blew_up = False
    t = t0
    for i in range(steps):
        k1 = f(t, y)
        k2 = f(t + h / 2, y + h / 2 * k1)
        k3 = f(t + h / 2, y + h / 2 * k2)
        k4 = f(t + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t = t0 + (i + 1) * h
        if not np.all(np.isfinite(y)):
            blew_up = True
            logger.info("rk4 state became non-finite at t=%g", t)
            break
        times.append(t)
        states.append(y)
    arr = np.array(states)
    traj = Trajectory(np.array(times), arr[:, :n], arr[:, n:], blew_up)
    if csv_path is not None:
        traj.to_csv(csv_path)
    return traj


def _box_arrays(seg: Segment, n: int) -> tuple[np.ndarray, np.ndarray]:
    lo = np.empty(n)
    hi = np.empty(n)
    C = seg.C.mid
    for k in range(1, n + 1):
        if k <= seg.M:
            l, r = seg.boxes[k - 1]
            lo[k - 1], hi[k - 1] = l.mid, r.mid
        else:
            b = C / float(k) ** seg.s
            lo[k - 1], hi[k - 1] = -b, b
    return lo, hi


def sample_segment_points(
    seg: Segment, n: int, rng: np.random.Generator, size: int
) -> tuple[np.ndarray, np.ndarray]:
    """Uniform samples of ``(u^+, u^-)`` from the n-mode projection of ``seg``."""
    lo, hi = _box_arrays(seg, n)
    plus = rng.uniform(lo, hi, size=(size, n))
    minus = rng.uniform(lo, hi, size=(size, n))
    return plus, minus


# (name, which variable, which face, required sign of the derivative)
FACE_FAMILIES = (
    ("li1", "plus", "right", +1),
    ("li2", "plus", "left", -1),
    ("li3", "minus", "right", -1),
    ("li4", "minus", "left", +1),
    ("i1", "plus", "right", +1),
    ("i2", "plus", "left", -1),
    ("i3", "minus", "right", -1),
    ("i4", "minus", "left", +1),
)


@dataclass(frozen=True)
class FaceStats:
    family: str
    samples: int
    min_margin: float
    worst_mode: int


@dataclass(frozen=True)
class BoundaryReport:
    seed: int
    n: int
    faces: tuple[FaceStats, ...]

    @property
    def all_positive(self) -> bool:
        return all(f.min_margin > 0 for f in self.faces)

    @property
    def min_margin(self) -> float:
        return min(f.min_margin for f in self.faces)


def boundary_sample(
    seg: Segment,
    n: int,
    problem: Problem,
    samples: int = 1000,
    instance: ForcingInstance | None = None,
    seed: int = 0,
) -> BoundaryReport:
    """Sample every face family of the n-mode segment and record oriented margins.

    Margin is ``sign * du/dt`` on the face, so a positive value means the
    flow crosses in the required direction. ``li*`` families use the low
    modes ``1..M``; ``i*`` families use the tail modes ``M+1..n``. The
    forcing term of mode ``k`` is ``mid_k + a * rad_k * f_k(t)`` with
    ``a`` uniform in ``[-1, 1]`` and ``t`` uniform over one period.
    """
    if n < seg.M:
        raise ValueError(f"n={n} must be at least M={seg.M}")
    instance = instance or ForcingInstance()
    rng = np.random.default_rng(seed)
    logger.info("boundary_sample seed=%d n=%d samples=%d", seed, n, samples)
    beta, sigma = problem.beta.mid, problem.sigma.mid
    lo, hi = _box_arrays(seg, n)
    support = min(n, problem.forcing.support())
    mids = np.array([problem.forcing.bound(k).mid for k in range(1, support + 1)])
    rads = np.array(
        [0.5 * (problem.forcing.bound(k).hi - problem.forcing.bound(k).lo) for k in range(1, support + 1)]
    )

    faces = []
    for name, var, side, sign in FACE_FAMILIES:
        modes = range(1, seg.M + 1) if name.startswith("li") else range(seg.M + 1, n + 1)
        if len(modes) == 0:
            continue
        worst, worst_k = math.inf, 0
        ks = rng.integers(modes.start, modes.stop, size=samples)
        for k in ks:
            plus = rng.uniform(lo, hi)
            minus = rng.uniform(lo, hi)
            face = hi[k - 1] if side == "right" else lo[k - 1]
            (plus if var == "plus" else minus)[k - 1] = face
            t = rng.uniform(0.0, instance.tau)
            a = rng.uniform(-1.0, 1.0)
            forcing = np.zeros(n)
            for j in range(1, support + 1):
                forcing[j - 1] = mids[j - 1] + a * rads[j - 1] * instance.value(j, t)
            dp, dm = galerkin_rhs(plus, minus, beta, sigma, forcing)
            d = dp[k - 1] if var == "plus" else dm[k - 1]
            margin = sign * d
            if margin < worst:
                worst, worst_k = margin, int(k)
        faces.append(FaceStats(name, samples, worst, worst_k))
    return BoundaryReport(seed=seed, n=n, faces=tuple(faces))
