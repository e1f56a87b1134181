"""Moment-curve lifting test map and the decoding of its zeros.

For a direction v and lift coefficients n = (n_1, ..., n_k) on the unit
sphere, every point x is lifted to (x, t^2, ..., t^k) with t = <x, v> - a_v
the signed distance to a reference hyperplane. The lifted normal is
n^v = (n_1 v, n_2, ..., n_k), so

    <lift(x), n^v> = q(t),   q(t) = n_1 a_v + n_1 t + n_2 t^2 + ... + n_k t^k,

and a lifted hyperplane <n^v, z> = alpha pulls back to the sign pattern of
p(t) = q(t) - alpha, which has at most k real roots. Everything below runs
on the t-line through this identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .measures import (
    DegenerateDirectionError,
    LevelSets,
    Pushforward1D,
    WeightedCloud,
    check_unit,
    median,
    pushforward,
)
from .realroots import real_roots

OFFSET_TOL = 1e-12
VALIDATION_TOL = 1e-6


class ResidualError(ValueError):
    """A decoded configuration does not bisect the measures within tolerance."""


@dataclass(frozen=True)
class TestPoint:
    v: np.ndarray
    n: np.ndarray

    __test__ = False  # not a pytest class

    def __post_init__(self):
        object.__setattr__(self, "v", check_unit(self.v))
        object.__setattr__(self, "n", check_unit(self.n))

    @property
    def k(self) -> int:
        return len(self.n)


@dataclass(frozen=True)
class LiftFrame:
    a_v: float
    q: np.ndarray
    alpha: float

    @property
    def p(self) -> np.ndarray:
        p = self.q.copy()
        p[0] -= self.alpha
        return p


@dataclass
class BisectionResult:
    direction: np.ndarray
    n: np.ndarray
    a_v: float
    alpha: float
    p_coeffs: np.ndarray
    cuts: list[float]
    imbalances: np.ndarray
    residual: float
    frame: np.ndarray | None = None
    extra: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {
            "direction": [float(x) for x in self.direction],
            "a_v": float(self.a_v),
            "alpha": float(self.alpha),
            "p_coeffs": [float(x) for x in self.p_coeffs],
            "cuts": [float(x) for x in self.cuts],
            "imbalances": [float(x) for x in self.imbalances],
            "residual": float(self.residual),
        }
        if self.frame is not None:
            out["frame"] = [[float(x) for x in row] for row in self.frame]
        return out

    @classmethod
    def from_json_dict(cls, obj: dict) -> "BisectionResult":
        frame = obj.get("frame")
        return cls(np.array(obj["direction"], dtype=float), np.array(obj.get("n", []), dtype=float),
                   float(obj["a_v"]), float(obj["alpha"]), np.array(obj["p_coeffs"], dtype=float),
                   [float(c) for c in obj["cuts"]], np.array(obj["imbalances"], dtype=float),
                   float(obj["residual"]), None if frame is None else np.array(frame, dtype=float))


# ------------------------------------------------------------------ lifting


def lift_points(points: np.ndarray, v: np.ndarray, a_v: float, k: int) -> np.ndarray:
    """Graph of the moment-curve lift: rows (x, t^2, ..., t^k)."""
    points = np.atleast_2d(points)
    t = points @ v - a_v
    powers = [t[:, None] ** i for i in range(2, k + 1)]
    return np.hstack([points, *powers])


def lifted_normal(v: np.ndarray, n: np.ndarray) -> np.ndarray:
    return np.concatenate([n[0] * v, n[1:]])


def lift_polynomial(n: np.ndarray, a_v: float) -> np.ndarray:
    """Ascending coefficients of q(t) = n_1 a_v + n_1 t + n_2 t^2 + ... + n_k t^k."""
    return np.concatenate([[n[0] * a_v], n])


def first_factor_action(n: np.ndarray) -> np.ndarray:
    """(n_1, n_2, ..., n_k) -> (-n_1, n_2, -n_3, ..., (-1)^k n_k)."""
    n = np.asarray(n, dtype=float)
    return n * (-1.0) ** np.arange(1, len(n) + 1)


# ------------------------------------------------------------------ offsets


def reference_offset(measures: Sequence[WeightedCloud], v) -> float:
    """Midpoint of the smallest and largest directional median."""
    if not measures:
        raise ValueError("need at least one measure")
    meds = [median(pushforward(c, v)) for c in measures]
    return 0.5 * (min(meds) + max(meds))


def _shifted(pf: Pushforward1D, a: float) -> Pushforward1D:
    return Pushforward1D(pf.centers - a, pf.weights, pf.bandwidth)


def bisecting_offset(pf: Pushforward1D, q, levels: LevelSets | None = None) -> float:
    """alpha with mass{q >= alpha} = total/2 (``pf`` in the same coordinate as q)."""
    levels = LevelSets(q) if levels is None else levels
    half = 0.5 * pf.total_mass
    lo, hi = pf.support_hint()
    knots = [lo, hi, *[c for c in levels.critical if lo < c < hi]]
    vals = [float(levels(x)) for x in knots]
    a_lo, a_hi = min(vals), max(vals)
    g = lambda a: levels.mass(pf, a) - half
    width = max(a_hi - a_lo, 1e-300)
    while g(a_lo) < 0:
        a_lo -= width
        width *= 2
    while g(a_hi) > 0:
        a_hi += width
        width *= 2
    alpha = brentq(g, a_lo, a_hi, xtol=1e-300, rtol=1e-15, maxiter=400)
    if abs(g(alpha)) > OFFSET_TOL * pf.total_mass:
        for _ in range(400):
            mid = 0.5 * (a_lo + a_hi)
            if mid in (a_lo, a_hi):
                break
            if g(mid) > 0:
                a_lo = mid
            else:
                a_hi = mid
        alpha = 0.5 * (a_lo + a_hi)
    return float(alpha)


# --------------------------------------------------------------- test map


def _validate_measures(measures: Sequence[WeightedCloud], tp: TestPoint):
    if not measures:
        raise ValueError("the test map needs at least one measure")
    for c in measures:
        if c.dim != len(tp.v):
            raise ValueError("direction and measures have different dimensions")


def _frame_parts(measures, tp):
    pfs = [pushforward(c, tp.v) for c in measures]
    meds = [median(pf) for pf in pfs]
    a_v = 0.5 * (min(meds) + max(meds))
    q = lift_polynomial(tp.n, a_v)
    tpfs = [_shifted(pf, a_v) for pf in pfs]
    levels = LevelSets(q)
    alpha = bisecting_offset(tpfs[-1], q, levels)
    return LiftFrame(a_v, q, alpha), tpfs, levels


def build_frame(measures: Sequence[WeightedCloud], tp: TestPoint) -> tuple[LiftFrame, list[Pushforward1D]]:
    """Reference offset, lift polynomial and bisecting level; pushforwards in t-coordinates."""
    frame, tpfs, _ = _frame_parts(measures, tp)
    return frame, tpfs


def eval_test_map(measures: Sequence[WeightedCloud], tp: TestPoint) -> np.ndarray:
    """(lambda_j(N_+) - lambda_j(N_-)) for j = 1..n-1."""
    _validate_measures(measures, tp)
    frame, tpfs, levels = _frame_parts(measures, tp)
    out = np.empty(len(measures) - 1)
    for j, pf in enumerate(tpfs[:-1]):
        plus = levels.mass(pf, frame.alpha)
        out[j] = 2.0 * plus - pf.total_mass
    return out


def orientation_at_minus_infinity(p: np.ndarray) -> int:
    c = np.trim_zeros(np.asarray(p, dtype=float), "b")
    if len(c) == 0:
        raise DegenerateDirectionError("zero polynomial")
    return int(np.sign(c[-1]) * (-1) ** (len(c) - 1))


def chessboard_imbalance(pf: Pushforward1D, cuts: Sequence[float], first_sign: int) -> float:
    """Signed mass (+ color minus - color) of the coloring alternating at ``cuts``."""
    edges = [-np.inf, *sorted(cuts), np.inf]
    acc, sign = 0.0, first_sign
    for a, b in zip(edges, edges[1:]):
        acc += sign * pf.interval_mass(a, b)
        sign = -sign
    return acc


def decode_zero(measures: Sequence[WeightedCloud], tp: TestPoint,
                frame: LiftFrame | None = None, tol: float | None = None) -> BisectionResult:
    """Cut positions (absolute offsets along v) and per-measure imbalances of a test point."""
    if frame is None:
        _validate_measures(measures, tp)
        frame, _ = build_frame(measures, tp)
    p = frame.p
    cuts = [frame.a_v + r for r in real_roots(p, odd_only=True)]
    first = orientation_at_minus_infinity(p)
    imb = np.array([chessboard_imbalance(pushforward(c, tp.v), cuts, first) for c in measures])
    masses = np.array([c.total_mass for c in measures])
    residual = float(np.max(np.abs(imb) / masses))
    res = BisectionResult(tp.v.copy(), tp.n.copy(), frame.a_v, frame.alpha, p, cuts, imb, residual)
    if tol is not None and residual > tol:
        raise ResidualError(f"residual {residual:.3e} above tolerance {tol:.1e}")
    return res
