"""Gaussian-smoothed weighted point clouds and their one-dimensional pushforwards.

A :class:`WeightedCloud` is the measure sum_i w_i N(x_i, h^2 I). Its
pushforward along a unit vector v is the 1-D mixture sum_i w_i N(<x_i, v>, h^2),
whose CDF is strictly increasing, so medians and bisecting offsets are unique.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import ndtr

from .realroots import real_roots

UNIT_TOL = 1e-12
MEDIAN_TOL = 1e-12


class DegenerateDirectionError(ValueError):
    """The level polynomial is constant, so its superlevel set is ambiguous."""


@dataclass(frozen=True, eq=False)
class WeightedCloud:
    points: np.ndarray
    weights: np.ndarray
    bandwidth: float

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        w = np.array(self.weights, dtype=float).reshape(-1)
        if pts.ndim != 2 or len(pts) != len(w) or len(w) == 0:
            raise ValueError("points must be (N, D) with one weight per point")
        if np.any(w <= 0) or not np.all(np.isfinite(w)):
            raise ValueError("weights must be positive")
        if not self.bandwidth > 0:
            raise ValueError("bandwidth must be positive")
        pts.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "bandwidth", float(self.bandwidth))

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def reflected(self) -> "WeightedCloud":
        return WeightedCloud(-self.points, self.weights, self.bandwidth)

    def to_dict(self) -> dict:
        return {"points": self.points.tolist(), "weights": self.weights.tolist(),
                "bandwidth": self.bandwidth}

    @classmethod
    def from_dict(cls, obj: dict) -> "WeightedCloud":
        return cls(np.array(obj["points"], dtype=float), np.array(obj["weights"], dtype=float),
                   float(obj["bandwidth"]))


@dataclass(frozen=True, eq=False)
class Pushforward1D:
    centers: np.ndarray
    weights: np.ndarray
    bandwidth: float

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def cdf(self, x: float) -> float:
        return float(self.weights @ ndtr((x - self.centers) / self.bandwidth))

    def interval_mass(self, a: float, b: float) -> float:
        """Mass of [a, b]; either end may be infinite."""
        if not b > a:
            return 0.0
        za = (a - self.centers) / self.bandwidth
        zb = (b - self.centers) / self.bandwidth
        # take differences on the tail side to keep relative accuracy
        right = za > 0
        diff = np.where(right, ndtr(-za) - ndtr(-zb), ndtr(zb) - ndtr(za))
        return float(self.weights @ diff)

    def support_hint(self, spread: float = 10.0) -> tuple[float, float]:
        return (float(self.centers.min() - spread * self.bandwidth),
                float(self.centers.max() + spread * self.bandwidth))

    def mirrored(self) -> "Pushforward1D":
        return Pushforward1D(-self.centers, self.weights, self.bandwidth)


def check_unit(v: np.ndarray, tol: float = UNIT_TOL) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(-1)
    if abs(np.linalg.norm(v) - 1.0) > tol:
        raise ValueError(f"expected a unit vector, got norm {np.linalg.norm(v)!r}")
    return v


def pushforward(cloud: WeightedCloud, v: Sequence[float]) -> Pushforward1D:
    v = check_unit(v)
    if v.shape[0] != cloud.dim:
        raise ValueError(f"direction has dimension {v.shape[0]}, cloud has {cloud.dim}")
    return Pushforward1D(cloud.points @ v, cloud.weights, cloud.bandwidth)


def median(pf: Pushforward1D) -> float:
    """Unique a with CDF(a) = total/2."""
    half = 0.5 * pf.total_mass
    lo, hi = pf.support_hint()
    g = lambda x: pf.cdf(x) - half
    while g(lo) > 0:
        lo -= hi - lo
    while g(hi) < 0:
        hi += hi - lo
    x = brentq(g, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=400)
    # brentq stops on x; tighten on the CDF value if the slope is tiny
    if abs(g(x)) > MEDIAN_TOL * pf.total_mass:
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if g(mid) > 0:
                hi = mid
            else:
                lo = mid
        x = 0.5 * (lo + hi)
    return float(x)


# ---------------------------------------------------------------- level sets


def _as_coeffs(q) -> np.ndarray:
    c = np.asarray(getattr(q, "coef", q), dtype=float).reshape(-1)
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if len(nz) else c[:1] * 0


def _sign_segments(p: np.ndarray, roots: list[float]) -> list[tuple[float, float, bool]]:
    """Split the line at ``roots`` and mark the segments where p >= 0."""
    edges = [-np.inf, *roots, np.inf]
    segs = []
    for a, b in zip(edges, edges[1:]):
        if np.isinf(a) and np.isinf(b):
            x = 0.0
        elif np.isinf(a):
            x = b - 1.0 - abs(b)
        elif np.isinf(b):
            x = a + 1.0 + abs(a)
        else:
            x = 0.5 * (a + b)
        segs.append((a, b, np.polynomial.polynomial.polyval(x, p) > 0))
    return segs


def superlevel_intervals(q, alpha: float) -> list[tuple[float, float]]:
    """Intervals whose union is {t : q(t) >= alpha}, up to finitely many points."""
    p = _as_coeffs(q).copy()
    p[0] -= alpha
    if len(p) <= 1:
        if p[0] == 0:
            raise DegenerateDirectionError("q is constant and equal to alpha")
        return [(-np.inf, np.inf)] if p[0] > 0 else []
    roots = real_roots(p)
    return [(a, b) for a, b, pos in _sign_segments(p, roots) if pos]


def superlevel_mass(pf: Pushforward1D, q, alpha: float) -> float:
    """Mass of {t : q(t) >= alpha} under ``pf``, via Sturm isolation of q - alpha."""
    return sum(pf.interval_mass(a, b) for a, b in superlevel_intervals(q, alpha))


class LevelSets:
    """Superlevel sets of one polynomial for many levels.

    The real critical points of q (Sturm-isolated once) split the line into
    monotone pieces; each piece holds at most one root of q - alpha, found
    by a bracketed solve.
    """

    def __init__(self, q):
        self.coeffs = _as_coeffs(q)
        if len(self.coeffs) <= 1:
            raise DegenerateDirectionError("q is constant")
        dq = np.polynomial.polynomial.polyder(self.coeffs)
        self.critical = real_roots(dq) if len(dq) > 1 else []
        lead = abs(self.coeffs[-1])
        self._bound_base = np.abs(self.coeffs[1:-1]).max(initial=0.0) / lead

    def __call__(self, t):
        return np.polynomial.polynomial.polyval(t, self.coeffs)

    def roots(self, alpha: float) -> list[float]:
        c = self.coeffs
        bound = 1.0 + max(self._bound_base, abs(c[0] - alpha) / abs(c[-1]))
        knots = [-bound, *[x for x in self.critical if -bound < x < bound], bound]
        vals = [self(x) - alpha for x in knots]
        out = []
        for (a, fa), (b, fb) in zip(zip(knots, vals), zip(knots[1:], vals[1:])):
            if fa == 0:
                out.append(a)
            elif fa * fb < 0:
                out.append(brentq(lambda t: self(t) - alpha, a, b,
                                  xtol=1e-15, rtol=1e-15, maxiter=200))
        if vals[-1] == 0:
            out.append(knots[-1])
        return sorted(set(out))

    def intervals(self, alpha: float) -> list[tuple[float, float]]:
        p = self.coeffs.copy()
        p[0] -= alpha
        return [(a, b) for a, b, pos in _sign_segments(p, self.roots(alpha)) if pos]

    def mass(self, pf: Pushforward1D, alpha: float) -> float:
        return sum(pf.interval_mass(a, b) for a, b in self.intervals(alpha))


# ------------------------------------------------------------ exact 1-D model


@dataclass(frozen=True)
class PiecewiseUniform1D:
    """Exact piecewise-constant density on disjoint rational intervals."""

    intervals: tuple[tuple[Fraction, Fraction], ...]
    densities: tuple[Fraction, ...]

    @classmethod
    def uniform(cls, intervals, density=1) -> "PiecewiseUniform1D":
        iv = tuple(sorted((Fraction(a), Fraction(b)) for a, b in intervals))
        return cls(iv, tuple(Fraction(density) for _ in iv))

    @property
    def total_mass(self) -> Fraction:
        return sum(((b - a) * rho for (a, b), rho in zip(self.intervals, self.densities)), Fraction(0))

    def interval_mass(self, lo, hi) -> Fraction:
        acc = Fraction(0)
        for (a, b), rho in zip(self.intervals, self.densities):
            left = a if lo is None else max(a, Fraction(lo))
            right = b if hi is None else min(b, Fraction(hi))
            if right > left:
                acc += (right - left) * rho
        return acc

    def chessboard_imbalance(self, cuts: Sequence, first_sign: int = 1) -> Fraction:
        """Signed (positive minus negative) mass of the coloring alternating at ``cuts``."""
        edges = [None, *sorted(Fraction(c) for c in cuts), None]
        acc, sign = Fraction(0), first_sign
        for lo, hi in zip(edges, edges[1:]):
            acc += sign * self.interval_mass(lo, hi)
            sign = -sign
        return acc


def smoothed_uniform_cloud(intervals, bandwidth: float, spacing: float | None = None) -> WeightedCloud:
    """Point cloud approximating the uniform density on a union of intervals (unit density)."""
    spacing = bandwidth / 4 if spacing is None else spacing
    pts, wts = [], []
    for a, b in intervals:
        n = max(1, int(round((b - a) / spacing)))
        h = (b - a) / n
        pts.append(a + h * (np.arange(n) + 0.5))
        wts.append(np.full(n, h))
    return WeightedCloud(np.concatenate(pts)[:, None], np.concatenate(wts), bandwidth)


# ------------------------------------------------------------------ JSON I/O


def instance_to_dict(clouds: Sequence[WeightedCloud]) -> dict:
    dims = {c.dim for c in clouds}
    if len(dims) != 1:
        raise ValueError("all measures must share the ambient dimension")
    return {"ambient_dim": dims.pop(), "measures": [c.to_dict() for c in clouds]}


def instance_from_dict(obj: dict) -> list[WeightedCloud]:
    dim = int(obj["ambient_dim"])
    clouds = [WeightedCloud.from_dict(m) for m in obj["measures"]]
    for c in clouds:
        if c.dim != dim:
            raise ValueError(f"measure of dimension {c.dim} in a {dim}-dimensional instance")
    return clouds


def load_instance(path) -> list[WeightedCloud]:
    with open(path) as fh:
        return instance_from_dict(json.load(fh))


def save_instance(path, clouds: Sequence[WeightedCloud]):
    with open(path, "w") as fh:
        json.dump(instance_to_dict(clouds), fh)
