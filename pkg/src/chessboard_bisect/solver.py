"""Multi-start Newton search for zeros of the test map on S^{d-1} x S^{k-1}.

The search only exhibits witnesses; exhausting the restarts says nothing
about nonexistence.
"""

from __future__ import annotations

import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import ndtr, ndtri
from scipy.stats import qmc

from .measures import DegenerateDirectionError, WeightedCloud
from .testmap import BisectionResult, TestPoint, decode_zero, eval_test_map

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolveConfig:
    restarts: int = 64
    max_iterations: int = 60
    residual_tol: float = 1e-6
    seed: int = 0
    jacobian_step: float = 1e-6
    threads: int = 1

    def __post_init__(self):
        if not self.residual_tol > 0:
            raise ValueError("residual_tol must be positive")
        if self.restarts < 1:
            raise ValueError("need at least one restart")
        if self.threads < 1:
            raise ValueError("threads must be positive")


@dataclass
class Attempt:
    index: int
    iterations: int
    residual: float
    status: str

    def to_dict(self) -> dict:
        return {"index": self.index, "iterations": self.iterations,
                "residual": float(self.residual), "status": self.status}


@dataclass
class SolveReport:
    ok: bool
    result: BisectionResult | None
    best_residual: float
    attempts: list[Attempt] = field(default_factory=list)
    certificate: dict | None = None

    def to_json_dict(self) -> dict:
        out = self.result.to_json_dict() if (self.ok and self.result is not None) else {}
        if not self.ok:
            out["failure"] = {
                "best_residual": float(self.best_residual),
                "attempts": [a.to_dict() for a in self.attempts],
            }
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    residual: float
    imbalances: np.ndarray
    polynomial_consistent: bool


# ---------------------------------------------------------------- geometry


def tangent_basis(x: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the tangent space of the unit sphere at x."""
    dim = len(x)
    if dim == 1:
        return np.zeros((1, 0))
    # Householder reflection mapping x to e_1; its other columns span x^perp
    e = np.zeros(dim)
    e[0] = 1.0
    u = x - e if x[0] < 0 else x + e
    u = u / np.linalg.norm(u)
    H = np.eye(dim) - 2.0 * np.outer(u, u)
    return H[:, 1:]


def retract(x: np.ndarray, basis: np.ndarray, xi: np.ndarray) -> np.ndarray:
    y = x + basis @ xi
    return y / np.linalg.norm(y)


def sphere_starts(dims: Sequence[int], count: int, seed: int) -> list[list[np.ndarray]]:
    """Low-discrepancy points on a product of spheres (scrambled Halton + Gaussian map)."""
    total = sum(dims)
    sampler = qmc.Halton(d=total, scramble=True, seed=np.random.default_rng(seed))
    u = sampler.random(count)
    z = ndtri(np.clip(u, 1e-12, 1 - 1e-12))
    out = []
    for row in z:
        blocks, pos = [], 0
        for dim in dims:
            b = row[pos:pos + dim]
            pos += dim
            nb = np.linalg.norm(b)
            blocks.append(b / nb if nb > 0 else np.eye(dim)[0])
        out.append(blocks)
    return out


# ------------------------------------------------------------ Newton engine


class Sphere:
    """Unit sphere block: tangent charts through a Householder basis."""

    def chart(self, x: np.ndarray):
        B = tangent_basis(x)
        return B.shape[1], lambda xi: retract(x, B, xi) if B.shape[1] else x


def newton_on_product(F: Callable[[list], np.ndarray], start: list, blocks: Sequence,
                      cfg: SolveConfig, target: float) -> tuple[list, float, int, str]:
    """Damped Gauss-Newton for F = 0 over a product of manifolds.

    Each block supplies ``chart(x) -> (dim, phi)`` with phi a retraction
    from tangent coordinates. Jacobians are central differences in chart
    coordinates; steps are min-norm least-squares solutions, so the same
    loop handles square and underdetermined systems. Returns (point,
    max-norm residual, iterations, status).
    """
    x = list(start)

    def safe(pt):
        try:
            return F(pt)
        except DegenerateDirectionError:
            return None

    fx = safe(x)
    if fx is None:
        return x, np.inf, 0, "degenerate"
    res = float(np.max(np.abs(fx))) if len(fx) else 0.0
    h = cfg.jacobian_step
    for it in range(1, cfg.max_iterations + 1):
        if res <= target:
            return x, res, it - 1, "converged"
        charts = [blk.chart(b) for blk, b in zip(blocks, x)]
        cols = []
        for bi, (dim, phi) in enumerate(charts):
            for c in range(dim):
                e = np.zeros(dim)
                e[c] = h
                xp, xm = list(x), list(x)
                xp[bi] = phi(e)
                xm[bi] = phi(-e)
                fp, fm = safe(xp), safe(xm)
                if fp is None or fm is None:
                    return x, res, it, "degenerate"
                cols.append((fp - fm) / (2 * h))
        if not cols:
            return x, res, it, "stalled"
        J = np.stack(cols, axis=1)
        step = np.linalg.lstsq(J, -fx, rcond=None)[0]
        norm = np.linalg.norm(step)
        if norm > 0.5:
            step *= 0.5 / norm
        lam, accepted = 1.0, False
        base_cost = float(fx @ fx)
        while lam > 1e-4:
            trial, pos = [], 0
            for (dim, phi), b in zip(charts, x):
                trial.append(phi(lam * step[pos:pos + dim]) if dim else b)
                pos += dim
            ft = safe(trial)
            if ft is not None and float(ft @ ft) < (1 - 1e-4 * lam) * base_cost:
                x, fx, accepted = trial, ft, True
                break
            lam *= 0.5
        if not accepted:
            return x, res, it, "stalled"
        res = float(np.max(np.abs(fx)))
    status = "converged" if res <= target else "max_iterations"
    return x, res, cfg.max_iterations, status


def newton_on_spheres(F, start, cfg: SolveConfig, target: float):
    return newton_on_product(F, start, [Sphere() for _ in start], cfg, target)


# ----------------------------------------------------------------- solving


def _run_restarts(run_one: Callable[[int], tuple], cfg: SolveConfig):
    """Evaluate restarts in index order (in batches when threaded); stop at the first success."""
    results = []
    batch = cfg.threads
    idx = 0
    pool = ThreadPoolExecutor(max_workers=cfg.threads) if cfg.threads > 1 else None
    try:
        while idx < cfg.restarts:
            ids = list(range(idx, min(idx + batch, cfg.restarts)))
            outs = list(pool.map(run_one, ids)) if pool else [run_one(i) for i in ids]
            for out in outs:
                results.append(out)
                if out[0]:
                    return results
            idx += batch
    finally:
        if pool:
            pool.shutdown()
    return results


def solve(measures: Sequence[WeightedCloud], k: int, cfg: SolveConfig | None = None,
          certify_verdict: bool = True) -> SolveReport:
    """Search for a chessboard bisection of ``measures`` in R^d by at most k parallel hyperplanes."""
    cfg = SolveConfig() if cfg is None else cfg
    measures = list(measures)
    if not measures:
        raise ValueError("need at least one measure")
    d = measures[0].dim
    if any(c.dim != d for c in measures):
        raise ValueError("measures live in different dimensions")
    if k < 1:
        raise ValueError("k must be positive")
    if len(measures) != d + k - 1:
        warnings.warn(f"{len(measures)} measures for d={d}, k={k}; the square case is n = d+k-1 = {d + k - 1}")
    masses = np.array([c.total_mass for c in measures])

    def F(pt):
        return eval_test_map(measures, TestPoint(pt[0], pt[1])) / masses[:-1]

    starts = sphere_starts([d, k], cfg.restarts, cfg.seed)
    target = cfg.residual_tol * 1e-3

    def run_one(i):
        pt, res, its, status = newton_on_spheres(F, starts[i], cfg, target)
        try:
            result = decode_zero(measures, TestPoint(pt[0], pt[1]))
        except DegenerateDirectionError:
            return False, None, Attempt(i, its, np.inf, "degenerate")
        rep = validate(measures, result, cfg.residual_tol)
        log.debug("restart %d: %s after %d iterations, residual %.3e", i, status, its, rep.residual)
        return rep.passed, result, Attempt(i, its, rep.residual, status if rep.passed or status != "converged" else "rejected")

    outs = _run_restarts(run_one, cfg)
    cert = None
    if certify_verdict:
        from .certifier import certify
        cert = certify(d, k, 0).to_dict()
    attempts = [o[2] for o in outs]
    best = min(outs, key=lambda o: o[2].residual)
    if outs[-1][0]:
        return SolveReport(True, outs[-1][1], outs[-1][2].residual, attempts, cert)
    return SolveReport(False, best[1], best[2].residual, attempts, cert)


# --------------------------------------------------------------- validation


def _color_masses(centers: np.ndarray, weights: np.ndarray, h: float, edges: np.ndarray) -> np.ndarray:
    cdf = ndtr((edges[None, :] - centers[:, None]) / h)
    return weights @ np.diff(cdf, axis=1)


def validate(measures: Sequence[WeightedCloud], result: BisectionResult,
             tol: float = 1e-6) -> ValidationReport:
    """Re-integrate each measure over the chessboard coloring of ``result`` from scratch."""
    v = np.asarray(result.direction, dtype=float)
    cuts = np.sort(np.asarray(result.cuts, dtype=float))
    p = np.trim_zeros(np.asarray(result.p_coeffs, dtype=float), "b")
    first = int(np.sign(p[-1]) * (-1) ** (len(p) - 1)) if len(p) else 1
    edges = np.concatenate([[-np.inf], cuts, [np.inf]])
    signs = first * (-1.0) ** np.arange(len(cuts) + 1)
    imb = []
    for c in measures:
        per = _color_masses(c.points @ v, c.weights, c.bandwidth, edges)
        imb.append(float(signs @ per))
    imb = np.array(imb)
    masses = np.array([c.total_mass for c in measures])
    residual = float(np.max(np.abs(imb) / masses))
    consistent = _cuts_match_polynomial(p, cuts - result.a_v, first)
    return ValidationReport(bool(residual <= tol and consistent), residual, imb, consistent)


def _cuts_match_polynomial(p: np.ndarray, roots: np.ndarray, first: int) -> bool:
    """The sign of p alternates across the cut set and nowhere else (checked by eigenvalue roots)."""
    if len(p) <= 1:
        return len(roots) == 0
    eig = np.roots(p[::-1])
    scale = 1.0 + np.abs(eig).max(initial=0.0)
    real = np.sort(eig[np.abs(eig.imag) <= 1e-6 * scale].real)
    if len(roots) > len(real):
        return False
    sample = np.concatenate([[roots[0] - 1 - abs(roots[0])] if len(roots) else [0.0],
                             0.5 * (roots[1:] + roots[:-1]),
                             [roots[-1] + 1 + abs(roots[-1])] if len(roots) else []])
    vals = np.polynomial.polynomial.polyval(sample, p)
    expected = first * (-1.0) ** np.arange(len(sample))
    return bool(np.all(np.sign(vals) == expected))
