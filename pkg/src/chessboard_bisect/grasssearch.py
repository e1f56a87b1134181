"""Search over d-planes V of R^{d+m} for chessboard bisections of mass assignments.

The built-in mass assignment sends V to the orthogonal projection of a fixed
ambient cloud onto V, smoothed inside V with the cloud's bandwidth. Any
object with a ``restrict(frame) -> WeightedCloud`` method can stand in.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .measures import DegenerateDirectionError, WeightedCloud
from .solver import (
    Attempt,
    SolveConfig,
    Sphere,
    ValidationReport,
    _run_restarts,
    newton_on_product,
    solve,
    validate,
)
from .testmap import BisectionResult, TestPoint, decode_zero, eval_test_map

FRAME_TOL = 1e-10


class MassAssignment(Protocol):
    def restrict(self, frame: np.ndarray) -> WeightedCloud: ...


def check_frame(frame: np.ndarray, tol: float = FRAME_TOL) -> np.ndarray:
    frame = np.atleast_2d(np.asarray(frame, dtype=float))
    gram = frame @ frame.T
    if np.max(np.abs(gram - np.eye(len(frame)))) > tol:
        raise ValueError("frame rows are not orthonormal")
    return frame


@dataclass(frozen=True, eq=False)
class ProjectionAssignment:
    ambient_cloud: WeightedCloud

    @property
    def ambient_dim(self) -> int:
        return self.ambient_cloud.dim

    def restrict(self, frame: np.ndarray) -> WeightedCloud:
        """Coordinates of the projected points in the frame basis."""
        frame = check_frame(frame)
        c = self.ambient_cloud
        return WeightedCloud(c.points @ frame.T, c.weights, c.bandwidth)


def restrict(assignment: MassAssignment, frame: np.ndarray) -> WeightedCloud:
    return assignment.restrict(frame)


def polar(a: np.ndarray) -> np.ndarray:
    """Nearest matrix with orthonormal rows."""
    u, _, vt = np.linalg.svd(a, full_matrices=False)
    return u @ vt


def complement(frame: np.ndarray) -> np.ndarray:
    """Rows spanning the orthogonal complement of the row space of ``frame``."""
    d, D = frame.shape
    _, _, vt = np.linalg.svd(frame, full_matrices=True)
    return vt[d:]


class Grassmannian:
    """Frames of d-planes; charts X -> polar(F + X C) with C a complement basis."""

    def chart(self, frame: np.ndarray):
        C = complement(frame)
        d, m = frame.shape[0], C.shape[0]
        return d * m, lambda xi: polar(frame + xi.reshape(d, m) @ C) if m else frame


@dataclass
class AssignReport:
    ok: bool
    frame: np.ndarray | None
    result: BisectionResult | None
    best_residual: float
    attempts: list[Attempt] = field(default_factory=list)
    certificate: dict | None = None

    def to_json_dict(self) -> dict:
        out = {}
        if self.ok and self.result is not None:
            out = self.result.to_json_dict()
            out["frame"] = [[float(x) for x in row] for row in self.frame]
        else:
            out["failure"] = {
                "best_residual": float(self.best_residual),
                "attempts": [a.to_dict() for a in self.attempts],
            }
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def frame_starts(d: int, D: int, k: int, count: int, seed: int) -> list[list[np.ndarray]]:
    """Low-discrepancy starts on G_d(R^D) x S^{d-1} x S^{k-1}."""
    sampler = qmc.Halton(d=d * D + d + k, scramble=True, seed=np.random.default_rng(seed))
    z = ndtri(np.clip(sampler.random(count), 1e-12, 1 - 1e-12))
    out = []
    for row in z:
        g = row[: d * D].reshape(d, D)
        q, r = np.linalg.qr(g.T)
        frame = (q * np.sign(np.diag(r))).T
        v = row[d * D: d * D + d]
        n = row[d * D + d:]
        out.append([frame, v / np.linalg.norm(v), n / np.linalg.norm(n)])
    return out


def validate_assignment(assignments: Sequence[MassAssignment], frame: np.ndarray,
                        result: BisectionResult, tol: float = 1e-6) -> ValidationReport:
    return validate([a.restrict(frame) for a in assignments], result, tol)


def assign_search(assignments: Sequence[MassAssignment], d: int, k: int,
                  cfg: SolveConfig | None = None,
                  certify_verdict: bool = True) -> AssignReport:
    """Find a d-plane V and at most k parallel hyperplanes in V bisecting every restricted measure."""
    cfg = SolveConfig() if cfg is None else cfg
    assignments = list(assignments)
    dims = {a.ambient_dim for a in assignments}
    if len(dims) != 1:
        raise ValueError("assignments disagree on the ambient dimension")
    D = dims.pop()
    m = D - d
    if m < 0:
        raise ValueError(f"d = {d} exceeds the ambient dimension {D}")
    n_meas = len(assignments)
    if n_meas != d + m + k - 1:
        warnings.warn(f"{n_meas} assignments; the certified count is d+m+k-1 = {d + m + k - 1}")
    cert = None
    if certify_verdict:
        from .certifier import certify
        cert = certify(d, k, m).to_dict()

    if m == 0:
        frame = np.eye(d)
        rep = solve([a.restrict(frame) for a in assignments], k, cfg, certify_verdict=False)
        if rep.result is not None:
            rep.result.frame = frame
        return AssignReport(rep.ok, frame, rep.result, rep.best_residual, rep.attempts, cert)

    masses = np.array([a.restrict(np.eye(D)[:d]).total_mass for a in assignments])

    def F(pt):
        frame, v, n = pt
        clouds = [a.restrict(frame) for a in assignments]
        return eval_test_map(clouds, TestPoint(v, n)) / masses[:-1]

    blocks = [Grassmannian(), Sphere(), Sphere()]
    starts = frame_starts(d, D, k, cfg.restarts, cfg.seed)
    target = cfg.residual_tol * 1e-3

    def run_one(i):
        pt, res, its, status = newton_on_product(F, starts[i], blocks, cfg, target)
        frame, v, n = pt
        clouds = [a.restrict(frame) for a in assignments]
        try:
            result = decode_zero(clouds, TestPoint(v, n))
        except DegenerateDirectionError:
            return False, None, Attempt(i, its, np.inf, "degenerate")
        result.frame = frame
        rep = validate(clouds, result, cfg.residual_tol)
        return rep.passed, result, Attempt(i, its, rep.residual, status if rep.passed or status != "converged" else "rejected")

    outs = _run_restarts(run_one, cfg)
    attempts = [o[2] for o in outs]
    if outs[-1][0]:
        res = outs[-1][1]
        return AssignReport(True, res.frame, res, attempts[-1].residual, attempts, cert)
    best = min(outs, key=lambda o: o[2].residual)
    frame = best[1].frame if best[1] is not None else None
    return AssignReport(False, frame, best[1], best[2].residual, attempts, cert)
