"""Invariant battery behind ``chessboard-bisect selftest``."""

from __future__ import annotations

import contextlib
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import certifier, grasscoh
from .f2poly import PolyRing
from .measures import WeightedCloud
from .parity import stirling2, stirling_parity_fast
from .testmap import TestPoint, eval_test_map, first_factor_action


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


@contextlib.contextmanager
def inject_fault(kind: str):
    """Corrupt part of the pipeline for the duration of the block (fault-injection hook)."""
    if kind != "relation":
        raise ValueError(f"unknown fault {kind!r}")
    grasscoh._FAULTS.add(kind)
    certifier._presentation.cache_clear()
    try:
        yield
    finally:
        grasscoh._FAULTS.discard(kind)
        certifier._presentation.cache_clear()


def random_poly(ring: PolyRing, rng: np.random.Generator, max_deg: int = 4, terms: int = 4):
    monos = [m for dg in range(max_deg + 1) for m in ring.monomials_of_degree(dg)]
    pick = rng.choice(len(monos), size=min(terms, len(monos)), replace=False)
    return ring.from_terms(monos[i] for i in pick)


def check_ring_axioms(quick: bool) -> str | None:
    rng = np.random.default_rng(11)
    ring = grasscoh.grassmannian_ring(2, 1, with_t=True)
    for _ in range(10 if quick else 40):
        p, q, r = (random_poly(ring, rng) for _ in range(3))
        if (p * q) * r != p * (q * r) or p * q != q * p or p * (q + r) != p * q + p * r:
            return f"ring axiom fails on {p}, {q}, {r}"
        if p + p or (p + q) ** 2 != p ** 2 + q ** 2:
            return f"characteristic 2 fails on {p}, {q}"
    return None


def check_poincare(quick: bool) -> str | None:
    for d in range(1, 4 if quick else 5):
        for m in range(0, 3 if quick else 4):
            got = grasscoh.build_presentation(d, m).dimensions()
            want = grasscoh.box_partition_counts(d, m)
            if got != want:
                return f"G_{d}(R^{d + m}): dimensions {got} != partition counts {want}"
    return None


def check_product_identity(quick: bool) -> str | None:
    for d in range(1, 5):
        for m in range(0, 4):
            if not grasscoh.check_product_identity(d, m):
                return f"product identity fails for d={d}, m={m}"
    return None


def check_top_dual(quick: bool) -> str | None:
    for d in range(1, 5):
        for m in range(1, 4):
            if not grasscoh.nonzero_top_dual_class(d, m):
                return f"top dual class vanishes for d={d}, m={m}"
    return None


def check_certificate_grid(quick: bool) -> str | None:
    for c in certifier.parity_table(4, 6, 3):
        p = c.problem
        if not c.consistent:
            return f"membership disagrees with Stirling parity at {(p.d, p.k, p.m)}"
        if any(bit != c.member for bit in c.step_chain[:3]) or c.step_chain[3]:
            return f"step chain {c.step_chain} inconsistent at {(p.d, p.k, p.m)}"
    return None


def check_parity_bridge(quick: bool) -> str | None:
    for n in range(1, 25):
        for k in range(1, n + 1):
            if stirling_parity_fast(n, k) != stirling2(n, k) % 2:
                return f"parity bridge fails at S({n},{k})"
    return None


def check_equivariance(quick: bool) -> str | None:
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(10 if quick else 100):
        d = int(rng.integers(1, 4))
        k = int(rng.integers(1, 5))
        nm = int(rng.integers(2, 7))
        ms = [WeightedCloud(rng.normal(size=(8, d)) + rng.normal(size=d), rng.uniform(0.5, 1.5, 8),
                            float(rng.uniform(0.2, 0.6))) for _ in range(nm)]
        v = rng.normal(size=d)
        v /= np.linalg.norm(v)
        n = rng.normal(size=k)
        n /= np.linalg.norm(n)
        f = eval_test_map(ms, TestPoint(v, n))
        worst = max(worst,
                    np.max(np.abs(eval_test_map(ms, TestPoint(v, -n)) + f)),
                    np.max(np.abs(eval_test_map(ms, TestPoint(-v, first_factor_action(n))) - f)))
    return None if worst <= 1e-9 else f"equivariance defect {worst:.2e}"


CHECKS: list[tuple[str, Callable[[bool], str | None]]] = [
    ("ring_axioms", check_ring_axioms),
    ("poincare_series", check_poincare),
    ("product_identity", check_product_identity),
    ("top_dual_class", check_top_dual),
    ("certificate_grid", check_certificate_grid),
    ("parity_bridge", check_parity_bridge),
    ("equivariance", check_equivariance),
]


def run(quick: bool = False, fault: str | None = None) -> list[CheckResult]:
    ctx = inject_fault(fault) if fault else contextlib.nullcontext()
    out = []
    with ctx:
        for name, fn in CHECKS:
            t0 = time.perf_counter()
            try:
                detail = fn(quick)
            except Exception as exc:  # a crash is a failed invariant too
                detail = f"{type(exc).__name__}: {exc}"
            out.append(CheckResult(name, detail is None, detail or "", time.perf_counter() - t0))
    return out
