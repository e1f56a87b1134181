"""Real-root isolation for univariate polynomials with Sturm sequences.

Coefficients are taken in ascending order (c0 + c1 t + ... + ck t^k). Float
inputs are converted to exact rationals, so the Sturm chain and the sign
variation counts are exact; only the final polish runs in floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

Poly = list  # ascending Fraction coefficients, trailing zeros stripped

POLISH_TOL = 1e-13


def _trim(p: Poly) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def to_exact(coeffs: Sequence[float]) -> Poly:
    return _trim([Fraction(c) for c in coeffs])


def _eval(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _deriv(p: Poly) -> Poly:
    return _trim([i * c for i, c in enumerate(p)][1:])


def _rem(a: Poly, b: Poly) -> Poly:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a = _trim(a)
    return a


def _gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _rem(a, b)
    return [c / a[-1] for c in a]


def _quo(a: Poly, b: Poly) -> Poly:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [Fraction(0)] * max(len(a) - db, 1)
    while a and len(a) - 1 >= db:
        c = a[-1] / lb
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a = _trim(a)
    return _trim(q)


def squarefree_part(p: Poly) -> Poly:
    g = _gcd(p, _deriv(p))
    return _quo(p, g) if len(g) > 1 else list(p)


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, _deriv(p)]
    while seq[-1]:
        r = _rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq: list[Poly], x) -> int:
    signs = [s for s in (_sign(_eval(p, x)) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every real root lies in (-B, B)."""
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def _split_point(p: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    """A point of (lo, hi) near the middle that is not a root of p."""
    den = 2
    while True:
        for num in sorted(range(1, den), key=lambda j: abs(2 * j - den)):
            x = lo + (hi - lo) * Fraction(num, den)
            if _eval(p, x) != 0:
                return x
        den += 1


def isolate_real_roots(coeffs: Sequence) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi), each holding exactly one distinct real root.

    Endpoints are never roots. A constant polynomial has no isolated roots.
    """
    p = _trim([Fraction(c) for c in coeffs])
    if len(p) <= 1:
        return []
    sqf = squarefree_part(p)
    seq = sturm_sequence(sqf)
    bound = root_bound(sqf)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, sign_variations(seq, -bound), sign_variations(seq, bound))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        count = vlo - vhi
        if count == 0:
            continue
        if count == 1:
            out.append((lo, hi))
            continue
        mid = _split_point(sqf, lo, hi)
        vmid = sign_variations(seq, mid)
        stack.append((mid, hi, vmid, vhi))
        stack.append((lo, mid, vlo, vmid))
    out.sort()
    return out


def _polish(sqf_f: np.ndarray, lo: float, hi: float, slo: int) -> float:
    # bisect to float resolution, well below POLISH_TOL for simple roots
    f = np.polynomial.polynomial.polyval
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        s = np.sign(f(mid, sqf_f))
        if s == 0:
            return mid
        if s == slo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def real_roots(coeffs: Sequence, odd_only: bool = False) -> list[float]:
    """Sorted distinct real roots of ``coeffs``; with ``odd_only`` keep only sign changes."""
    p = _trim([Fraction(c) for c in coeffs])
    if len(p) <= 1:
        return []
    sqf = squarefree_part(p)
    sqf_f = np.array([float(c) for c in sqf])
    roots = []
    for lo, hi in isolate_real_roots(p):
        if odd_only and _sign(_eval(p, lo)) == _sign(_eval(p, hi)):
            continue
        # shrink exactly until the float endpoints still bracket the root
        for _ in range(200):
            if hi - lo < Fraction(1, 2 ** 20) * max(1, abs(lo)):
                break
            mid = (lo + hi) / 2
            smid = _sign(_eval(sqf, mid))
            if smid == 0:
                lo = hi = mid
                break
            if smid == _sign(_eval(sqf, lo)):
                lo = mid
            else:
                hi = mid
        if lo == hi:
            roots.append(float(lo))
            continue
        slo = _sign(_eval(sqf, lo))
        roots.append(_polish(sqf_f, float(lo), float(hi), slo))
    return roots


def count_real_roots(coeffs: Sequence, a=None, b=None) -> int:
    """Number of distinct real roots in (a, b] (whole line by default)."""
    p = _trim([Fraction(c) for c in coeffs])
    if len(p) <= 1:
        return 0
    seq = sturm_sequence(squarefree_part(p))
    bound = root_bound(p)
    a = -bound if a is None else Fraction(a)
    b = bound if b is None else Fraction(b)
    return sign_variations(seq, a) - sign_variations(seq, b)
