"""Exact ideal-membership certificates for chessboard bisections of mass assignments.

For parameters (d, k, m) the obstruction class t2^{d+m+k-2} is tested for
membership in

    (t1^d + t1^{d-1} w_1 + ... + w_d,  (t1 + t2)^a t2^b),   a = ceil(k/2), b = floor(k/2),

inside H*(G_d(R^{d+m}); F2)[t1, t2]. Non-membership certifies that any
d+m+k-1 mass assignments on d-planes of R^{d+m} admit a bisection by the
chessboard coloring of at most k parallel hyperplanes in some d-plane.

Membership is always decided by linear algebra; the Stirling parity is only
carried along as a cross-check. Three reformulations of the problem
(dropping t2^b, the substitution t2 -> t1 + t2, and collapsing the target
to its single surviving binomial term) are exposed for the same engine.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache

from .f2poly import F2Poly
from .grasscoh import RingPresentation, build_presentation, sphere_relation
from .ideal import DegreeOverflowError
from .parity import binom_parity, stirling2

DEFAULT_DEGREE_CAP = 16

CSV_COLUMNS = ("d", "k", "m", "n", "member", "certified", "stirling_parity", "consistent")


@dataclass(frozen=True)
class IndexProblem:
    d: int
    k: int
    m: int

    def __post_init__(self):
        if self.d < 1 or self.k < 1 or self.m < 0:
            raise ValueError(f"need d >= 1, k >= 1, m >= 0; got {(self.d, self.k, self.m)}")

    @property
    def a(self) -> int:
        return (self.k + 1) // 2

    @property
    def b(self) -> int:
        return self.k // 2

    @property
    def n(self) -> int:
        """Number of masses."""
        return self.d + self.m + self.k - 1

    @property
    def target_exp(self) -> int:
        return self.d + self.m + self.k - 2


@dataclass(frozen=True)
class Certificate:
    problem: IndexProblem
    member: int
    certified: int
    stirling_parity: int
    consistent: int
    step_chain: tuple[int, int, int, int]

    def to_dict(self) -> dict:
        p = self.problem
        return {
            "d": p.d, "k": p.k, "m": p.m, "n": p.n,
            "member": self.member,
            "certified": bool(self.certified),
            "stirling_parity": self.stirling_parity,
            "consistent": bool(self.consistent),
            "step_chain": list(self.step_chain),
        }

    def csv_row(self) -> tuple[int, ...]:
        p = self.problem
        return (p.d, p.k, p.m, p.n, self.member, self.certified,
                self.stirling_parity, self.consistent)


@lru_cache(maxsize=64)
def _presentation(d: int, m: int, cap: int) -> RingPresentation:
    return build_presentation(d, m, with_t=True, max_degree=cap)


def _member(pres: RingPresentation, target: F2Poly, gens: tuple[F2Poly, ...], cap: int) -> int:
    degs = target.degrees()
    if degs and max(degs) > cap:
        raise DegreeOverflowError(f"target degree {max(degs)} exceeds cap {cap}")
    gens = tuple(pres.eliminate_duals(g) for g in gens)
    return int(pres.ideal(gens).contains(pres.eliminate_duals(target)))


def ideal_member(d: int, k: int, m: int, cap: int = DEFAULT_DEGREE_CAP) -> int:
    """1 iff t2^{d+m+k-2} lies in the index ideal."""
    prob = IndexProblem(d, k, m)
    pres = _presentation(d, m, cap)
    t1, t2 = pres.ring.gen("t1"), pres.ring.gen("t2")
    gens = (sphere_relation(pres), (t1 + t2) ** prob.a * t2 ** prob.b)
    return _member(pres, t2 ** prob.target_exp, gens, cap)


def involution(p: F2Poly) -> F2Poly:
    """The ring automorphism fixing t1 and sending t2 to t1 + t2."""
    ring = p.ring
    return p.substitute("t2", ring.gen("t1") + ring.gen("t2"))


def step_problem(d: int, k: int, m: int, step: int,
                 cap: int = DEFAULT_DEGREE_CAP) -> tuple[RingPresentation, F2Poly, tuple[F2Poly, ...]]:
    """(presentation, target, generators) of a reformulated membership problem.

    step 1: target t2^{d+m+a-2}, generators g, (t1+t2)^a
    step 2: step 1 pushed through :func:`involution`
    step 3: target (C(d+m+a-2, a-1) mod 2) t1^{d+m-1} t2^{a-1}, generators g, t2^a
    step 4: the bare monomial t1^{d+m-1} t2^{a-1} against the step-3 generators
    """
    prob = IndexProblem(d, k, m)
    a = prob.a
    pres = _presentation(d, m, cap)
    t1, t2 = pres.ring.gen("t1"), pres.ring.gen("t2")
    g = sphere_relation(pres)
    if step == 1:
        return pres, t2 ** (d + m + a - 2), (g, (t1 + t2) ** a)
    if step == 2:
        _, target, gens = step_problem(d, k, m, 1, cap)
        return pres, involution(target), tuple(involution(x) for x in gens)
    if step in (3, 4):
        mono = t1 ** (d + m - 1) * t2 ** (a - 1)
        if step == 3 and not binom_parity(d + m + a - 2, a - 1):
            mono = pres.ring.zero()
        return pres, mono, (g, t2 ** a)
    raise ValueError(f"unknown step {step}")


def step_transform_member(d: int, k: int, m: int, step: int,
                          cap: int = DEFAULT_DEGREE_CAP) -> int:
    pres, target, gens = step_problem(d, k, m, step, cap)
    return _member(pres, target, gens, cap)


def certify(d: int, k: int, m: int, cap: int = DEFAULT_DEGREE_CAP) -> Certificate:
    prob = IndexProblem(d, k, m)
    member = ideal_member(d, k, m, cap)
    sp = stirling2(prob.n, k) % 2
    chain = tuple(step_transform_member(d, k, m, s, cap) for s in (1, 2, 3, 4))
    certified = 1 - member
    return Certificate(prob, member, certified, sp, int(certified == sp), chain)


def _certify_args(args):
    return certify(*args)


def grid(d_max: int, k_max: int, m_max: int) -> list[tuple[int, int, int]]:
    return [(d, k, m) for d in range(1, d_max + 1)
            for k in range(1, k_max + 1) for m in range(0, m_max + 1)]


def parity_table(d_max: int, k_max: int, m_max: int, cap: int = DEFAULT_DEGREE_CAP,
                 workers: int = 1) -> list[Certificate]:
    """One certificate per (d, k, m) with 1 <= d <= d_max, 1 <= k <= k_max, 0 <= m <= m_max."""
    triples = grid(d_max, k_max, m_max)
    for d, k, m in triples:
        if d + m + k - 2 > cap:
            raise DegreeOverflowError(f"triple {(d, k, m)} needs degree {d + m + k - 2} > cap {cap}")
    args = [(d, k, m, cap) for d, k, m in triples]
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_certify_args, args))
    return [certify(*a) for a in args]


def table_csv(certs: list[Certificate]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for c in certs:
        writer.writerow(c.csv_row())
    return buf.getvalue()


def certificate_dict(cert: Certificate) -> dict:
    out = cert.to_dict()
    out["problem"] = asdict(cert.problem)
    return out
