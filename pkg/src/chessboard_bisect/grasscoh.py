"""Mod-2 cohomology of the real Grassmannian G_d(R^{d+m}).

The ring is F2[w_1..w_d, wb_1..wb_m] modulo the relations

    w_i + w_{i-1} wb_1 + ... + wb_i = 0,   i = 1, ..., d+m,

with w_i = 0 for i > d and wb_j = 0 for j > m. ``wb_j`` are the dual classes.
Optionally two free degree-one generators t1, t2 are adjoined.

Normal forms first solve relation j (j = 1..m) for wb_j, which expresses
every dual class as a polynomial in the w's, then reduce modulo the
remaining pure-w relations with :class:`~chessboard_bisect.ideal.GradedIdeal`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .f2poly import F2Poly, PolyRing
from .ideal import DegreeBasis, GradedIdeal


def grassmannian_ring(d: int, m: int, with_t: bool = False) -> PolyRing:
    names = [f"w{i}" for i in range(1, d + 1)] + [f"wb{j}" for j in range(1, m + 1)]
    degrees = list(range(1, d + 1)) + list(range(1, m + 1))
    if with_t:
        names += ["t1", "t2"]
        degrees += [1, 1]
    return PolyRing(tuple(names), tuple(degrees))


@dataclass(frozen=True, eq=False)
class RingPresentation:
    """Generators with degrees plus the defining relations."""

    d: int
    m: int
    ring: PolyRing
    relations: tuple[F2Poly, ...]
    max_degree: int | None = None
    _ideal_cache: dict = field(default_factory=dict, repr=False)

    @property
    def with_t(self) -> bool:
        return "t1" in self.ring.names

    def w(self, i: int) -> F2Poly:
        if i == 0:
            return self.ring.one()
        if i < 0 or i > self.d:
            return self.ring.zero()
        return self.ring.gen(f"w{i}")

    def wb(self, j: int) -> F2Poly:
        if j == 0:
            return self.ring.one()
        if j < 0 or j > self.m:
            return self.ring.zero()
        return self.ring.gen(f"wb{j}")

    @cached_property
    def dual_in_w(self) -> tuple[F2Poly, ...]:
        """wb_0, ..., wb_m rewritten as polynomials in the w's."""
        out = [self.ring.one()]
        for j in range(1, self.m + 1):
            acc = self.ring.zero()
            for i in range(j):
                acc = acc + self.w(j - i) * out[i]
            out.append(acc)
        return tuple(out)

    def eliminate_duals(self, p: F2Poly) -> F2Poly:
        for j in range(1, self.m + 1):
            p = p.substitute(f"wb{j}", self.dual_in_w[j])
        return p

    @cached_property
    def active(self) -> tuple[int, ...]:
        return tuple(i for i, name in enumerate(self.ring.names) if not name.startswith("wb"))

    @cached_property
    def residual_relations(self) -> tuple[F2Poly, ...]:
        """Defining relations after eliminating the dual classes; the first m vanish."""
        out = []
        for rel in self.relations:
            r = self.eliminate_duals(rel)
            if r:
                out.append(r)
        return tuple(out)

    def ideal(self, extra: tuple[F2Poly, ...] = ()) -> GradedIdeal:
        """Ideal of the flattened ring spanned by the relations plus ``extra``.

        ``extra`` must already be free of dual classes (pass it through
        :meth:`eliminate_duals` first).
        """
        key = tuple(extra)
        gi = self._ideal_cache.get(key)
        if gi is None:
            gi = GradedIdeal(self.ring, self.residual_relations + key,
                             active=self.active, max_degree=self.max_degree)
            self._ideal_cache[key] = gi
        return gi

    def normal_form(self, p: F2Poly) -> F2Poly:
        return self.ideal().normal_form(self.eliminate_duals(p))

    def degree_basis(self, deg: int) -> DegreeBasis:
        return self.ideal().degree_basis(deg)

    def dimensions(self, max_deg: int | None = None) -> list[int]:
        """Dimensions of the quotient per degree, 0..max_deg (default d*m)."""
        top = self.d * self.m if max_deg is None else max_deg
        return [self.degree_basis(i).dim for i in range(top + 1)]


_FAULTS: set[str] = set()


def build_presentation(d: int, m: int, with_t: bool = False,
                       max_degree: int | None = None) -> RingPresentation:
    if d < 1 or m < 0:
        raise ValueError("need d >= 1 and m >= 0")
    ring = grassmannian_ring(d, m, with_t)
    pres = RingPresentation(d, m, ring, (), max_degree)
    rels = []
    for i in range(1, d + m + 1):
        acc = ring.zero()
        for j in range(i + 1):
            acc = acc + pres.w(i - j) * pres.wb(j)
        rels.append(acc)
    if "relation" in _FAULTS:
        rels.pop()  # selftest fault injection
    return RingPresentation(d, m, ring, tuple(rels), max_degree)


def normal_form(ring: RingPresentation, p: F2Poly) -> F2Poly:
    return ring.normal_form(p)


def sphere_relation(pres: RingPresentation, t: str = "t1", top: int | None = None) -> F2Poly:
    """t^d + t^{d-1} w_1 + ... + w_d (or the dual analogue for ``top='m'``)."""
    tv = pres.ring.gen(t)
    acc = pres.ring.zero()
    if top in (None, "d"):
        for i in range(pres.d + 1):
            acc = acc + tv ** (pres.d - i) * pres.w(i)
    elif top == "m":
        for j in range(pres.m + 1):
            acc = acc + tv ** (pres.m - j) * pres.wb(j)
    else:
        raise ValueError(top)
    return acc


def check_product_identity(d: int, m: int) -> bool:
    """(sum t1^{d-i} w_i)(sum t1^{m-j} wb_j) == t1^{d+m} in the cohomology ring."""
    pres = build_presentation(d, m, with_t=True)
    lhs = sphere_relation(pres) * sphere_relation(pres, top="m")
    return not pres.normal_form(lhs + pres.ring.gen("t1") ** (d + m))


def nonzero_top_dual_class(d: int, m: int) -> bool:
    if m < 1:
        raise ValueError("top dual class needs m >= 1")
    pres = build_presentation(d, m)
    return bool(pres.normal_form(pres.wb(m)))


def box_partition_counts(d: int, m: int) -> list[int]:
    """Number of partitions of i fitting in a d x m box, i = 0..d*m, by enumeration."""
    counts = [0] * (d * m + 1)

    def rec(parts_left: int, max_part: int, total: int):
        counts[total] += 1
        if parts_left == 0:
            return
        for p in range(1, max_part + 1):
            rec(parts_left - 1, p, total + p)

    rec(d, m, 0)
    return counts
