"""Degree-by-degree linear algebra for homogeneous ideals over F2.

The degree-D slice of an ideal generated by homogeneous g_1, ..., g_s is
spanned by the products g_i * u with u running over all monomials of degree
D - deg(g_i). Rows are packed into Python ints (bit j = j-th monomial in
ascending grevlex order) and row-reduced with a pivot table keyed by the
leading bit, so the normal form of a polynomial is its unique remainder on
the non-pivot (standard) monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .f2poly import F2Poly, Monomial, PolyRing


class DegreeOverflowError(ValueError):
    """Raised when a computation asks for a degree above the configured cap."""


@dataclass(frozen=True)
class DegreeBasis:
    """Standard-monomial basis of the quotient ring in a single degree."""

    degree: int
    basis: tuple[Monomial, ...]
    monomials: tuple[Monomial, ...]
    pivots: dict = field(repr=False, compare=False)
    index: dict = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, p: F2Poly) -> tuple[int, ...]:
        """Coordinate vector of the degree-``degree`` part of ``p`` over ``basis``."""
        nf = _reduce_bits(_to_bits(p, self), self.pivots)
        return tuple((nf >> self.index[b]) & 1 for b in self.basis)


def _to_bits(p: F2Poly, db: DegreeBasis) -> int:
    bits = 0
    for t in p.terms:
        if p.ring.degree(t) == db.degree:
            bits ^= 1 << db.index[t]
    return bits


def _reduce_bits(bits: int, pivots: dict[int, int]) -> int:
    out = 0
    while bits:
        h = bits.bit_length() - 1
        row = pivots.get(h)
        if row is None:
            out |= 1 << h
            bits ^= 1 << h
        else:
            bits ^= row
    return out


class GradedIdeal:
    """Homogeneous ideal of a :class:`PolyRing`, queried one degree at a time.

    Only generators listed in ``active`` may occur in the ideal generators;
    inputs to :meth:`normal_form` must likewise avoid inactive generators.
    """

    def __init__(self, ring: PolyRing, generators: Sequence[F2Poly],
                 active: Sequence[int] | None = None, max_degree: int | None = None):
        self.ring = ring
        self.active = tuple(range(ring.ngens)) if active is None else tuple(sorted(active))
        self.max_degree = max_degree
        self.generators: list[tuple[int, F2Poly]] = []
        inactive = set(range(ring.ngens)) - set(self.active)
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if not g:
                continue
            degs = g.degrees()
            if len(degs) != 1:
                raise ValueError(f"generator {g} is not homogeneous")
            if any(t[i] for t in g.terms for i in inactive):
                raise ValueError(f"generator {g} uses an inactive variable")
            self.generators.append((degs.pop(), g))
        self._cache: dict[int, DegreeBasis] = {}

    def degree_basis(self, deg: int) -> DegreeBasis:
        if deg < 0:
            raise ValueError("degree must be nonnegative")
        if self.max_degree is not None and deg > self.max_degree:
            raise DegreeOverflowError(f"degree {deg} exceeds cap {self.max_degree}")
        db = self._cache.get(deg)
        if db is None:
            db = self._build(deg)
            self._cache[deg] = db
        return db

    def _build(self, deg: int) -> DegreeBasis:
        monos = tuple(self.ring.monomials_of_degree(deg, self.active))
        n = len(monos)
        index = {m: n - 1 - i for i, m in enumerate(monos)}
        pivots: dict[int, int] = {}
        for gdeg, g in self.generators:
            if gdeg > deg:
                continue
            gterms = list(g.terms)
            for u in self.ring.monomials_of_degree(deg - gdeg, self.active):
                row = 0
                for t in gterms:
                    row ^= 1 << index[tuple(a + b for a, b in zip(t, u))]
                while row:
                    h = row.bit_length() - 1
                    prow = pivots.get(h)
                    if prow is None:
                        pivots[h] = row
                        break
                    row ^= prow
        basis = tuple(m for m in monos if index[m] not in pivots)
        return DegreeBasis(deg, basis, monos, pivots, index)

    def normal_form(self, p: F2Poly) -> F2Poly:
        """Canonical representative of ``p`` modulo the ideal, reduced degree by degree."""
        if p.ring != self.ring:
            raise ValueError("polynomial from a different ring")
        inactive = set(range(self.ring.ngens)) - set(self.active)
        if any(t[i] for t in p.terms for i in inactive):
            raise ValueError("polynomial uses an inactive variable")
        terms: list[Monomial] = []
        for deg in sorted(p.degrees()):
            db = self.degree_basis(deg)
            nf = _reduce_bits(_to_bits(p, db), db.pivots)
            n = len(db.monomials)
            terms.extend(db.monomials[n - 1 - b] for b in _bits_of(nf))
        return F2Poly(self.ring, frozenset(terms))

    def contains(self, p: F2Poly) -> bool:
        return not self.normal_form(p)

    def slice_dimension(self, deg: int) -> int:
        """Dimension of the degree-``deg`` part of the ideal."""
        return len(self.degree_basis(deg).pivots)


def _bits_of(x: int):
    while x:
        h = x.bit_length() - 1
        yield h
        x ^= 1 << h
