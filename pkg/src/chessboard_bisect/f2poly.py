"""Multivariate polynomials over the two-element field.

A polynomial is a set of exponent vectors: a monomial is present iff its
coefficient is 1. Generators carry positive integer degrees, and every
polynomial lives in a fixed :class:`PolyRing`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

Monomial = tuple[int, ...]


class RingMismatchError(ValueError):
    """Raised when combining polynomials from different rings."""


@dataclass(frozen=True)
class PolyRing:
    """Graded polynomial ring F2[x_1, ..., x_r] with fixed generator order."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees must have the same length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        if any(dg < 1 for dg in self.degrees):
            raise ValueError("generator degrees must be positive")

    @property
    def ngens(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def degree(self, mono: Monomial) -> int:
        return sum(e * dg for e, dg in zip(mono, self.degrees))

    def zero(self) -> "F2Poly":
        return F2Poly(self, frozenset())

    def one(self) -> "F2Poly":
        return F2Poly(self, frozenset([(0,) * self.ngens]))

    def gen(self, name: str) -> "F2Poly":
        mono = [0] * self.ngens
        mono[self.index(name)] = 1
        return F2Poly(self, frozenset([tuple(mono)]))

    def monomial(self, **exponents: int) -> "F2Poly":
        mono = [0] * self.ngens
        for name, e in exponents.items():
            mono[self.index(name)] = e
        return F2Poly(self, frozenset([tuple(mono)]))

    def from_terms(self, terms: Iterable[Monomial]) -> "F2Poly":
        """Build a polynomial, cancelling repeated monomials in pairs."""
        acc: set[Monomial] = set()
        for t in terms:
            t = tuple(t)
            if len(t) != self.ngens:
                raise RingMismatchError(
                    f"monomial {t} has {len(t)} exponents, ring has {self.ngens}")
            acc ^= {t}
        return F2Poly(self, frozenset(acc))

    def monomials_of_degree(self, deg: int, active: Sequence[int] | None = None) -> list[Monomial]:
        """All monomials of weighted degree ``deg``, descending in grevlex.

        ``active`` restricts the enumeration to the given generator indices;
        the other exponents are zero.
        """
        act = tuple(range(self.ngens)) if active is None else tuple(active)
        return list(_monomials(self.degrees, act, deg))

    def sort_key(self, mono: Monomial):
        return grevlex_key(self.degrees, mono)


def grevlex_key(degrees: Sequence[int], mono: Monomial):
    """Sort key for graded reverse lexicographic order (larger key = larger monomial).

    Weighted total degree first; ties go to the monomial with the smaller
    exponent in the last generator where the two differ.
    """
    return (sum(e * dg for e, dg in zip(mono, degrees)), tuple(-e for e in reversed(mono)))


@lru_cache(maxsize=None)
def _monomials(degrees: tuple[int, ...], active: tuple[int, ...], deg: int) -> tuple[Monomial, ...]:
    out: list[Monomial] = []
    n = len(degrees)

    def rec(pos: int, remaining: int, acc: list[int]):
        if pos == len(active):
            if remaining == 0:
                out.append(tuple(acc))
            return
        i = active[pos]
        for e in range(remaining // degrees[i] + 1):
            acc[i] = e
            rec(pos + 1, remaining - e * degrees[i], acc)
        acc[i] = 0

    if deg >= 0:
        rec(0, deg, [0] * n)
    out.sort(key=lambda m: grevlex_key(degrees, m), reverse=True)
    return tuple(out)


@dataclass(frozen=True, eq=False)
class F2Poly:
    """Immutable polynomial over F2; ``terms`` holds the monomials with coefficient 1."""

    ring: PolyRing
    terms: frozenset

    def _check(self, other: "F2Poly"):
        if not isinstance(other, F2Poly):
            raise TypeError(f"cannot combine F2Poly with {type(other).__name__}")
        if other.ring.ngens != self.ring.ngens or other.ring != self.ring:
            raise RingMismatchError(
                f"ring mismatch: {self.ring.names} vs {other.ring.names}")

    def _coerce(self, other) -> "F2Poly":
        if isinstance(other, int):
            return self.ring.one() if other % 2 else self.ring.zero()
        self._check(other)
        return other

    def __add__(self, other) -> "F2Poly":
        other = self._coerce(other)
        return F2Poly(self.ring, self.terms ^ other.terms)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other) -> "F2Poly":
        other = self._coerce(other)
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= {tuple(x + y for x, y in zip(a, b))}
        return F2Poly(self.ring, frozenset(acc))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "F2Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = self.ring.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, F2Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_terms)

    @cached_property
    def sorted_terms(self) -> tuple[Monomial, ...]:
        return tuple(sorted(self.terms, key=self.ring.sort_key, reverse=True))

    def degrees(self) -> set[int]:
        return {self.ring.degree(t) for t in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def graded_component(self, deg: int) -> "F2Poly":
        if deg < 0:
            raise ValueError("degree must be nonnegative")
        return F2Poly(self.ring, frozenset(t for t in self.terms if self.ring.degree(t) == deg))

    def substitute(self, name: str, value: "F2Poly") -> "F2Poly":
        """Replace generator ``name`` by the polynomial ``value``."""
        self._check(value)
        i = self.ring.index(name)
        powers: dict[int, F2Poly] = {}
        acc = self.ring.zero()
        for t in self.terms:
            e = t[i]
            if e not in powers:
                powers[e] = value ** e
            rest = t[:i] + (0,) + t[i + 1:]
            acc = acc + F2Poly(self.ring, frozenset([rest])) * powers[e]
        return acc

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"F2Poly({format_poly(self)!r})"


def add(p: F2Poly, q: F2Poly) -> F2Poly:
    return p + q


def mul(p: F2Poly, q: F2Poly) -> F2Poly:
    return p * q


def graded_component(p: F2Poly, deg: int) -> F2Poly:
    return p.graded_component(deg)


def format_monomial(ring: PolyRing, mono: Monomial) -> str:
    parts = []
    for name, e in zip(ring.names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(p: F2Poly) -> str:
    """Canonical text form, terms in descending grevlex order."""
    if not p.terms:
        return "0"
    return " + ".join(format_monomial(p.ring, t) for t in p.sorted_terms)


def parse_poly(ring: PolyRing, text: str) -> F2Poly:
    """Inverse of :func:`format_poly`."""
    text = text.strip()
    if text == "0":
        return ring.zero()
    terms = []
    for chunk in text.split("+"):
        mono = [0] * ring.ngens
        chunk = chunk.strip()
        if chunk != "1":
            for factor in chunk.split("*"):
                name, _, e = factor.strip().partition("^")
                mono[ring.index(name)] += int(e) if e else 1
        terms.append(tuple(mono))
    return ring.from_terms(terms)
