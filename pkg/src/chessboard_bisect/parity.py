"""Stirling numbers of the second kind, binomial coefficients and their parities."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Above this n the report skips materializing S(n, k).
STIRLING_VALUE_CAP = 400


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = (k * prev[k] if k < len(prev) else 0) + prev[k - 1]
    return tuple(row)


def stirling2(n: int, k: int) -> int:
    """S(n, k) from S(n, k) = k S(n-1, k) + S(n-1, k-1), S(0, 0) = 1."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        return 0
    return _stirling_row(n)[k]


def binom_parity(n: int, k: int) -> int:
    """C(n, k) mod 2 by Lucas: odd iff every binary digit of k is set in n."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        return 0
    return int(k & ~n == 0)


def stirling_parity_fast(n: int, k: int) -> int:
    """S(n, k) mod 2 as C(n + ceil(k/2) - k - 1, ceil(k/2) - 1) mod 2."""
    if k < 1 or n < k:
        raise ValueError("need n >= k >= 1")
    a = (k + 1) // 2
    return binom_parity(n + a - k - 1, a - 1)


@dataclass(frozen=True)
class ParityReport:
    n: int
    k: int
    stirling_value: int | None
    stirling_parity: int
    binom_parity: int

    @property
    def agree(self) -> bool:
        return self.stirling_parity == self.binom_parity


def parity_report(n: int, k: int) -> ParityReport:
    fast = stirling_parity_fast(n, k)
    if n <= STIRLING_VALUE_CAP:
        value = stirling2(n, k)
        parity = value % 2
    else:
        value, parity = None, fast
    return ParityReport(n, k, value, parity, fast)
