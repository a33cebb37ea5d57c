"""Exact integer combinatorics: binomials, Catalan, Stirling numbers, partitions."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import CapacityError, DomainError

PARTITION_BOUND = 60


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def catalan(N: int) -> int:
    if N < 0:
        raise DomainError("catalan index must be nonnegative")
    return math.comb(2 * N, N) // (N + 1)


class _Triangle:
    """Row-extendable memo of a triangular recurrence, safe under threads."""

    def __init__(self, first_row, step):
        self._rows = [first_row]
        self._step = step
        self._lock = threading.Lock()

    def row(self, n: int) -> list:
        if n < len(self._rows):
            return self._rows[n]
        with self._lock:
            while len(self._rows) <= n:
                self._rows.append(self._step(len(self._rows), self._rows[-1]))
        return self._rows[n]


def _stirling1_step(n, prev):
    # [n, k] = [n-1, k-1] + (n-1) [n-1, k]
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = prev[k - 1] + (n - 1) * (prev[k] if k < n else 0)
    return row


def _stirling2_step(n, prev):
    # {n, k} = {n-1, k-1} + k {n-1, k}
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = prev[k - 1] + k * (prev[k] if k < n else 0)
    return row


_S1 = _Triangle([1], _stirling1_step)
_S2 = _Triangle([1], _stirling2_step)


def stirling1(n: int, k: int) -> int:
    """Unsigned Stirling cycle number [n, k]."""
    if n < 0 or k < 0 or k > n:
        return 0
    return _S1.row(n)[k]


def stirling1_row(n: int) -> list:
    return list(_S1.row(n))


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind via the triangular recurrence."""
    if n < 0 or k < 0 or k > n:
        return 0
    return _S2.row(n)[k]


def stirling2_surjection(n: int, k: int) -> int:
    """Second-kind Stirling number by inclusion-exclusion over surjections."""
    if n < 0 or k < 0 or k > n:
        return 0
    total = sum((-1) ** (k - l) * math.comb(k, l) * l**n for l in range(k + 1))
    q, r = divmod(total, math.factorial(k))
    assert r == 0
    return q


def stirling1_two_sum(n: int, k: int) -> int:
    """Cycle number [n, k] from the double sum over second-kind expansions.

    Uses only binomials, powers and factorials; valid for 1 <= k <= n.
    """
    if not (1 <= k <= n):
        raise DomainError(f"stirling1_two_sum needs 1 <= k <= n, got n={n}, k={k}")
    total = Fraction(0)
    for j in range(n, 2 * n - k + 1):
        inner = Fraction(0)
        for m in range(0, j - n + 1):
            inner += Fraction((-1) ** (m + n - k) * m ** (j - k), math.factorial(m) * math.factorial(j - n - m))
        total += math.comb(j - 1, k - 1) * math.comb(2 * n - k, j) * inner
    assert total.denominator == 1
    return total.numerator


_RSTIRLING: dict = {}
_RSTIRLING_LOCK = threading.Lock()


def r_stirling1(n: int, k: int, r: int) -> int:
    """r-Stirling cycle number: permutations of n with k cycles, 1..r in distinct cycles."""
    if r < 0:
        raise DomainError("r must be nonnegative")
    if n < r:
        return 0
    with _RSTIRLING_LOCK:
        rows = _RSTIRLING.setdefault(r, [[1 if kk == r else 0 for kk in range(r + 1)]])
        while len(rows) <= n - r:
            nn = r + len(rows)
            prev = rows[-1]
            row = [0] * (nn + 1)
            for kk in range(nn + 1):
                a = prev[kk - 1] if 1 <= kk <= len(prev) else 0
                b = prev[kk] if kk < len(prev) else 0
                row[kk] = a + (nn - 1) * b
            rows.append(row)
        row = rows[n - r]
    return row[k] if 0 <= k < len(row) else 0


# --------------------------------------------------------------------------- #
# Partitions


@dataclass(frozen=True)
class Partition:
    """Integer partition stored as a multiplicity map part -> count."""

    multiplicities: tuple  # sorted ((part, count), ...), parts descending
    parts: tuple = field(compare=False)

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Partition":
        counts: dict = {}
        for p in parts:
            if p < 1:
                raise DomainError("partition parts must be positive")
            counts[p] = counts.get(p, 0) + 1
        mult = tuple(sorted(counts.items(), reverse=True))
        return cls(mult, tuple(sorted(parts, reverse=True)))

    @property
    def weight(self) -> int:
        return sum(j * m for j, m in self.multiplicities)

    @property
    def length(self) -> int:
        return sum(m for _, m in self.multiplicities)

    @property
    def z_mu(self) -> int:
        z = 1
        for j, m in self.multiplicities:
            z *= j**m * math.factorial(m)
        return z

    def multiplicity(self, j: int) -> int:
        return dict(self.multiplicities).get(j, 0)


def _partitions_desc(s: int, largest: int):
    if s == 0:
        yield ()
        return
    for first in range(min(s, largest), 0, -1):
        for rest in _partitions_desc(s - first, first):
            yield (first,) + rest


def partitions(s: int, bound: int = PARTITION_BOUND) -> list:
    """All partitions of s in reverse-lexicographic order, largest first."""
    if s < 0:
        raise DomainError("cannot partition a negative integer")
    if s > bound:
        raise CapacityError(f"partitions({s}) exceeds the configured bound {bound}")
    return [Partition.from_parts(p) for p in _partitions_desc(s, s)]


def e_from_p(power_sums: Sequence, k: int):
    """Elementary symmetric e_k from power sums p_1..p_k by Newton's identities.

    Works for any scalar type closed under +, *, and division by int
    (Fraction, int, mpf, HPReal-valued mpf).
    """
    if k < 0:
        raise DomainError("e_k needs k >= 0")
    if len(power_sums) < k:
        raise DomainError(f"need {k} power sums, got {len(power_sums)}")
    e = [power_sums[0] * 0 + 1 if power_sums else 1]
    for n in range(1, k + 1):
        acc = 0
        for r in range(1, n + 1):
            term = power_sums[r - 1] * e[n - r]
            acc = acc + term if r % 2 == 1 else acc - term
        e.append(acc / n if not isinstance(acc, int) else Fraction(acc, n))
    return e[k]


def elementary_symmetric(values: Sequence, k: int):
    """e_k of the given values by the product expansion (independent of Newton)."""
    if k < 0:
        raise DomainError("e_k needs k >= 0")
    e = [1] + [0] * k
    for v in values:
        for i in range(k, 0, -1):
            e[i] = e[i] + v * e[i - 1]
    return e[k]
