"""The balls-in-bins minimum m(a_1, ..., a_n; N).

A distribution of N balls into bins of capacities a_i puts between 1 and
a_i balls in bin i.  m is the least product y_1 ... y_n over all
distributions, extended by 1 to the left of n and by prod(a_i) to the
right of sum(a_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterator, Sequence

BRUTE_FORCE_MAX_BINS = 8
BRUTE_FORCE_MAX_TOTAL = 40


@dataclass(frozen=True)
class BinProfile:
    """Capacities sorted descending; ``order[k]`` is the caller's index of caps[k]."""

    caps: tuple[int, ...]
    order: tuple[int, ...]

    @classmethod
    def of(cls, caps: Sequence[int] | "BinProfile") -> "BinProfile":
        if isinstance(caps, BinProfile):
            return caps
        caps = [int(a) for a in caps]
        if not caps:
            raise ValueError("at least one bin is required")
        if any(a < 1 for a in caps):
            raise ValueError(f"bin capacities must be >= 1, got {caps}")
        order = sorted(range(len(caps)), key=lambda i: (-caps[i], i))
        return cls(tuple(caps[i] for i in order), tuple(order))

    @property
    def n(self) -> int:
        return len(self.caps)

    @property
    def total(self) -> int:
        return sum(self.caps)


@dataclass(frozen=True)
class Distribution:
    counts: tuple[int, ...]  # in the caller's original bin order
    target: int

    @property
    def product(self) -> int:
        return prod(self.counts)


def greedy_distribution(profile, N: int) -> Distribution:
    """One ball per bin, then fill the largest bins to capacity in turn."""
    profile = BinProfile.of(profile)
    if not profile.n <= N <= profile.total:
        raise ValueError(
            f"no distribution exists: need {profile.n} <= N <= {profile.total}, got N={N}"
        )
    left = N - profile.n
    sorted_counts = []
    for a in profile.caps:
        extra = min(a - 1, left)
        sorted_counts.append(1 + extra)
        left -= extra
    counts = [0] * profile.n
    for k, i in enumerate(profile.order):
        counts[i] = sorted_counts[k]
    return Distribution(tuple(counts), N)


def equal_caps_closed_form(a: int, n: int, N: int) -> int:
    """(R+1) * a**k with N - n = k(a-1) + R, 0 <= R < a-1; valid for n <= N <= an."""
    if a < 2:
        raise ValueError("closed form needs a >= 2")
    if not n <= N <= a * n:
        raise ValueError(f"closed form needs {n} <= N <= {a * n}")
    k, R = divmod(N - n, a - 1)
    return (R + 1) * a**k


def min_product_details(profile, N: int) -> tuple[int, Distribution | None, bool]:
    """m together with the greedy distribution (if any) and whether the closed form was used."""
    profile = BinProfile.of(profile)
    if N < profile.n:
        return 1, None, False
    if N > profile.total:
        return prod(profile.caps), None, False
    greedy = greedy_distribution(profile, N)
    a = profile.caps[0]
    if a >= 2 and all(c == a for c in profile.caps):
        return equal_caps_closed_form(a, profile.n, N), greedy, True
    return greedy.product, greedy, False


def min_product(profile, N: int) -> int:
    """m(a_1, ..., a_n; N), total in N.

    >>> min_product([3, 3, 2], 6)
    6
    >>> min_product([2, 2, 2, 2], 5)
    2
    """
    return min_product_details(profile, N)[0]


def distributions(caps: Sequence[int], N: int) -> Iterator[tuple[int, ...]]:
    """Every y with 1 <= y_i <= caps[i] and sum(y) == N."""
    caps = list(caps)
    n = len(caps)
    # max_tail[i]: largest number of balls bins i.. can still take
    max_tail = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        max_tail[i] = max_tail[i + 1] + caps[i]
    y = [0] * n

    def rec(i, left):
        if i == n:
            if left == 0:
                yield tuple(y)
            return
        rest_min = n - i - 1
        rest_max = max_tail[i + 1]
        lo = max(1, left - rest_max)
        hi = min(caps[i], left - rest_min)
        for yi in range(lo, hi + 1):
            y[i] = yi
            yield from rec(i + 1, left - yi)

    yield from rec(0, N)


def brute_force_min_product(profile, N: int) -> int:
    """Exhaustive minimum over all distributions (same edge conventions)."""
    profile = BinProfile.of(profile)
    if profile.n > BRUTE_FORCE_MAX_BINS or profile.total > BRUTE_FORCE_MAX_TOTAL:
        raise ValueError(
            f"brute force guard exceeded: n={profile.n} (max {BRUTE_FORCE_MAX_BINS}), "
            f"sum={profile.total} (max {BRUTE_FORCE_MAX_TOTAL})"
        )
    if N < profile.n:
        return 1
    if N > profile.total:
        return prod(profile.caps)
    return min(prod(y) for y in distributions(profile.caps, N))
