"""Closed-form overhead values for ring strategies and the DFS bound."""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidSizeError

F = Fraction


def _need(n: int, low: int = 3):
    if not isinstance(n, int) or n < low:
        raise InvalidSizeError(f"n must be an integer >= {low}, got {n!r}")


def ring_overhead(n: int) -> Fraction:
    """Worst-case ratio achieved by the ring algorithm on an ``n``-ring."""
    _need(n)
    if n == 3:
        return F(1)
    if n <= 5:
        return F(2 * n - 3, n)
    if n <= 7:
        return F(3, 2)
    if n <= 19:
        return F(2 * n - 2, n + 1)
    if n <= 23:
        return F(9, 5)
    return F(2 * n - 1, n + 2)


def lower_bound(n: int) -> Fraction:
    """Least overhead any ring strategy can have.

    The table starts at ``n = 4``; for ``n = 3`` the value 1 is returned, the
    ring algorithm's overhead, which no strategy can beat.
    """
    _need(n)
    if n == 3:
        return F(1)
    if 4 <= n <= 5:
        return F(2 * n - 3, n)
    if 6 <= n <= 7:
        return F(3, 2)
    if 8 <= n <= 19:
        return F(2 * n - 2, n + 1)
    if 20 <= n <= 23:
        return F(9, 5)
    return F(2 * n - 1, n + 2)


def class_a0(n: int) -> Fraction:
    _need(n)
    return F(2 * n - 3, n)


def istep_a1(n: int, i: int) -> Fraction:
    _need(n)
    if not 1 <= i <= n - 2:
        raise InvalidSizeError(f"i must lie in [1, {n - 2}] for n={n}, got {i}")
    if i == n - 2:
        return F(2 * n - 3, n - 1)
    return max(F(n + i - 1, n - 1), F(3 * i + 3, i + 3), F(i + 2 * n - 3, i + n))


def dfs_bound(n: int) -> Fraction:
    _need(n)
    return F(2 * n - 4, n - 1)
