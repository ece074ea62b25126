"""Closed-form totals of each statistic summed over all words of length n."""
from __future__ import annotations


def kcon_total(n: int, k: int) -> int:
    """``(k-1)(n-1)k^(n-2)``; zero when there are no adjacent pairs."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n <= 1:
        return 0
    return (k - 1) * (n - 1) * k ** (n - 2)


def gkcon_total(n: int, k: int) -> int:
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n <= 1:
        return 0
    if k % 2 == 0:
        doubled = (k + 1) * (n - 1) * k ** (n - 1)
        assert doubled % 2 == 0
        return doubled // 2
    return (k + 1) // 2 * k ** (n - 1) * (n - 1)


def total(stat_name: str, n: int, k: int) -> int:
    if stat_name == "kcon":
        return kcon_total(n, k)
    if stat_name == "gkcon":
        return gkcon_total(n, k)
    raise ValueError(f"unknown statistic {stat_name!r}")


def floor_sum_identity(k: int) -> tuple[int, int]:
    """Both alternating sums of ``floor((j+1)/2)`` over ``j = 1..k-1``.

    First component uses sign ``(-1)^(j-1)`` (equals ``k // 2`` for even k),
    second uses ``(-1)^j`` (vanishes for odd k).
    """
    first = sum((-1) ** (j - 1) * ((j + 1) // 2) for j in range(1, k))
    second = sum((-1) ** j * ((j + 1) // 2) for j in range(1, k))
    return first, second


def floor_sum_claim_holds(k: int) -> bool:
    first, second = floor_sum_identity(k)
    return first == k // 2 if k % 2 == 0 else second == 0
