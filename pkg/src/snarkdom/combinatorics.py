"""Lexicographic ranking of k-subsets, used to cut subset spaces into ranges."""

from __future__ import annotations

from math import comb
from typing import Iterator, Sequence


def rank_combination(combo: Sequence[int], n: int) -> int:
    """Lexicographic rank of the sorted k-subset ``combo`` of ``range(n)``."""
    k = len(combo)
    rank = 0
    prev = -1
    for j, c in enumerate(combo):
        for skipped in range(prev + 1, c):
            rank += comb(n - skipped - 1, k - j - 1)
        prev = c
    return rank


def unrank_combination(rank: int, n: int, k: int) -> list[int]:
    """Inverse of :func:`rank_combination`."""
    if not 0 <= rank < comb(n, k):
        raise ValueError(f"rank {rank} out of range for C({n}, {k})")
    combo = []
    x = 0
    for j in range(k):
        while True:
            block = comb(n - x - 1, k - j - 1)
            if rank < block:
                break
            rank -= block
            x += 1
        combo.append(x)
        x += 1
    return combo


def next_combination(combo: list[int], n: int) -> bool:
    """Advance ``combo`` in place to its lexicographic successor; False at the end."""
    k = len(combo)
    i = k - 1
    while i >= 0 and combo[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    combo[i] += 1
    for j in range(i + 1, k):
        combo[j] = combo[j - 1] + 1
    return True


def combinations_in_range(n: int, k: int, start: int, stop: int) -> Iterator[tuple[int, ...]]:
    """k-subsets of ``range(n)`` with lexicographic rank in ``[start, stop)``."""
    if start >= stop:
        return
    combo = unrank_combination(start, n, k)
    for _ in range(stop - start):
        yield tuple(combo)
        if not next_combination(combo, n):
            return


def split_ranks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    out = []
    lo = 0
    for p in range(parts):
        hi = lo + step + (1 if p < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out
