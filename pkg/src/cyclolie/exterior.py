"""Strictly increasing multi-indices, unshuffles and permutation signs.

Basis indices are 1-based throughout (``e1 .. en``).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import NamedTuple, Sequence

__all__ = [
    "MultiIndex",
    "Unshuffle",
    "enumerate_multiindices",
    "unshuffles",
    "sort_with_sign",
    "permutation_sign",
    "merge_sign",
]

MultiIndex = tuple  # strictly increasing tuple of ints in 1..n


class Unshuffle(NamedTuple):
    """Permutation of ``1..k+l`` increasing on the first k and last l places."""

    perm: tuple[int, ...]
    split: int

    @property
    def head(self) -> tuple[int, ...]:
        return self.perm[: self.split]

    @property
    def tail(self) -> tuple[int, ...]:
        return self.perm[self.split :]


@lru_cache(maxsize=None)
def enumerate_multiindices(n: int, p: int) -> tuple[MultiIndex, ...]:
    if p < 0 or p > n:
        return ()
    return tuple(combinations(range(1, n + 1), p))


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of a sequence of distinct integers relative to its sorted order."""
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv & 1 else 1


@lru_cache(maxsize=None)
def unshuffles(k: int, l: int) -> tuple[tuple[Unshuffle, int], ...]:
    """All ``(sigma, sign(sigma))`` with sigma in Sh(k, l), heads in lex order."""
    if k < 0 or l < 0:
        raise ValueError("unshuffle type must be non-negative")
    letters = range(1, k + l + 1)
    out = []
    for head in combinations(letters, k):
        tail = tuple(x for x in letters if x not in head)
        perm = head + tail
        out.append((Unshuffle(perm, k), permutation_sign(perm)))
    return tuple(out)


def sort_with_sign(indices: Sequence[int]) -> tuple[MultiIndex, int] | None:
    """Sort ``indices``; return ``(sorted, sign)`` or None when an index repeats."""
    s = tuple(sorted(indices))
    for a, b in zip(s, s[1:]):
        if a == b:
            return None
    return s, permutation_sign(indices)


def merge_sign(a: MultiIndex, b: MultiIndex) -> tuple[MultiIndex, int] | None:
    """Sign of concatenating two disjoint increasing indices, as in ``e_a ∧ e_b``."""
    if set(a) & set(b):
        return None
    inv = 0
    for x in a:
        for y in b:
            if x > y:
                inv += 1
    return tuple(sorted(a + b)), (-1 if inv & 1 else 1)
