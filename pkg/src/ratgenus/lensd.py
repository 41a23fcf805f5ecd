"""Correction terms of lens spaces via the continued-fraction recursion.

With labels ``0 <= i < p`` and ``p > q >= 1`` coprime::

    d(L(p, q), i) = ((2i + 1 - p - q)^2 - pq) / (4pq) - d(L(q, p mod q), i mod q)

bottoming out at d(S^3) = 0. For q = 1 this collapses to
``((2i - p)^2 - p) / (4p)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from .core import (
    RECURSION,
    CorrectionTerms,
    InvalidOrder,
    LensSpaceId,
    SpinCLabel,
    normalize_lens,
)


def d_closed_form_p1(p: int, i: SpinCLabel | int) -> Fraction:
    """d(L(p,1), i) for a representative ``0 <= i < p``."""
    if p <= 0:
        raise InvalidOrder(f"p must be >= 1, got {p}")
    i = i.value if isinstance(i, SpinCLabel) else i % p
    return Fraction((2 * i - p) ** 2 - p, 4 * p)


def _as_lens(L: LensSpaceId | tuple[int, int]) -> LensSpaceId:
    if isinstance(L, LensSpaceId):
        return L
    return normalize_lens(*L)


def d_lens(L: LensSpaceId | tuple[int, int], i: SpinCLabel | int) -> Fraction:
    """Single correction term; O(log p) steps, so p may be arbitrarily large."""
    L = _as_lens(L)
    p, q = L.p, L.q
    i = i.value if isinstance(i, SpinCLabel) else i
    i %= p
    total = Fraction(0)
    sign = 1
    while p > 1:
        total += sign * Fraction((2 * i + 1 - p - q) ** 2 - p * q, 4 * p * q)
        sign = -sign
        p, q, i = q, p % q, i % q
    return total


_INT64_BOUND = 1 << 62


@lru_cache(maxsize=8192)
def _scaled_table(p: int, q: int) -> tuple[tuple[int, ...], int]:
    # (numerators, denominator) of the full table, reduced by the shared gcd.
    if p == 1:
        return (0,), 1
    sub, sub_den = _scaled_table(q, p % q)
    den = lcm(4 * p * q, sub_den)
    a = den // (4 * p * q)
    b = den // sub_den
    pq = p * q
    s = p + q - 1
    # Vectorize only when every intermediate provably fits in int64.
    if (4 * p * p + pq) * a + max(map(abs, sub)) * b < _INT64_BOUND:
        i = np.arange(p, dtype=np.int64)
        arr = ((2 * i - s) ** 2 - pq) * a - np.array(sub, dtype=np.int64)[i % q] * b
        g = gcd(den, int(np.gcd.reduce(arr)))
        return tuple((arr // g).tolist()), den // g
    nums = [((2 * i - s) ** 2 - pq) * a - sub[i % q] * b for i in range(p)]
    g = gcd(den, *nums)
    return tuple(n // g for n in nums), den // g


def d_all(L: LensSpaceId | tuple[int, int]) -> CorrectionTerms:
    """Full table of d(L(p,q), i), labels in the recursion convention."""
    L = _as_lens(L)
    nums, den = _scaled_table(L.p, L.q)
    return CorrectionTerms(L.p, nums, den, RECURSION)


def conjugation_center(d: CorrectionTerms) -> int | None:
    """Smallest ``c`` with ``d[i] == d[c - i]`` for every label, or None."""
    p, nums = d.p, d.numerators
    for c in range(p):
        if all(nums[i] == nums[(c - i) % p] for i in range(p)):
            return c
    return None
