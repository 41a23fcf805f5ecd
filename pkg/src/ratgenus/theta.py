"""Lower bound on Theta from correction terms, and exact data for simple knots.

For a class ``a`` acting on labels by translation, the bound is

    max_s { d(s + a) - d(s) }  <=  1 + (-chi(F)) / |[dF].[mu]|

for every rational Seifert surface F of a knot in class a. Simple knots in
lens spaces are Floer simple and attain it, which pins down chi and the
rational genus; they are rationally fibered exactly when the maximum is
attained at a single label.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from operator import sub
from typing import Callable, Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import (
    ClassLike,
    CorrectionTerms,
    DegenerateClass,
    LabelingInconsistency,
    LensSpaceId,
    class_residue,
    format_rational,
    order_of,
)
from .lensd import _as_lens, d_all

# Maps (p, q, k) of a simple knot to the label translation of its class.
ClassAssignment = Callable[[int, int, int], int]


def identity_assignment(p: int, q: int, k: int) -> int:
    return k % p


@dataclass(frozen=True)
class ThetaReport:
    raw_bound: Fraction
    theta_lb: Fraction
    exact: bool
    order_m: int
    chi: Optional[int] = None
    rational_norm: Optional[Fraction] = None
    fibered: Optional[bool] = None
    maximizers: tuple[int, ...] = ()
    degenerate: bool = False
    convention: str = "recursion"

    @property
    def theta(self) -> Optional[Fraction]:
        """Exact Theta of the class (simple-knot reports only)."""
        if self.rational_norm is None:
            return None
        return 2 * self.rational_norm

    def to_json_dict(self) -> dict:
        def rat(x):
            return None if x is None else format_rational(x)

        return {
            "order": self.order_m,
            "theta_lb": rat(self.theta_lb),
            "raw_bound": rat(self.raw_bound),
            "exact": self.exact,
            "chi": self.chi,
            "rational_norm": rat(self.rational_norm),
            "fibered": self.fibered,
            "maximizers": list(self.maximizers),
            "degenerate": self.degenerate,
            "convention": self.convention,
        }


def _max_difference(nums: tuple[int, ...], k: int) -> tuple[int, tuple[int, ...]]:
    shifted = nums[k:] + nums[:k]
    diffs = list(map(sub, shifted, nums))
    best = max(diffs)
    return best, tuple(s for s, v in enumerate(diffs) if v == best)


def theta_lower_bound(d: CorrectionTerms, a: ClassLike) -> ThetaReport:
    """Evaluate the correction-term bound for class ``a`` on the table ``d``."""
    k = class_residue(a, d.p)
    best, maximizers = _max_difference(d.numerators, k)
    raw = Fraction(best, d.denominator) - 1
    return ThetaReport(
        raw_bound=raw,
        theta_lb=max(raw, Fraction(0)),
        exact=False,
        order_m=order_of(k, d.p),
        maximizers=maximizers,
        convention=d.convention,
    )


def difference_maxima(nums: np.ndarray):
    """Vectorized maximization over every class at once.

    ``nums`` is an integer array of table numerators. Returns ``(best,
    counts, maximizers)``: ``best[k]`` is the max over s of
    ``nums[(s+k) % p] - nums[s]``, ``counts[k]`` how many labels attain it,
    and ``maximizers[k]`` those labels in ascending order.
    """
    p = len(nums)
    if p and int(np.abs(nums).max()) < (1 << 30):
        nums = nums.astype(np.int32)
    diffs = sliding_window_view(np.concatenate((nums, nums)), p)[:p] - nums
    best = diffs.max(axis=1)
    hits = diffs == best[:, None]
    counts = np.count_nonzero(hits, axis=1)
    maximizers = [[s] for s in hits.argmax(axis=1).tolist()]
    ties = np.nonzero(counts > 1)[0]
    if ties.size:
        rows, cols = np.nonzero(hits[ties])
        ties = ties.tolist()
        for k in ties:
            maximizers[k] = []
        for r, c in zip(rows.tolist(), cols.tolist()):
            maximizers[ties[r]].append(c)
    return best.astype(np.int64), counts, maximizers


# Table numerators are O(p^2) in magnitude; past this the int64 path is refused.
_INT64_SAFE = 1 << 60


def table_array(d: CorrectionTerms) -> np.ndarray:
    nums = d.numerators
    if max(map(abs, nums)) >= _INT64_SAFE or d.denominator >= _INT64_SAFE:
        raise OverflowError(f"table for p={d.p} too large for the vectorized path")
    return np.array(nums, dtype=np.int64)


def theta_all_classes(d: CorrectionTerms) -> list[ThetaReport]:
    """``theta_lower_bound(d, k)`` for every ``k``, computed in one pass."""
    best, _, maximizers = difference_maxima(table_array(d))
    reports = []
    for k, (b, labels) in enumerate(zip(best.tolist(), maximizers)):
        raw = Fraction(b, d.denominator) - 1
        reports.append(
            ThetaReport(
                raw_bound=raw,
                theta_lb=max(raw, Fraction(0)),
                exact=False,
                order_m=order_of(k, d.p),
                maximizers=tuple(labels),
                convention=d.convention,
            )
        )
    return reports


def _degenerate_report(p: int, convention: str) -> ThetaReport:
    # Zero class: the unknot in a ball, bounding a disk.
    return ThetaReport(
        raw_bound=Fraction(-1),
        theta_lb=Fraction(0),
        exact=True,
        order_m=1,
        chi=1,
        rational_norm=Fraction(0),
        fibered=None,
        maximizers=tuple(range(p)),
        degenerate=True,
        convention=convention,
    )


def exact_from_bound(bound: ThetaReport, p: int) -> ThetaReport:
    """Promote a bound report to the exact report of a Floer simple knot."""
    m = bound.order_m
    chi = m * (-bound.raw_bound)  # m * (1 - RHS) with RHS = raw_bound + 1
    if chi.denominator != 1:
        raise LabelingInconsistency(
            f"chi = {chi} is not an integer (p={p}, order={m}); "
            "the class/label assignment is inconsistent"
        )
    chi = int(chi)
    return ThetaReport(
        raw_bound=bound.raw_bound,
        theta_lb=bound.theta_lb,
        exact=True,
        order_m=m,
        chi=chi,
        rational_norm=Fraction(max(0, -chi), 2 * m),
        fibered=len(bound.maximizers) == 1,
        maximizers=bound.maximizers,
        convention=bound.convention,
    )


def simple_knot_invariants(
    L: LensSpaceId | tuple[int, int],
    k: ClassLike,
    assignment: ClassAssignment = identity_assignment,
) -> ThetaReport:
    """Exact chi, rational genus and fiberedness of the simple knot in class ``k``.

    ``assignment`` maps the simple-knot parameter to a label translation; the
    default is the identity. A wrong assignment surfaces as
    :class:`LabelingInconsistency` rather than as a silent remap.
    """
    L = _as_lens(L)
    k = class_residue(k, L.p)
    d = d_all(L)
    if k == 0:
        return _degenerate_report(L.p, d.convention)
    shift = assignment(L.p, L.q, k) % L.p
    if gcd(shift, L.p) != gcd(k, L.p):
        raise LabelingInconsistency(
            f"assignment sends class {k} of order {order_of(k, L.p)} "
            f"to a translation of order {order_of(shift, L.p)}"
        )
    return exact_from_bound(theta_lower_bound(d, shift), L.p)


def is_fibered_simple(
    L: LensSpaceId | tuple[int, int],
    k: ClassLike,
    assignment: ClassAssignment = identity_assignment,
) -> bool:
    L = _as_lens(L)
    if class_residue(k, L.p) == 0:
        raise DegenerateClass("the zero class holds the unknot; fiberedness is not defined here")
    return simple_knot_invariants(L, k, assignment).fibered
