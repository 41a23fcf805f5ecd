"""Brute-force and cross-convention checks on the correction-term tables.

Every check returns a :class:`CheckReport`; failures are data, never
exceptions, and each names its (p, q, i) witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .core import format_rational
from .lensd import conjugation_center, d_all, d_lens
from .theta import difference_maxima, table_array

SCHEMA = "ratgenus-verify-v1"


@dataclass
class CheckReport:
    name: str
    p_max: int
    comparisons: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "p_max": self.p_max,
            "passed": self.passed,
            "comparisons": self.comparisons,
            "failures": self.failures,
        }


def _coprime_pairs(p_max: int, p_min: int = 2):
    for p in range(p_min, p_max + 1):
        for q in range(1, p):
            if gcd(p, q) == 1:
                yield p, q


def _lp1_direct(p: int, i: int) -> Fraction:
    # Deliberately not shared with lensd.
    return Fraction((2 * i - p) * (2 * i - p) - p, 4 * p)


def check_closed_form(p_max: int) -> CheckReport:
    report = CheckReport("closed_form", p_max)
    for p in range(1, p_max + 1):
        q = 1 if p > 1 else 0
        for i in range(p):
            got = d_lens((p, q), i)
            want = _lp1_direct(p, i)
            report.comparisons += 1
            if got != want:
                report.failures.append(
                    {"p": p, "q": q, "i": i, "got": format_rational(got), "want": format_rational(want)}
                )
    return report


def _multiset(d, sign: int = 1) -> tuple[int, list[int]]:
    # The table denominator is the lcm of the reduced value denominators, so
    # equal (denominator, sorted numerators) is equality of value multisets.
    return d.denominator, sorted(sign * n for n in d.numerators)


def check_orientation_reversal(p_max: int) -> CheckReport:
    report = CheckReport("orientation_reversal", p_max)
    for p, q in _coprime_pairs(p_max):
        if 2 * q > p:
            continue
        report.comparisons += 1
        if _multiset(d_all((p, p - q))) != _multiset(d_all((p, q)), -1):
            report.failures.append({"p": p, "q": q, "q_reversed": p - q})
    return report


def check_homeo_invariance(p_max: int) -> CheckReport:
    report = CheckReport("homeo_invariance", p_max)
    for p, q in _coprime_pairs(p_max):
        q_inv = pow(q, -1, p)
        if q_inv < q:
            continue
        report.comparisons += 1
        if _multiset(d_all((p, q))) != _multiset(d_all((p, q_inv))):
            report.failures.append({"p": p, "q": q, "q_inverse": q_inv})
    return report


def check_conjugation(p_max: int) -> CheckReport:
    """Entrywise affine involution on each table, plus k -> -k symmetry of the bound."""
    report = CheckReport("conjugation", p_max)
    for p, q in _coprime_pairs(p_max):
        d = d_all((p, q))
        report.comparisons += 1
        if conjugation_center(d) is None:
            report.failures.append({"p": p, "q": q, "reason": "no involution i -> c - i"})
        # Maxima share the table denominator, so integer equality is exact.
        raw = difference_maxima(table_array(d))[0].tolist()
        for k in range(1, p):
            report.comparisons += 1
            if raw[k] != raw[p - k]:
                report.failures.append({"p": p, "q": q, "k": k, "reason": "bound not symmetric under k -> p - k"})
    return report


_REFERENCE = {
    (2, 1): ("1/4", "-1/4"),
    (3, 1): ("1/2", "-1/6", "-1/6"),
    (3, 2): ("1/6", "1/6", "-1/2"),
    (5, 2): ("2/5", "2/5", "-2/5", "0/1", "-2/5"),
}


def reference_table() -> dict[tuple[int, int], tuple[Fraction, ...]]:
    """Hand-computed tables, in label order i = 0..p-1."""
    return {pq: tuple(Fraction(v) for v in row) for pq, row in _REFERENCE.items()}


def check_reference_table() -> CheckReport:
    report = CheckReport("reference_table", 5)
    for (p, q), want in reference_table().items():
        got = d_all((p, q)).values
        for i, (g, w) in enumerate(zip(got, want)):
            report.comparisons += 1
            if g != w:
                report.failures.append(
                    {"p": p, "q": q, "i": i, "got": format_rational(g), "want": format_rational(w)}
                )
    return report


def run_all(p_max: int) -> list[CheckReport]:
    return [
        check_closed_form(p_max),
        check_orientation_reversal(max(p_max, 2)),
        check_homeo_invariance(max(p_max, 2)),
        check_conjugation(max(p_max, 2)),
        check_reference_table(),
    ]


def verification_envelope(reports: list[CheckReport]) -> dict:
    return {
        "schema": SCHEMA,
        "passed": all(r.passed for r in reports),
        "checks": [r.to_json_dict() for r in reports],
    }
