"""Integer surgeries on L-space knots in S^3 and the dual-knot Theta bound.

For an L-space knot the surgery sequence V_k equals the Alexander torsion
coefficient ``t_k = sum_{j >= 1} j * a_{k+j}``; H is only ever read through
``H_k = V_{-k}``. Spin^c labels on S^3_p(K) use the sigma identification,
under which the dual knot acts by translation by 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .core import (
    SURGERY_SIGMA,
    CorrectionTerms,
    InvalidAlexander,
    InvalidOrder,
    InvariantViolation,
    NonCoprime,
    NotLSpacePattern,
)
from .lensd import d_closed_form_p1


@dataclass(frozen=True)
class AlexanderPoly:
    """Symmetrized Alexander polynomial, coefficients ``c_{-g}, ..., c_g``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = self.coeffs
        if len(c) % 2 != 1:
            raise InvalidAlexander("need an odd number of coefficients c_{-g}..c_g")
        if len(c) > 1 and c[0] == 0:
            raise InvalidAlexander("top coefficient must be nonzero")
        if c != c[::-1]:
            raise InvalidAlexander(f"coefficients are not symmetric: {list(c)}")
        if sum(c) != 1:
            raise InvalidAlexander(f"Delta(1) = {sum(c)}, expected 1")

    @property
    def genus(self) -> int:
        return len(self.coeffs) // 2

    def coeff(self, j: int) -> int:
        g = self.genus
        return self.coeffs[j + g] if -g <= j <= g else 0

    def as_dict(self) -> dict[int, int]:
        g = self.genus
        return {j: self.coeff(j) for j in range(g, -g - 1, -1) if self.coeff(j)}

    def __str__(self):
        return ",".join(map(str, self.coeffs))


UNKNOT = AlexanderPoly((1,))


def _polydiv(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials (ascending coefficients), monic divisor.
    num = list(num)
    assert den[-1] == 1
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        c = num[shift + len(den) - 1]
        out[shift] = c
        if c:
            for j, dj in enumerate(den):
                num[shift + j] -= c * dj
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return out


def _polymul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _t_power_minus_one(n: int) -> list[int]:
    return [-1] + [0] * (n - 1) + [1]


def torus_knot_alexander(a: int, b: int) -> AlexanderPoly:
    """Alexander polynomial of T(a, b) by exact division of cyclotomic-type factors."""
    if a < 2 or b < 2:
        raise InvalidOrder(f"torus knot parameters must be >= 2, got ({a}, {b})")
    if gcd(a, b) != 1:
        raise NonCoprime(f"T({a},{b}) is not a knot: gcd = {gcd(a, b)}")
    num = _polymul(_t_power_minus_one(a * b), _t_power_minus_one(1))
    den = _polymul(_t_power_minus_one(a), _t_power_minus_one(b))
    return AlexanderPoly(tuple(_polydiv(num, den)))


def parse_alexander(text: str) -> AlexanderPoly:
    try:
        coeffs = tuple(int(tok) for tok in text.replace(" ", "").split(","))
    except ValueError:
        raise InvalidAlexander(f"cannot parse coefficients {text!r}") from None
    return AlexanderPoly(coeffs)


_TORUS_RE = re.compile(r"^\s*T\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


def parse_knot(text: str) -> AlexanderPoly:
    """Accept torus-knot shorthand ``T(a,b)`` or ``U``/``unknot``."""
    if text.strip().lower() in ("u", "unknot", "o"):
        return UNKNOT
    m = _TORUS_RE.match(text)
    if not m:
        raise InvalidAlexander(f"expected T(a,b), got {text!r}")
    return torus_knot_alexander(int(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class VSequence:
    """V_0, ..., V_g; zero beyond g."""

    values: tuple[int, ...]

    @property
    def genus(self) -> int:
        return len(self.values) - 1

    def V(self, k: int) -> int:
        if k < 0:
            raise ValueError("V_k is only stored for k >= 0; read H_{-k} instead")
        return self.values[k] if k < len(self.values) else 0

    def H(self, k: int) -> int:
        if k > 0:
            raise ValueError("H_k is only available for k <= 0, as V_{-k}")
        return self.V(-k)

    def check(self) -> VSequence:
        v = self.values
        if not v or v[-1] != 0:
            raise InvariantViolation(f"V_g must be 0, got {list(v)}")
        if any(x < 0 for x in v):
            raise InvariantViolation(f"negative entry in {list(v)}")
        for k in range(len(v) - 1):
            if v[k] - v[k + 1] not in (0, 1):
                raise InvariantViolation(f"V_{k} - V_{k+1} = {v[k] - v[k + 1]} in {list(v)}")
        return self


def check_lspace_pattern(delta: AlexanderPoly) -> None:
    nonzero = [c for c in reversed(delta.coeffs) if c]
    if nonzero[0] != 1:
        raise NotLSpacePattern(f"top coefficient is {nonzero[0]}, expected +1")
    for x, y in zip(nonzero, nonzero[1:]):
        if (x > 0) == (y > 0):
            raise NotLSpacePattern(f"nonzero coefficients do not alternate: {list(delta.coeffs)}")


def torsion_coefficients(delta: AlexanderPoly) -> VSequence:
    check_lspace_pattern(delta)
    g = delta.genus
    values = tuple(
        sum(j * delta.coeff(k + j) for j in range(1, g - k + 1)) for k in range(g + 1)
    )
    return VSequence(values).check()


def surgery_d(p: int, V: VSequence, d_ambient: Fraction | int = 0) -> CorrectionTerms:
    """Correction terms of p-surgery, labels in the sigma convention."""
    if p < 1:
        raise InvalidOrder(f"surgery coefficient must be >= 1, got {p}")
    d_ambient = Fraction(d_ambient)
    values = [
        d_ambient + d_closed_form_p1(p, i) - 2 * max(V.V(i), V.H(i - p))
        for i in range(p)
    ]
    return CorrectionTerms.from_values(values, SURGERY_SIGMA)


def dual_theta_terms(p: int, V: VSequence) -> list[Fraction]:
    """The per-label terms whose maximum bounds Theta of the dual knot."""
    if p < 1:
        raise InvalidOrder(f"surgery coefficient must be >= 1, got {p}")
    return [
        Fraction(2 * i + 1 - 2 * p, p)
        - 2 * max(V.V(i + 1), V.V(p - 1 - i))
        + 2 * max(V.V(i), V.V(p - i))
        for i in range(p)
    ]


def dual_theta_bound(p: int, V: VSequence) -> Fraction:
    """Unclamped lower bound on Theta([K']) for the dual knot of p-surgery."""
    return max(dual_theta_terms(p, V))


def is_dual_genus_minimizer(delta: AlexanderPoly, p: int) -> bool:
    """Whether the bound reaches the Seifert-surface upper bound (2g - 1)/p."""
    V = torsion_coefficients(delta)
    return dual_theta_bound(p, V) == Fraction(2 * delta.genus - 1, p)
