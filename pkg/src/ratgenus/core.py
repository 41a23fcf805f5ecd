"""Exact rationals, lens-space identifiers and Spin^c / homology bookkeeping."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

# All correction terms and bounds are plain Fractions: arbitrary precision,
# always in lowest terms, positive denominator.
ExactRational = Fraction

RECURSION = "recursion"
SURGERY_SIGMA = "surgery-sigma"
CONVENTIONS = (RECURSION, SURGERY_SIGMA)

_RATIONAL_RE = re.compile(r"^-?[0-9]+/[1-9][0-9]*$")


class RatGenusError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RatGenusError):
    """The caller asked for something outside the domain of an operation."""


class InvalidOrder(DomainError):
    pass


class NonCoprime(DomainError):
    pass


class DegenerateClass(DomainError):
    pass


class InvalidAlexander(DomainError):
    pass


class NotLSpacePattern(DomainError):
    pass


class InternalInvariantError(RatGenusError):
    """A computed object broke an invariant that should hold by construction."""


class LabelingInconsistency(InternalInvariantError):
    pass


class InvariantViolation(InternalInvariantError):
    pass


def format_rational(x: Fraction | int) -> str:
    """Serialize as ``"num/den"`` in lowest terms (``"0/1"`` for zero)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a num/den rational: {text!r}")
    value = Fraction(text)
    if format_rational(value) != text:
        raise ValueError(f"rational not in lowest terms: {text!r}")
    return value


@dataclass(frozen=True)
class LensSpaceId:
    """The lens space L(p, q); ``LensSpaceId(1, 0)`` is S^3."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1:
            raise InvalidOrder(f"p must be >= 1, got {self.p}")
        if self.p == 1:
            if self.q != 0:
                raise ValueError("S^3 is represented as (1, 0)")
        elif not 0 <= self.q < self.p:
            raise ValueError(f"q must lie in [0, {self.p}), got {self.q}")
        elif gcd(self.p, self.q) != 1:
            raise NonCoprime(f"gcd({self.p}, {self.q}) != 1")

    def __str__(self):
        return f"L({self.p},{self.q})"


def normalize_lens(p: int, q: int) -> LensSpaceId:
    if p <= 0:
        raise InvalidOrder(f"p must be >= 1, got {p}")
    if p == 1:
        return LensSpaceId(1, 0)
    q %= p
    if gcd(p, q) != 1:
        raise NonCoprime(f"L({p},{q}): gcd(p, q) = {gcd(p, q)}")
    return LensSpaceId(p, q)


def _check_modulus(p: int) -> None:
    if p < 1:
        raise InvalidOrder(f"modulus must be >= 1, got {p}")


@dataclass(frozen=True)
class HomologyClass:
    """Residue ``k`` mod ``p`` in H_1 = Z/p. Use :meth:`of` to reduce input."""

    k: int
    p: int

    @classmethod
    def of(cls, k: int, p: int) -> HomologyClass:
        _check_modulus(p)
        return cls(k % p, p)

    def __neg__(self):
        return HomologyClass((-self.k) % self.p, self.p)


@dataclass(frozen=True)
class SpinCLabel:
    value: int
    p: int
    convention: str = RECURSION

    @classmethod
    def of(cls, value: int, p: int, convention: str = RECURSION) -> SpinCLabel:
        _check_modulus(p)
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown labeling convention {convention!r}")
        return cls(value % p, p, convention)

    def __add__(self, a: HomologyClass | int) -> SpinCLabel:
        k = a.k if isinstance(a, HomologyClass) else a
        return SpinCLabel((self.value + k) % self.p, self.p, self.convention)


ClassLike = Union[HomologyClass, int]


def class_residue(a: ClassLike, p: int) -> int:
    if isinstance(a, HomologyClass):
        if a.p != p:
            raise ValueError(f"class lives in Z/{a.p}, expected Z/{p}")
        return a.k
    return a % p


def order_of(a: ClassLike, p: int) -> int:
    """Order of the class in Z/p, i.e. ``p / gcd(p, k)`` (1 for the zero class)."""
    _check_modulus(p)
    return p // gcd(p, class_residue(a, p))


@dataclass(frozen=True)
class CorrectionTerms:
    """The function s -> d(Y, s) on Z/p labels.

    Values are held as integer numerators over one shared denominator so that
    difference maximization stays in integer arithmetic; ``values`` gives the
    Fractions.
    """

    p: int
    numerators: tuple[int, ...]
    denominator: int
    convention: str = RECURSION

    def __post_init__(self):
        if len(self.numerators) != self.p:
            raise ValueError(f"expected {self.p} entries, got {len(self.numerators)}")
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown labeling convention {self.convention!r}")

    @classmethod
    def from_values(cls, values: Sequence[Fraction | int], convention: str = RECURSION) -> CorrectionTerms:
        fracs = [Fraction(v) for v in values]
        _check_modulus(len(fracs))
        den = lcm(*(f.denominator for f in fracs))
        nums = tuple(f.numerator * (den // f.denominator) for f in fracs)
        return cls.scaled(nums, den, convention)

    @classmethod
    def scaled(cls, numerators: Iterable[int], denominator: int, convention: str = RECURSION) -> CorrectionTerms:
        """Build from numerators over ``denominator``, reducing the shared factor."""
        nums = tuple(numerators)
        g = gcd(denominator, *nums)
        if g > 1:
            nums = tuple(n // g for n in nums)
            denominator //= g
        return cls(len(nums), nums, denominator, convention)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.denominator) for n in self.numerators)

    def __getitem__(self, label: int) -> Fraction:
        return Fraction(self.numerators[label % self.p], self.denominator)

    def __len__(self):
        return self.p

    def multiset(self) -> list[Fraction]:
        return sorted(self.values)
