from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from ratgenus.core import DegenerateClass, HomologyClass, LabelingInconsistency, order_of
from ratgenus.lensd import d_all
from ratgenus.theta import (
    is_fibered_simple,
    simple_knot_invariants,
    theta_all_classes,
    theta_lower_bound,
)


def lp1(p, i):
    return Fraction((2 * i - p) ** 2 - p, 4 * p)


def brute_lp1_bound(p, k):
    """(max difference, maximizers) by enumerating every label, closed-form values."""
    diffs = [lp1(p, (s + k) % p) - lp1(p, s) for s in range(p)]
    best = max(diffs)
    return best, tuple(s for s, v in enumerate(diffs) if v == best)


@st.composite
def lens_spaces(draw, p_max=60):
    p = draw(st.integers(2, p_max))
    q = draw(st.integers(1, p - 1).filter(lambda q: gcd(p, q) == 1))
    return p, q


def test_l51_class2():
    assert [lp1(5, i) for i in range(5)] == [1, Fraction(1, 5), Fraction(-1, 5), Fraction(-1, 5), Fraction(1, 5)]
    r = theta_lower_bound(d_all((5, 1)), 2)
    assert r.raw_bound == Fraction(1, 5)
    assert r.theta_lb == Fraction(1, 5)
    assert r.maximizers == (3,)
    assert not r.exact and r.chi is None and r.rational_norm is None and r.fibered is None
    assert brute_lp1_bound(5, 2) == (Fraction(6, 5), (3,))


def test_zero_class():
    for pq in [(7, 3), (12, 5), (2, 1)]:
        r = theta_lower_bound(d_all(pq), 0)
        assert r.raw_bound == -1
        assert r.theta_lb == 0
        assert r.maximizers == tuple(range(pq[0]))


def test_desk_scale_quarter_p():
    # Maximal difference k(p - k)/p = 25, so Theta >= 24 in L(100, 1).
    r = theta_lower_bound(d_all((100, 1)), 50)
    assert r.raw_bound + 1 == Fraction(50 * 50, 100) == 25
    assert r.raw_bound == 24
    assert r.theta_lb == 24


def test_accepts_homology_class():
    d = d_all((5, 1))
    assert theta_lower_bound(d, HomologyClass.of(7, 5)) == theta_lower_bound(d, 2)


@pytest.mark.parametrize("p", [2, 3, 7, 12, 31])
def test_lp1_closed_form_against_brute_force(p):
    d = d_all((p, 1))
    for k in range(p):
        best, maximizers = brute_lp1_bound(p, k)
        r = theta_lower_bound(d, k)
        assert r.raw_bound + 1 == best == Fraction(k * (p - k), p)
        assert r.maximizers == maximizers


@settings(max_examples=40)
@given(lens_spaces())
def test_vectorized_engine_matches_scalar(pq):
    d = d_all(pq)
    assert theta_all_classes(d) == [theta_lower_bound(d, k) for k in range(pq[0])]


@given(lens_spaces())
def test_bound_symmetric_under_negation(pq):
    p = pq[0]
    reports = theta_all_classes(d_all(pq))
    for k in range(1, p):
        assert reports[k].raw_bound == reports[p - k].raw_bound


@given(lens_spaces())
def test_clamping(pq):
    for r in theta_all_classes(d_all(pq)):
        assert r.theta_lb >= 0
        assert r.theta_lb == max(r.raw_bound, 0)


@pytest.mark.parametrize(
    "L, k, rhs, m, chi, norm",
    [
        ((5, 1), 1, Fraction(4, 5), 5, 1, Fraction(0)),
        ((5, 1), 2, Fraction(6, 5), 5, -1, Fraction(1, 10)),
        ((4, 1), 2, Fraction(1), 2, 0, Fraction(0)),
    ],
)
def test_simple_knot_examples(L, k, rhs, m, chi, norm):
    r = simple_knot_invariants(L, k)
    assert r.raw_bound + 1 == rhs
    assert r.exact
    assert r.order_m == m
    assert r.chi == chi
    assert r.rational_norm == norm
    assert r.theta == 2 * norm


def test_simple_knot_degenerate_class():
    r = simple_knot_invariants((9, 2), 0)
    assert r.degenerate and r.exact
    assert r.chi == 1 and r.theta == 0 and r.theta_lb == 0
    assert r.fibered is None
    assert r.maximizers == tuple(range(9))


@settings(max_examples=40)
@given(lens_spaces())
def test_simple_knot_report_invariants(pq):
    p = pq[0]
    for k in range(1, p):
        r = simple_knot_invariants(pq, k)
        m = order_of(k, p)
        assert r.order_m == m
        assert r.chi == m * (1 - (r.raw_bound + 1))
        assert r.chi <= 1
        assert r.rational_norm == Fraction(max(0, -r.chi), 2 * m)
        assert 2 * r.rational_norm >= r.theta_lb
        if r.chi <= 0:
            assert 2 * r.rational_norm == r.theta_lb
        assert r.fibered == (len(r.maximizers) == 1)


@given(lens_spaces())
def test_core_class_bounds_a_disk(pq):
    r = simple_knot_invariants(pq, 1)
    assert r.chi == 1 and r.theta == 0 and r.fibered


@pytest.mark.parametrize("L, k", [((2, 1), 1), ((5, 1), 2)])
def test_fibered_examples(L, k):
    assert is_fibered_simple(L, k) is True


@pytest.mark.parametrize("p", [2, 5, 11])
def test_fibered_zero_class_is_degenerate(p):
    with pytest.raises(DegenerateClass):
        is_fibered_simple((p, 1), 0)


def test_assignment_configuration_point():
    # A unit multiple of the class keeps the integrality gate satisfied.
    r = simple_knot_invariants((7, 3), 2, assignment=lambda p, q, k: 3 * k)
    assert r.exact
    with pytest.raises(LabelingInconsistency):
        simple_knot_invariants((12, 5), 1, assignment=lambda p, q, k: 2 * k)
