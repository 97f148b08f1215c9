import pytest

from posets.intervals import (
    OrderView,
    bruhat_view,
    interval,
    labeled_isomorphic,
    maximal_chains,
    poincare_polynomial,
    quotient_poincare,
    rank_slices,
)
from posets.polynomial import IntPolynomial, is_palindromic
from utils.errors import IntervalError


def test_poincare_of_a_non_palindromic_element(a3_middle):
    (x,) = a3_middle.by_length()[3]
    poly = poincare_polynomial(a3_middle, x)
    assert poly.to_list() == [1, 1, 2, 1]
    assert not poly.is_palindromic()


def test_poincare_of_the_f4_top(f4_poset):
    poly = poincare_polynomial(f4_poset, f4_poset.top)
    assert poly.degree == 15
    assert poly.is_palindromic()
    assert quotient_poincare(f4_poset).evaluate(1) == 24


def test_maximal_chains_in_the_box_lattice(a3_middle):
    view = bruhat_view(a3_middle)
    chains = maximal_chains(view, 0, a3_middle.top)
    assert len(chains) == 2
    assert all(len(chain) == 5 for chain in chains)


def test_bruhat_intervals_are_graded(f4_poset):
    view = bruhat_view(f4_poset)
    found = interval(view, 0, f4_poset.top)
    assert found.graded
    assert found.slice_sizes() == [len(level) for level in rank_slices(f4_poset, f4_poset.top)]


def test_ungraded_interval_carries_a_witness():
    # 0 < 1 < 2 < 3 together with 0 < 3 directly
    lower = {0: (), 1: (0,), 2: (1,), 3: (2, 0)}
    order = {(a, b) for a in range(4) for b in range(4) if a <= b}
    view = OrderView((0, 1, 2, 3), lower, lambda a, b: (a, b) in order, name="toy")
    found = interval(view, 0, 3)
    assert not found.graded
    short, long = found.witness
    assert len(short) != len(long)
    with pytest.raises(IntervalError):
        found.slices()


def test_interval_needs_comparable_ends(a3_middle):
    level = a3_middle.by_length()[2]
    with pytest.raises(IntervalError):
        interval(bruhat_view(a3_middle), level[0], level[1])


def test_labeled_isomorphism_of_lower_intervals(a3_middle):
    view = bruhat_view(a3_middle)
    left, right = a3_middle.by_length()[2]
    assert labeled_isomorphic(view.digraph(a3_middle.lower_ideal(left)), view.digraph(a3_middle.lower_ideal(left)))
    assert not labeled_isomorphic(
        view.digraph(a3_middle.lower_ideal(left)), view.digraph(a3_middle.lower_ideal(right))
    )


def test_polynomial_arithmetic():
    p = IntPolynomial((1, 1))
    assert (p * p).to_list() == [1, 2, 1]
    assert (p - p).is_zero
    assert IntPolynomial((1, 0, 0)).degree == 0
    assert IntPolynomial.from_exponents([0, 2, 2]).to_list() == [1, 0, 2]
    assert p.shift(2).to_list() == [0, 0, 1, 1]
    assert (p * p).evaluate(2) == 9
    assert IntPolynomial((1, -2, 0, 3)).format("q") == "1 - 2q + 3q^3"
    assert is_palindromic([1, 3, 1])
    assert IntPolynomial.one().is_zero_one
    assert not IntPolynomial((2,)).is_zero_one
