import random
from itertools import combinations

import pytest

from roots.diagram import connected_subsets, dynkin
from utils.errors import PosetTooLargeError
from weyl.poset import (
    full_group,
    generate_coset_poset,
    inverse,
    multiply,
    quotient_size,
    require_size,
    to_group,
)


def subword_ideal(group, w):
    """Everything reachable from a subword of one reduced word of w."""
    word = group.word(w)
    found = set()
    for size in range(len(word) + 1):
        for picked in combinations(range(len(word)), size):
            found.add(group.element([word[i] for i in picked]))
    return found


@pytest.mark.parametrize(
    "letter, rank, crossed, size",
    [("A", 3, [2], 6), ("F", 4, [1], 24), ("D", 4, [1, 3], 32), ("A", 3, [1, 3], 12), ("E", 6, [1], 27), ("E", 7, [7], 56)],
)
def test_quotient_sizes(letter, rank, crossed, size):
    diagram = dynkin(letter, rank, crossed=crossed)
    assert quotient_size(diagram) == size
    assert len(generate_coset_poset(diagram)) == size


def test_f4_levels(f4_poset):
    assert f4_poset.max_length == 15
    assert [len(level) for level in f4_poset.by_length()] == [1, 1, 1, 1] + [2] * 8 + [1, 1, 1, 1]


def test_lengths_match_reduced_words(f4_poset):
    for x in f4_poset:
        assert len(f4_poset.word(x)) == f4_poset.lengths[x]
        assert f4_poset.element(f4_poset.word(x)) == x


def test_moves_out_of_the_quotient(a3_middle):
    # s1 fixes lambda0 = omega2, so e*s1 leaves ^S W
    assert a3_middle.element([1]) is None
    assert a3_middle.element([2, 2]) == 0


@pytest.mark.parametrize("group_name", ["a3_group", "b3_group"])
def test_bruhat_matches_subword_property_in_the_group(request, group_name):
    group = request.getfixturevalue(group_name)
    for w in group:
        expected = subword_ideal(group, w)
        assert set(group.lower_ideal(w)) == expected
        for x in group:
            assert group.bruhat_leq(x, w) == (x in expected)


@pytest.mark.parametrize("letter, crossed", [("A", [2]), ("B", [1]), ("B", [3])])
def test_quotient_order_is_induced_from_the_group(letter, crossed):
    diagram = dynkin(letter, 3, crossed=crossed)
    group = full_group(diagram)
    poset = generate_coset_poset(diagram)
    ideals = {w: subword_ideal(group, to_group(group, poset, w)) for w in poset}
    for w in poset:
        for x in poset:
            assert poset.bruhat_leq(x, w) == (to_group(group, poset, x) in ideals[w])


def test_covers_are_length_one_steps(d4_poset):
    for lo, hi, _ in d4_poset.covers():
        assert d4_poset.lengths[hi] == d4_poset.lengths[lo] + 1
        assert d4_poset.bruhat_leq(lo, hi)


def test_f4_upper_cover_labels(f4_poset):
    (x,) = f4_poset.by_length()[3]
    assert {label for _, label in f4_poset.upper_covers(x)} == {2, 4}


def test_phi_has_the_subset_as_support(f4_poset):
    for subset in connected_subsets(f4_poset.diagram, containing=1):
        assert f4_poset.support(f4_poset.phi(subset)) == frozenset(subset)
    assert f4_poset.support(f4_poset.top) == frozenset({1, 2, 3, 4})


def sampled_parabolics(count, seed=20240607, max_size=3000):
    """Seeded (type, crossed) draws over A-G of rank at most 6 with small quotients."""
    rng = random.Random(seed)
    ranks = {"A": range(1, 7), "B": range(2, 7), "C": range(2, 7), "D": range(4, 7), "E": [6], "F": [4], "G": [2]}
    drawn = []
    while len(drawn) < count:
        letter = rng.choice(sorted(ranks))
        rank = rng.choice(list(ranks[letter]))
        crossed = rng.sample(range(1, rank + 1), rng.randint(1, rank))
        diagram = dynkin(letter, rank, crossed=crossed)
        if quotient_size(diagram) <= max_size:
            drawn.append(diagram)
    return drawn


@pytest.mark.parametrize("diagram", sampled_parabolics(20), ids=lambda d: f"{d.name}{sorted(d.crossed)}")
def test_top_element_has_full_support(diagram):
    poset = generate_coset_poset(diagram)
    assert poset.support(poset.top) == frozenset(diagram.nodes)


def test_group_helpers(a3_group):
    for y in a3_group:
        assert multiply(a3_group, y, inverse(a3_group, y)) == 0
    assert len(a3_group) == 24
    assert a3_group.max_length == 6


def test_large_quotients_are_refused(isolated_settings):
    e8 = dynkin("E", 8, crossed=[4])
    assert quotient_size(e8) == 483840
    with pytest.raises(PosetTooLargeError):
        require_size(e8, allow_large=False)
    isolated_settings.max_elements = 100000
    with pytest.raises(PosetTooLargeError):
        require_size(e8, allow_large=True)


def test_generation_respects_the_cap():
    with pytest.raises(PosetTooLargeError):
        generate_coset_poset(dynkin("E", 6, crossed=[4]), max_elements=100)


def test_descriptor_is_plain_data(a3_middle):
    data = a3_middle.descriptor()
    assert data["elements"][0] == {"id": 0, "len": 0, "key": [0, 1, 0]}
    assert len(data["covers"]) == 6
