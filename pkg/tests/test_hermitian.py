from itertools import combinations

import pytest

from hermitian.block import singular_block
from hermitian.ordering import classify_singular, mu_ordering, order_view
from hermitian.pairs import (
    EMPTY,
    block_nonempty,
    copies_for,
    dprime,
    has_adjacent_pair,
    is_hermitian,
    reduced_diagram,
    require_hermitian,
    split_rank,
    strongly_orthogonal,
    wallach_block,
    wallach_constant,
)
from kl.table import build_kl_table
from reports.models import Method, Ordering
from roots.diagram import canonical_form, dynkin
from utils.errors import ConfigurationError, DiagramError
from weyl.poset import generate_coset_poset, quotient_size
from weyl.singular import antidominant_data, singular_subposet


def pair(letter, rank, node):
    return require_hermitian(dynkin(letter, rank, crossed=[node]))


@pytest.mark.parametrize(
    "letter, rank, node",
    [("E", 7, 7), ("E", 6, 1), ("C", 3, 3), ("B", 3, 1), ("D", 5, 1), ("D", 5, 4), ("D", 5, 5), ("A", 4, 2)],
)
def test_hermitian_pairs(letter, rank, node):
    hs = is_hermitian(dynkin(letter, rank, crossed=[node]))
    assert hs is not None
    assert hs.index == node


@pytest.mark.parametrize("letter, rank, node", [("E", 7, 1), ("F", 4, 1), ("B", 3, 3), ("G", 2, 1)])
def test_non_hermitian_pairs(letter, rank, node):
    assert is_hermitian(dynkin(letter, rank, crossed=[node])) is None
    with pytest.raises(DiagramError):
        require_hermitian(dynkin(letter, rank, crossed=[node]))


def test_pair_names():
    assert pair("E", 7, 7).name == "(E7,E6)"
    assert pair("A", 3, 2).name == "(A3,A1xA1)"
    assert pair("D", 5, 1).levi_name == "D4"


def test_strongly_orthogonal_roots():
    assert strongly_orthogonal(pair("A", 3, 2)).roots == ((1, 1, 1), (0, 1, 0))
    assert split_rank(pair("A", 3, 2)) == 2
    assert split_rank(pair("E", 7, 7)) == 3
    assert split_rank(pair("E", 6, 1)) == 2
    assert split_rank(pair("D", 5, 1)) == 2


def test_reduced_diagrams_of_e7():
    hs = pair("E", 7, 7)
    assert reduced_diagram(hs, 0) == hs.diagram
    assert reduced_diagram(hs, 1).name == "D6"
    assert reduced_diagram(hs, 2).name == "A1"
    assert not reduced_diagram(hs, 3).nodes
    with pytest.raises(DiagramError):
        reduced_diagram(hs, 4)


def test_dprime_for_non_simply_laced_pairs():
    reduced, node, copies = dprime(pair("C", 6, 6), 1, [1])
    assert canonical_form(reduced)[0] == "D5"
    assert node == 5
    assert copies == 1
    assert copies_for(pair("C", 6, 6), [6]) == 2
    assert copies_for(pair("B", 4, 1), [2]) == 2
    assert copies_for(pair("B", 4, 1), [4]) == 1


@pytest.mark.parametrize(
    "letter, rank, node, singular, expected",
    [
        ("D", 5, 1, [4, 5], True),
        ("D", 5, 1, [2, 4], False),
        ("B", 4, 1, [2, 4], False),
        ("E", 7, 7, [2, 5, 7], True),
        ("E", 7, 7, [1, 4, 6], False),
        ("A", 3, 2, [1, 2], False),
        ("A", 3, 2, [], True),
    ],
)
def test_block_nonempty(letter, rank, node, singular, expected):
    assert block_nonempty(dynkin(letter, rank, crossed=[node]), singular) is expected


def test_wallach_constants():
    assert wallach_constant(pair("E", 7, 7)) == 4
    assert wallach_constant(pair("E", 6, 1)) == 3
    assert wallach_constant(pair("D", 5, 1)) == 3
    assert wallach_constant(pair("D", 5, 5)) == 2
    assert wallach_constant(pair("A", 3, 2)) == 1
    with pytest.raises(ConfigurationError):
        wallach_constant(pair("B", 3, 1))


def test_wallach_blocks():
    hs = pair("A", 3, 2)
    block = wallach_block(hs, 1)
    assert block.singular == frozenset({2})
    assert block.weight.as_ints() == (0, -1, 0)
    assert wallach_block(hs, 0).singular == frozenset()
    with pytest.raises(DiagramError):
        wallach_block(hs, 3)
    assert wallach_block(pair("E", 7, 7), 1).singular == frozenset({1})


def test_antidominant_data_is_antidominant():
    rs = pair("E", 7, 7).rs
    data = antidominant_data(rs, rs.fundamental_weight(7) * -4)
    assert all(c <= 0 for c in data.weight)
    assert data.singular == frozenset({1})


@pytest.mark.parametrize("poset_name", ["a3_middle", "d4_poset"])
def test_mu_ordering_is_bruhat_for_regular_blocks(request, poset_name):
    poset = request.getfixturevalue(poset_name)
    sub = mu_ordering(singular_subposet(poset, ()), build_kl_table(poset))
    assert set(sub.mu_covers) == set(sub.bruhat_covers)
    assert len(sub) == len(poset)


def test_singular_subposet_of_a3(a3_middle):
    sub = singular_subposet(a3_middle, [2])
    assert len(sub) == 2
    assert sub.bruhat_covers == ((sub.members[0], sub.members[1]),)
    assert sub.is_dashed(*sub.bruhat_covers[0])


def test_bruhat_and_mu_views_disagree_only_on_comparisons(a3_middle):
    sub = mu_ordering(singular_subposet(a3_middle, [2]))
    bruhat = order_view(sub, Ordering.BRUHAT)
    mu = order_view(sub, Ordering.MU)
    low, high = sub.members
    assert bruhat.leq(low, high)
    assert mu.leq(low, high) == bool(sub.mu_covers)


def test_e7_block_without_kl_polynomials():
    report = singular_block(dynkin("E", 7, crossed=[7], singular=[1]))
    assert report.nonempty
    assert report.size == 12
    assert report.bruhat.kostant_count == 8
    assert report.mu is None
    assert report.reduced == "(D6,D5)"
    assert report.copies == 1


def test_empty_blocks_are_reported():
    report = singular_block(dynkin("E", 7, crossed=[7]), singular=[1, 3])
    assert not report.nonempty
    assert report.size == 0


@pytest.mark.slow
def test_f4_singular_block(f4_poset):
    report = singular_block(dynkin("F", 4, crossed=[1], singular=[4]), poset=f4_poset)
    assert report.size == 6
    assert report.reduced is None

    position = {x: i + 1 for i, x in enumerate(report.members)}
    mu_covers = sorted([position[lo], position[hi]] for lo, hi in report.mu_covers)
    assert mu_covers == [[1, 2], [2, 3], [2, 4], [3, 5], [4, 5], [5, 6]]

    table = build_kl_table(f4_poset)
    third, fourth = report.members[2], report.members[3]
    assert table.ext_dims([4], third, fourth)[1] == 0

    mu_kostant = {v.position for v in report.mu.verdicts if v.kostant}
    bruhat_kostant = {v.position for v in report.bruhat.verdicts if v.kostant}
    assert {4, 6} <= mu_kostant
    assert not {4, 6} & bruhat_kostant


def test_palindromic_singular_classification(a3_middle):
    sub = singular_subposet(a3_middle, [2])
    report = classify_singular(sub, Ordering.BRUHAT, Method.PALINDROMIC)
    assert report.size == 2
    assert report.criterion == "rational smoothness criterion"
    assert report.kostant_count == 2


SMALL_TYPES = (
    [("A", n) for n in range(1, 8)]
    + [("B", n) for n in range(2, 8)]
    + [("C", n) for n in range(3, 8)]
    + [("D", n) for n in range(4, 8)]
    + [("E", 6), pytest.param("E", 7, marks=pytest.mark.slow)]
)


def closed_form_reduction(kind, index, positions):
    """Expected reduced pair D' and copy count of a nonempty block, by type and |J|."""
    letter, n, t = kind.letter, kind.rank, len(positions)
    target = None
    copies = 1
    if letter == "A":
        if index - t >= 1 and n - index - t >= 0:
            target = ("A", n - 2 * t, index - t)
    elif letter == "B":
        copies = 2 if any(p < n for p in positions) else 1
    elif letter == "C":
        copies = 2 if n in positions else 1
        m = n - 2 * t
        if m == 1:
            target = ("A", 1, 1)
        elif m >= 2:
            target = ("D", m + 1, m + 1)
    elif letter == "D" and index == 1:
        if t == 1:
            target = ("A", 1, 1)
    elif letter == "D":
        m = n - 2 * t
        if m == 2:
            target = ("A", 1, 1)
        elif m >= 3:
            target = ("D", m, m)
    elif letter == "E" and n == 6:
        if t == 1:
            target = ("A", 5, 5)
    elif letter == "E":
        target = {1: ("D", 6, 1), 2: ("A", 1, 1)}.get(t)
    diagram = EMPTY if target is None else dynkin(target[0], target[1], crossed=[target[2]])
    return diagram, copies


@pytest.mark.parametrize("letter, rank", SMALL_TYPES)
def test_dprime_matches_closed_form_for_every_nonempty_block(letter, rank):
    for node in range(1, rank + 1):
        hs = is_hermitian(dynkin(letter, rank, crossed=[node]))
        if hs is None:
            continue
        poset = generate_coset_poset(hs.diagram)
        for size in range(1, rank + 1):
            for singular in combinations(hs.diagram.nodes, size):
                if has_adjacent_pair(hs.diagram, singular) or not block_nonempty(hs.diagram, singular):
                    continue
                assert size <= split_rank(hs)
                positions = [hs.kind.index(v) for v in singular]
                expected, expected_copies = closed_form_reduction(hs.kind, hs.index, positions)
                reduced, _, copies = dprime(hs, size, singular)
                where = f"{hs.name} J={positions}"
                assert canonical_form(reduced)[:2] == canonical_form(expected)[:2], where
                assert copies == expected_copies, where
                block = len(singular_subposet(poset, singular))
                assert block == quotient_size(expected) * copies, where


def test_c_blocks_with_the_long_root_and_a_short_root():
    hs = pair("C", 6, 6)
    assert block_nonempty(hs.diagram, [1, 6])
    reduced, node, copies = dprime(hs, 2, [1, 6])
    assert canonical_form(reduced)[:2] == canonical_form(dynkin("D", 3, crossed=[3]))[:2]
    assert copies == 2
    assert len(singular_subposet(generate_coset_poset(hs.diagram), [1, 6])) == 8


@pytest.mark.parametrize("rank", range(2, 8))
def test_b_blocks_with_two_singular_roots_are_empty(rank):
    diagram = dynkin("B", rank, crossed=[1])
    for singular in combinations(diagram.nodes, 2):
        assert not block_nonempty(diagram, singular)
