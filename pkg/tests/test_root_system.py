import pytest

from roots.diagram import dynkin
from roots.system import build_root_system, extended_attach
from utils.errors import DimensionError, WeightError


@pytest.mark.parametrize(
    "letter, rank, count",
    [("A", 3, 6), ("B", 3, 9), ("C", 4, 16), ("D", 4, 12), ("E", 6, 36), ("E", 7, 63), ("F", 4, 24), ("G", 2, 6)],
)
def test_positive_root_counts(letter, rank, count):
    assert len(build_root_system(dynkin(letter, rank)).positive_roots) == count


def test_highest_roots():
    assert build_root_system(dynkin("E", 7)).highest_root == (2, 2, 3, 4, 3, 2, 1)
    assert build_root_system(dynkin("A", 3)).highest_root == (1, 1, 1)
    assert build_root_system(dynkin("F", 4)).highest_root == (2, 3, 4, 2)


def test_short_roots():
    b3 = build_root_system(dynkin("B", 3))
    assert len(b3.short_roots) == 3
    assert b3.is_short((0, 0, 1))
    assert not b3.is_short((1, 0, 0))
    a3 = build_root_system(dynkin("A", 3))
    assert all(a3.is_short(root) for root in a3.positive_roots)


def test_simple_reflection_on_weights():
    rs = build_root_system(dynkin("A", 2))
    omega1 = rs.fundamental_weight(1)
    assert rs.reflect(omega1, 1).coords == (-1, 1)
    assert rs.reflect(rs.reflect(omega1, 1), 1) == omega1


def test_root_coordinates_of_rho():
    rs = build_root_system(dynkin("A", 2))
    assert rs.root_coordinates(rs.rho) == (1, 1)


@pytest.mark.parametrize(
    "letter, rank, node, dimension",
    [("A", 2, 1, 3), ("A", 3, 2, 6), ("E", 6, 1, 27), ("E", 7, 7, 56), ("B", 3, 1, 7), ("B", 3, 3, 8)],
)
def test_weyl_dimension_of_fundamental_modules(letter, rank, node, dimension):
    diagram = dynkin(letter, rank)
    rs = build_root_system(diagram)
    assert rs.weyl_dimension(diagram.nodes, rs.fundamental_weight(node)) == dimension


def test_weyl_dimension_needs_levi_dominance():
    diagram = dynkin("A", 2)
    rs = build_root_system(diagram)
    with pytest.raises(WeightError):
        rs.weyl_dimension(diagram.nodes, -rs.fundamental_weight(1))


def test_mixing_ranks_is_an_error():
    a2 = build_root_system(dynkin("A", 2))
    a3 = build_root_system(dynkin("A", 3))
    with pytest.raises(DimensionError):
        a2.zero_weight() + a3.zero_weight()
    with pytest.raises(DimensionError):
        a2.weight((1, 2, 3))


def test_extended_attach_for_highest_roots():
    e7 = dynkin("E", 7, crossed=[7])
    rs = build_root_system(e7)
    extended = extended_attach(rs, rs.highest_root, e7)
    assert extended.neighbours(extended.affine_node) == frozenset({1})

    a3 = dynkin("A", 3, crossed=[2])
    rs = build_root_system(a3)
    extended = extended_attach(rs, rs.highest_root, a3)
    assert extended.neighbours(extended.affine_node) == frozenset({1, 3})
