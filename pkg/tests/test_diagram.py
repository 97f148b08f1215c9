import pytest

from roots.diagram import (
    Bond,
    MarkedDiagram,
    bourbaki_relabel,
    canonical_form,
    connected_subsets,
    dual_diagram,
    dynkin,
    parse_diagram,
    simply_laced_cover,
    subdiagram,
)
from utils.errors import DiagramError


def test_dynkin_names_and_levi():
    f4 = dynkin("F", 4, crossed=[1])
    assert f4.name == "F4"
    assert f4.levi == frozenset({2, 3, 4})
    assert dynkin("E", 7).name == "E7"
    assert dynkin("D", 4).dynkin_type().letter == "D"


def test_letter_aliases_resolve_for_f4():
    diagram = parse_diagram({"type": "F4", "crossed": ["a"], "singular": ["d"]})
    assert diagram.crossed == frozenset({1})
    assert diagram.singular == frozenset({4})
    assert diagram.label(2) == "b"


def test_parse_accepts_bare_letter_with_rank():
    diagram = parse_diagram({"type": "A", "rank": 5, "crossed": [3]})
    assert diagram.name == "A5"
    assert diagram.crossed == frozenset({3})


@pytest.mark.parametrize(
    "source",
    [
        {"type": "E5"},
        {"type": "G3"},
        {"type": "A3", "crossed": [7]},
        "not json",
        {"rank": 3},
    ],
)
def test_malformed_diagrams_are_rejected(source):
    with pytest.raises(DiagramError):
        parse_diagram(source)


def test_duplicate_and_parallel_bonds_are_rejected():
    with pytest.raises(DiagramError):
        MarkedDiagram(nodes=(1, 1))
    with pytest.raises(DiagramError):
        MarkedDiagram(nodes=(1, 2), bonds=(Bond(1, 2), Bond(2, 1)))
    with pytest.raises(DiagramError):
        MarkedDiagram(nodes=(1, 2), bonds=(Bond(1, 2, 2),))


def test_subdiagram_s_trivial_components():
    f4 = dynkin("F", 4, crossed=[1])
    assert not subdiagram(f4, {1, 2}).has_s_trivial_component
    assert subdiagram(f4, {3, 4}).has_s_trivial_component
    assert subdiagram(f4, {1, 3}).s_trivial == (False, True)


def test_dual_swaps_b_and_c():
    assert dual_diagram(dynkin("B", 3)).name == "C3"
    assert dual_diagram(dynkin("C", 4)).name == "B4"


def test_simply_laced_covers():
    cover = simply_laced_cover(dual_diagram(dynkin("C", 3, crossed=[3])))
    assert cover.name == "D4"
    assert cover.crossed == frozenset({4})

    cover = simply_laced_cover(dual_diagram(dynkin("B", 3, crossed=[1])))
    assert cover.name == "A5"
    assert cover.crossed == frozenset({1})

    with pytest.raises(DiagramError):
        simply_laced_cover(dynkin("A", 3, crossed=[1]))


def test_bourbaki_relabel_of_induced_piece():
    e7 = dynkin("E", 7, crossed=[7])
    piece = bourbaki_relabel(e7.induced({2, 3, 4, 5, 6, 7}))
    assert piece.name == "D6"
    assert piece.crossed == frozenset({1})


def test_canonical_form_identifies_automorphic_markings():
    assert canonical_form(dynkin("A", 5, crossed=[5])) == canonical_form(dynkin("A", 5, crossed=[1]))
    assert canonical_form(dynkin("D", 4, crossed=[4])) == canonical_form(dynkin("D", 4, crossed=[1]))
    assert canonical_form(dynkin("E", 6, crossed=[6])) == ("E6", (1,), ())
    assert canonical_form(MarkedDiagram(nodes=())) == ("empty", (), ())


def test_connected_subsets_containing_a_node():
    assert len(connected_subsets(dynkin("A", 4), containing=1)) == 4
    # E6 at its first node: 8 connected pieces, Kostant count 9 includes the empty one
    assert len(connected_subsets(dynkin("E", 6), containing=1)) == 8
