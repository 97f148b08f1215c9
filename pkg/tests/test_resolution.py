import pytest

from hermitian.pairs import require_hermitian
from hermitian.resolution import chain_shift, minimal_resolution
from roots.diagram import dynkin
from weyl.poset import generate_coset_poset
from weyl.singular import singular_subposet


def test_determinantal_hypersurface():
    data = minimal_resolution(require_hermitian(dynkin("A", 3, crossed=[2])), 1)
    assert data.betti == [1, 1]
    assert data.shifts == [[0], [2]]
    assert data.singular == [2]
    assert data.display() == "0 -> R(-2) -> R -> 0"
    assert list(data.to_frame()["Betti"]) == [1, 1]


def test_trivial_indices():
    hs = require_hermitian(dynkin("A", 3, crossed=[2]))
    for k in (0, 2):
        data = minimal_resolution(hs, k)
        assert data.betti == [1]
        assert data.display() == "0 -> R -> 0"


def test_chain_shift_skips_singular_labels(a3_middle):
    sub = singular_subposet(a3_middle, [2])
    bottom, top = sub.members
    assert chain_shift(a3_middle, bottom, top, sub.singular) == 2
    assert chain_shift(a3_middle, top, top, sub.singular) == 0


def test_split_rank_one_has_no_middle_index():
    hs = require_hermitian(dynkin("A", 2, crossed=[1]))
    data = minimal_resolution(hs, 1)
    assert data.betti == [1]
    assert generate_coset_poset(hs.diagram).max_length == 2


@pytest.mark.slow
def test_e7_first_wallach_representation():
    data = minimal_resolution(require_hermitian(dynkin("E", 7, crossed=[7])), 1)
    assert data.betti == [1, 27, 78, 351, 650, 702, 650, 351, 78, 27, 1]
    assert data.shifts == [[0], [2], [3], [5], [6], [7, 8], [9], [10], [12], [13], [15]]
    assert data.reduced == "(D6,D5)"
