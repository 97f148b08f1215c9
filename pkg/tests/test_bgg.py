import numpy as np
import pytest

from bgg.complex import assign_signs, boolean_cube, build_bgg, verify_complex
from kostant.classifier import classify_regular
from utils.errors import SignAssignmentError


def square_products(signs, squares):
    return {signs[(x, y1)] * signs[(y1, z)] * signs[(x, y2)] * signs[(y2, z)] for x, y1, y2, z in squares}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_boolean_cube_signs(n):
    arrows, squares = boolean_cube(n)
    assert len(arrows) == n * 2 ** (n - 1)
    signs, backtracked = assign_signs(arrows, squares)
    assert square_products(signs, squares) == {-1}
    assert not backtracked


def test_backtracking_strategy():
    arrows, squares = boolean_cube(3)
    signs, backtracked = assign_signs(arrows, squares, strategy="backtrack")
    assert backtracked
    assert square_products(signs, squares) == {-1}


def test_inconsistent_squares_are_reported():
    squares = [(0, 1, 2, 9), (0, 1, 3, 9), (0, 2, 3, 9)]
    arrows = [(0, 1), (0, 2), (0, 3), (1, 9), (2, 9), (3, 9)]
    with pytest.raises(SignAssignmentError):
        assign_signs(arrows, squares)


@pytest.mark.parametrize("poset_name", ["d4_poset", "f4_poset"])
def test_kostant_complexes_are_complexes(request, poset_name):
    poset = request.getfixturevalue(poset_name)
    for w in classify_regular(poset).kostant_elements:
        summary = verify_complex(build_bgg(poset, w))
        assert summary.passed, (w, summary)
        assert summary.kostant


def test_f4_top_complex(f4_poset):
    complex_ = build_bgg(f4_poset, f4_poset.top)
    assert complex_.term_sizes() == [len(level) for level in f4_poset.by_length()]
    assert complex_.term_sizes()[0] == 1
    assert verify_complex(complex_).passed


def test_box_lattice_differentials(a3_middle):
    complex_ = build_bgg(a3_middle, a3_middle.top)
    assert complex_.differential(2).shape == (1, 2)
    assert set(np.abs(complex_.differential(2)).flatten()) == {1}
    payload = complex_.to_payload()
    assert payload["top"] == a3_middle.top
    assert len(payload["signs"]) == 6


def test_single_middle_pairs_are_left_out_of_the_product_check(a3_middle):
    complex_ = build_bgg(a3_middle, a3_middle.top)
    assert len(complex_.single) == 4
    x, z = complex_.single[0]
    i = next(i for i, term in enumerate(complex_.terms) if x in term)
    product = complex_.differential(i - 1) @ complex_.differential(i)
    assert abs(product[complex_.terms[i - 2].index(z), complex_.terms[i].index(x)]) == 1
    summary = verify_complex(complex_)
    assert summary.bad_products == []
    assert summary.squares == 1
