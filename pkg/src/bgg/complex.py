"""Signed BGG complexes over lower intervals [e, w] of ^S W.

C_i is indexed by the rank slice of length l(w) - i. Every Hasse arrow x -> y of [e, w]
carries a sign, and for each square x -> y1 -> z, x -> y2 -> z the four signs multiply to
-1, which makes the differentials compose to zero.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from posets.intervals import bruhat_view, interval, poincare_polynomial
from reports.models import ComplexSummary
from utils.errors import IntervalError, SignAssignmentError
from utils.logging_utils import execution_logger
from weyl.poset import CosetPoset

Arrow = Tuple[int, int]
Square = Tuple[int, int, int, int]


def _square_edges(square: Square) -> Tuple[Arrow, Arrow, Arrow, Arrow]:
    x, y1, y2, z = square
    return (x, y1), (y1, z), (x, y2), (y2, z)


def _propagate(arrows: Sequence[Arrow], squares: Sequence[Square]) -> Optional[Dict[Arrow, int]]:
    """Assign arrows in order; the last arrow of a square is forced. None on a conflict."""
    position = {arrow: i for i, arrow in enumerate(arrows)}
    closing: Dict[Arrow, List[Square]] = {}
    for square in squares:
        last = max(_square_edges(square), key=position.__getitem__)
        closing.setdefault(last, []).append(square)

    signs: Dict[Arrow, int] = {}
    for arrow in arrows:
        forced = set()
        for square in closing.get(arrow, ()):
            product = 1
            for edge in _square_edges(square):
                if edge != arrow:
                    product *= signs[edge]
            forced.add(-product)
        if len(forced) > 1:
            return None
        signs[arrow] = forced.pop() if forced else 1
    return signs


def _backtrack(arrows: Sequence[Arrow], squares: Sequence[Square]) -> Optional[Dict[Arrow, int]]:
    """Depth-first search over +1/-1, checking each square once all four edges are set."""
    position = {arrow: i for i, arrow in enumerate(arrows)}
    closing: Dict[int, List[Square]] = {}
    for square in squares:
        last = max(position[edge] for edge in _square_edges(square))
        closing.setdefault(last, []).append(square)

    signs: Dict[Arrow, int] = {}
    choices = [0] * len(arrows)
    index = 0
    while 0 <= index < len(arrows):
        if choices[index] == 2:
            choices[index] = 0
            signs.pop(arrows[index], None)
            index -= 1
            continue
        signs[arrows[index]] = 1 if choices[index] == 0 else -1
        choices[index] += 1
        ok = all(np.prod([signs[edge] for edge in _square_edges(square)]) == -1 for square in closing.get(index, ()))
        if ok:
            index += 1
    return signs if index == len(arrows) else None


def assign_signs(
    arrows: Sequence[Arrow], squares: Sequence[Square], strategy: str = "propagate"
) -> Tuple[Dict[Arrow, int], bool]:
    """Signs satisfying every square and whether the backtracking fallback ran."""
    if strategy == "propagate":
        signs = _propagate(arrows, squares)
        if signs is not None:
            return signs, False
    signs = _backtrack(arrows, squares)
    if signs is None:
        raise SignAssignmentError("no sign assignment satisfies the square condition", squares=len(squares))
    return signs, True


@dataclass
class SignedComplex:
    """Terms, signed arrows and the square structure of [e, w]."""

    top: int
    terms: List[List[int]]
    signs: Dict[Arrow, int]
    squares: List[Square]
    single: List[Arrow] = field(default_factory=list)
    crowded: List[Arrow] = field(default_factory=list)
    backtracked: bool = False
    kostant: bool = False
    diagram: str = ""

    def differential(self, i: int) -> np.ndarray:
        """D_i : C_i -> C_(i-1), rows indexed by C_(i-1), columns by C_i."""
        rows, cols = self.terms[i - 1], self.terms[i]
        matrix = np.zeros((len(rows), len(cols)), dtype=np.int64)
        row_index = {y: r for r, y in enumerate(rows)}
        col_index = {x: c for c, x in enumerate(cols)}
        for (lo, hi), sign in self.signs.items():
            if lo in col_index and hi in row_index:
                matrix[row_index[hi], col_index[lo]] = sign
        return matrix

    def differentials(self) -> List[np.ndarray]:
        return [self.differential(i) for i in range(1, len(self.terms))]

    def term_sizes(self) -> List[int]:
        return [len(term) for term in self.terms]

    def to_payload(self) -> dict:
        return {
            "top": self.top,
            "terms": self.terms,
            "differentials": [m.tolist() for m in self.differentials()],
            "signs": [[lo, hi, s] for (lo, hi), s in sorted(self.signs.items())],
            "kostant": self.kostant,
        }


def _middles(arrows: Iterable[Arrow]) -> Dict[Arrow, List[int]]:
    ups: Dict[int, List[int]] = {}
    for lo, hi in arrows:
        ups.setdefault(lo, []).append(hi)
    middles: Dict[Arrow, List[int]] = {}
    for x, ys in ups.items():
        for y in ys:
            for z in ups.get(y, ()):
                middles.setdefault((x, z), []).append(y)
    return middles


def build_bgg(poset: CosetPoset, w: int) -> SignedComplex:
    """Signed complex on [e, w]; built for any w, with the Kostant verdict recorded."""
    view = bruhat_view(poset, poset.lower_ideal(w))
    graded = interval(view, 0, w)
    if not graded.graded:
        raise IntervalError("interval is not graded", top=w, chains=graded.witness)

    arrows = sorted(
        ((lo, hi) for hi in view.elements for lo in view.lower[hi]),
        key=lambda a: (poset.lengths[a[1]], a[1], a[0]),
    )
    squares: List[Square] = []
    single: List[Arrow] = []
    crowded: List[Arrow] = []
    for (x, z), ys in sorted(_middles(arrows).items()):
        if len(ys) == 2:
            squares.append((x, min(ys), max(ys), z))
        elif len(ys) == 1:
            single.append((x, z))
        else:
            crowded.append((x, z))

    signs, backtracked = assign_signs(arrows, squares)
    levels = graded.slices()
    top_length = graded.length
    complex_ = SignedComplex(
        top=w,
        terms=[levels[top_length - i] for i in range(top_length + 1)],
        signs=signs,
        squares=squares,
        single=single,
        crowded=crowded,
        backtracked=backtracked,
        kostant=poincare_polynomial(poset, w).is_palindromic(),
        diagram=poset.diagram.name,
    )
    execution_logger.log_action(
        "build_bgg", poset.diagram.name, element=w, arrows=len(arrows), squares=len(squares), backtracked=backtracked
    )
    return complex_


def verify_complex(c: SignedComplex) -> ComplexSummary:
    """Recheck every square product and every D_(i-1) D_i.

    Pairs x < z of length gap two with a single element between them are skipped in the
    D_(i-1) D_i check: their entry is one signed arrow product and never vanishes. They are
    kept in SignedComplex.single.
    """
    bad_squares = [
        square for square in c.squares if np.prod([c.signs[edge] for edge in _square_edges(square)]) != -1
    ]

    single = set(c.single)
    bad_products = []
    for i in range(2, len(c.terms)):
        product = c.differential(i - 1) @ c.differential(i)
        if any(
            product[r, col] != 0 and (x, z) not in single
            for r, z in enumerate(c.terms[i - 2])
            for col, x in enumerate(c.terms[i])
        ):
            bad_products.append(i)

    summary = ComplexSummary(
        diagram=c.diagram,
        element=c.top,
        kostant=c.kostant,
        term_sizes=c.term_sizes(),
        arrows=len(c.signs),
        squares=len(c.squares),
        backtracked=c.backtracked,
        bad_squares=bad_squares,
        bad_products=bad_products,
        crowded_pairs=list(c.crowded),
    )
    execution_logger.log_validation(f"bgg_complex:{c.diagram}:{c.top}", True, summary.passed, summary.passed)
    return summary


def boolean_cube(n: int) -> Tuple[List[Arrow], List[Square]]:
    """Arrows and squares of the Boolean lattice on n atoms, subsets encoded as bitmasks."""
    arrows = sorted(
        ((mask, mask | 1 << i) for mask in range(1 << n) for i in range(n) if not mask >> i & 1),
        key=lambda a: (bin(a[1]).count("1"), a[1], a[0]),
    )
    squares = []
    for mask in range(1 << n):
        free = [i for i in range(n) if not mask >> i & 1]
        for a in range(len(free)):
            for b in range(a + 1, len(free)):
                y1, y2 = mask | 1 << free[a], mask | 1 << free[b]
                squares.append((mask, min(y1, y2), max(y1, y2), y1 | y2))
    return arrows, squares
