"""Intervals, gradedness, rank slices and Poincare polynomials over Hasse diagrams."""

from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import categorical_edge_match

from posets.polynomial import IntPolynomial
from utils.errors import IntervalError
from weyl.poset import CosetPoset


@dataclass(frozen=True)
class OrderView:
    """A finite poset given by its Hasse lower covers and a comparison oracle."""

    elements: Tuple[int, ...]
    lower: Mapping[int, Tuple[int, ...]]
    leq: Callable[[int, int], bool]
    labels: Mapping[Tuple[int, int], Optional[int]] = field(default_factory=dict)
    name: str = "bruhat"

    def digraph(self, subset: Optional[Iterable[int]] = None) -> nx.DiGraph:
        """Hasse diagram with edges pointing up, restricted to a subset."""
        keep = set(self.elements if subset is None else subset)
        graph = nx.DiGraph()
        graph.add_nodes_from(sorted(keep))
        for hi in keep:
            for lo in self.lower.get(hi, ()):
                if lo in keep:
                    graph.add_edge(lo, hi, label=self.labels.get((lo, hi)))
        return graph


def bruhat_view(poset: CosetPoset, elements: Optional[Iterable[int]] = None) -> OrderView:
    """Bruhat order on ^S W, or on an order ideal of it."""
    chosen = tuple(sorted(poset.elements if elements is None else elements))
    lower = {}
    labels = {}
    for hi in chosen:
        covers = poset.lower_covers(hi)
        lower[hi] = tuple(lo for lo, _ in covers)
        labels.update({(lo, hi): label for lo, label in covers})
    return OrderView(chosen, lower, poset.bruhat_leq, labels, "bruhat")


@dataclass
class GradedInterval:
    """The interval [v, w] with its rank function when graded."""

    bottom: int
    top: int
    elements: FrozenSet[int]
    graded: bool
    rank: Dict[int, int]
    witness: Optional[Tuple[List[int], List[int]]] = None

    @property
    def length(self) -> int:
        return self.rank[self.top]

    def slices(self) -> List[List[int]]:
        """[v, w]_j for j = 0 .. r(w)."""
        if not self.graded:
            raise IntervalError("interval is not graded", bottom=self.bottom, top=self.top)
        levels: List[List[int]] = [[] for _ in range(self.length + 1)]
        for x in sorted(self.elements):
            levels[self.rank[x]].append(x)
        return levels

    def slice_sizes(self) -> List[int]:
        return [len(level) for level in self.slices()]


def _path(predecessor: Mapping[int, Optional[int]], end: int) -> List[int]:
    chain = [end]
    while predecessor[chain[-1]] is not None:
        chain.append(predecessor[chain[-1]])
    return chain[::-1]


def interval(view: OrderView, v: int, w: int) -> GradedInterval:
    """[v, w] over the given order; ungraded intervals carry two maximal chains of unequal length."""
    if not view.leq(v, w):
        raise IntervalError("bottom is not below top", bottom=v, top=w)
    elements = frozenset(x for x in view.elements if view.leq(v, x) and view.leq(x, w))
    graph = view.digraph(elements)

    shortest: Dict[int, int] = {v: 0}
    longest: Dict[int, int] = {v: 0}
    short_pred: Dict[int, Optional[int]] = {v: None}
    long_pred: Dict[int, Optional[int]] = {v: None}
    for x in nx.lexicographical_topological_sort(graph):
        if x == v:
            continue
        for lo in sorted(graph.predecessors(x)):
            if lo not in shortest:
                continue
            if x not in shortest or shortest[lo] + 1 < shortest[x]:
                shortest[x] = shortest[lo] + 1
                short_pred[x] = lo
            if x not in longest or longest[lo] + 1 > longest[x]:
                longest[x] = longest[lo] + 1
                long_pred[x] = lo

    broken = sorted((x for x in elements if shortest[x] != longest[x]), key=lambda x: (longest[x], x))
    if not broken:
        return GradedInterval(v, w, elements, True, dict(shortest))

    x = broken[0]
    tail = nx.shortest_path(graph, x, w)[1:]
    witness = (_path(short_pred, x) + tail, _path(long_pred, x) + tail)
    return GradedInterval(v, w, elements, False, dict(longest), witness)


def poincare_polynomial(poset: CosetPoset, w: int) -> IntPolynomial:
    """Sum of t^l(v) over v <= w."""
    return IntPolynomial.from_exponents(poset.lengths[x] for x in poset.lower_ideal(w))


def quotient_poincare(poset: CosetPoset) -> IntPolynomial:
    """Rank-generating function of the whole quotient."""
    return IntPolynomial.from_exponents(poset.lengths)


def labeled_isomorphic(left: nx.DiGraph, right: nx.DiGraph) -> bool:
    """Isomorphism of Hasse diagrams respecting edge labels."""
    return nx.is_isomorphic(left, right, edge_match=categorical_edge_match("label", None))


def maximal_chains(view: OrderView, v: int, w: int, limit: int = 100000) -> List[List[int]]:
    """All maximal chains from v to w (small posets only)."""
    graph = view.digraph(x for x in view.elements if view.leq(v, x) and view.leq(x, w))
    chains = []
    for chain in nx.all_simple_paths(graph, v, w) if v != w else [[v]]:
        chains.append(list(chain))
        if len(chains) >= limit:
            raise IntervalError("too many chains to enumerate", bottom=v, top=w)
    return chains


def rank_slices(poset: CosetPoset, w: int) -> List[List[int]]:
    """[e, w] grouped by length; the rank function on ^S W is the length."""
    levels: List[List[int]] = [[] for _ in range(poset.lengths[w] + 1)]
    for x in sorted(poset.lower_ideal(w)):
        levels[poset.lengths[x]].append(x)
    return levels
