"""Orders on ^S W^J and Kostant modules in singular blocks.

mu_S(x, w) = dim Ext^1(N_x, L_w) is read off the singular KL polynomial. The mu-ordering
is generated by the covers x -> w with x < w in the Bruhat order, mu_S(x, w) != 0, and x
not already below another such element.
"""

from dataclasses import replace
from typing import Dict, FrozenSet, List, Optional, Set, Union

import networkx as nx

from kl.table import KLTable, build_kl_table
from posets.intervals import OrderView, interval
from posets.polynomial import IntPolynomial
from reports.models import Criterion, ElementVerdict, KostantReport, Method, Ordering
from utils.errors import IntervalError
from utils.logging_utils import execution_logger
from weyl.singular import SingularSubposet


def mu_ordering(sub: SingularSubposet, table: Optional[KLTable] = None) -> SingularSubposet:
    """Copy of the subposet with its mu-ordering covers filled in.

    Candidates below w are the x with nonzero Ext^1; x is a cover unless it already lies in the
    mu-closure below another candidate.
    """
    table = table or build_kl_table(sub.poset)
    singular = sub.singular
    below: Dict[int, Set[int]] = {}
    covers = []
    for w in sub.members:
        candidates = [x for x in sorted(sub.lower(w) - {w}) if table.ext_dims(singular, x, w)[1] != 0]
        closure: Set[int] = set()
        for x in candidates:
            closure.add(x)
            closure |= below[x]
        below[w] = closure
        for x in candidates:
            if not any(x in below[y] for y in candidates if y != x):
                covers.append((x, w))

    execution_logger.log_action("mu_ordering", sub.poset.diagram.name, singular=sorted(singular), covers=len(covers))
    return replace(sub, mu_covers=tuple(covers))


def order_view(sub: SingularSubposet, ordering: Union[Ordering, str] = Ordering.BRUHAT) -> OrderView:
    """The subposet under either order, with comparisons from the transitive closure of covers."""
    ordering = Ordering(ordering)
    edges = sub.bruhat_covers if ordering is Ordering.BRUHAT else sub.mu_covers
    if edges is None:
        raise IntervalError("mu-ordering has not been computed", singular=sorted(sub.singular))

    graph = nx.DiGraph()
    graph.add_nodes_from(sub.members)
    graph.add_edges_from(edges)
    lower_sets = {w: frozenset(nx.ancestors(graph, w)) for w in sub.members}
    lower = {w: tuple(sorted(graph.predecessors(w))) for w in sub.members}
    labels = {(lo, hi): sub.poset.label_between(lo, hi) for lo, hi in edges}

    def leq(x: int, w: int) -> bool:
        return x == w or x in lower_sets[w]

    return OrderView(tuple(sub.members), lower, leq, labels, ordering.value)


def mu_components(sub: SingularSubposet) -> List[FrozenSet[int]]:
    """Connected components of the mu-ordering Hasse diagram, ordered by smallest position."""
    view = order_view(sub, Ordering.MU)
    graph = view.digraph().to_undirected()
    return sorted((frozenset(c) for c in nx.connected_components(graph)), key=lambda c: min(map(sub.position, c)))


def _kl_verdict(sub: SingularSubposet, view: OrderView, w: int, table: KLTable) -> ElementVerdict:
    poset = sub.poset
    degrees: Dict[int, int] = {}
    multiplicity_free = True
    for x in sub.members:
        if not poset.bruhat_leq(x, w):
            continue
        dims = table.ext_dims(sub.singular, x, w).nonzero
        if not dims:
            continue
        if len(dims) != 1 or set(dims.values()) != {1}:
            multiplicity_free = False
            break
        degrees[x] = next(iter(dims))

    base = dict(element=w, position=sub.position(w), length=poset.lengths[w], word=list(poset.word(w)))
    if not multiplicity_free:
        return ElementVerdict(**base, kostant=False)

    support = set(degrees)
    minimal = [v for v in support if not any(y != v and view.leq(y, v) for y in support)]
    if len(minimal) != 1:
        return ElementVerdict(**base, kostant=False)
    v = minimal[0]
    graded = interval(view, v, w)
    if not graded.graded or set(graded.elements) != support:
        return ElementVerdict(**base, kostant=False, bottom=v)
    kostant = all(graded.length - graded.rank[x] == i for x, i in degrees.items())
    return ElementVerdict(
        **base,
        kostant=kostant,
        bottom=v,
        slices=graded.slices() if kostant else None,
    )


def _palindromic_verdict(sub: SingularSubposet, view: OrderView, w: int) -> ElementVerdict:
    poset = sub.poset
    base = dict(element=w, position=sub.position(w), length=poset.lengths[w], word=list(poset.word(w)))
    bottom = sub.members[0]
    if not view.leq(bottom, w):
        return ElementVerdict(**base, kostant=False)
    graded = interval(view, bottom, w)
    if not graded.graded:
        return ElementVerdict(**base, kostant=False, palindromic=False, bottom=bottom)
    poincare = IntPolynomial.from_exponents(graded.rank.values())
    palindromic = poincare.is_palindromic()
    return ElementVerdict(
        **base,
        kostant=palindromic,
        palindromic=palindromic,
        poincare=poincare.to_list(),
        bottom=bottom,
        slices=graded.slices() if palindromic else None,
    )


def classify_singular(
    sub: SingularSubposet,
    ordering: Union[Ordering, str] = Ordering.BRUHAT,
    method: Union[Method, str] = Method.KL,
    table: Optional[KLTable] = None,
) -> KostantReport:
    """Kostant verdicts on ^S W^J.

    With the KL method, w is Kostant when some graded interval [v, w] of the chosen order has
    rank slices [v, w]_{r(w)-i} = {x : dim Ext^i(N_x, L_w) = 1} and every other Ext vanishes.
    The palindromic method tests the rank-generating function of [bottom, w] instead, which
    is what an equivalence with a regular block transports.
    """
    ordering = Ordering(ordering)
    method = Method(method)
    poset = sub.poset
    target = poset.diagram.name
    execution_logger.log_step_start(
        "classify_singular", target, singular=sorted(sub.singular), ordering=ordering.value, method=method.value
    )

    if method is Method.KL:
        table = table or build_kl_table(poset)
        if ordering is Ordering.MU and sub.mu_covers is None:
            sub = mu_ordering(sub, table)
    view = order_view(sub, ordering)

    component_of: Dict[int, int] = {}
    if sub.mu_covers is not None:
        for index, component in enumerate(mu_components(sub)):
            component_of.update({x: index for x in component})

    verdicts = []
    for w in sub.members:
        if method is Method.KL:
            verdict = _kl_verdict(sub, view, w, table)
        else:
            verdict = _palindromic_verdict(sub, view, w)
        verdict.component = component_of.get(w)
        verdicts.append(verdict)

    if method is Method.PALINDROMIC:
        criterion = Criterion.RATIONAL_SMOOTHNESS
    elif ordering is Ordering.MU:
        criterion = Criterion.MU_DEFINITION
    else:
        criterion = Criterion.GRADED_INTERVAL

    report = KostantReport(
        diagram=target,
        crossed=sorted(poset.diagram.crossed),
        singular=sorted(sub.singular),
        method=method,
        ordering=ordering,
        criterion=criterion,
        size=len(sub),
        verdicts=verdicts,
    )
    execution_logger.log_step_end("classify_singular", target, kostant=report.kostant_count, size=report.size)
    return report
