"""Kostant modules in regular blocks.

An element w of ^S W gives a Kostant module L_w exactly when [e, w] has a palindromic
Poincare polynomial, equivalently when every relative KL polynomial ^S P_{x,w} is 0 or 1.
For a maximal parabolic, a Kostant w has at most one simple descent inside ^S W, which
prunes most of the quotient before any polynomial is computed.
"""

from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from hermitian.pairs import is_hermitian
from kl.table import KLTable, build_kl_table, ext_vector
from posets.intervals import bruhat_view, labeled_isomorphic, poincare_polynomial, quotient_poincare, rank_slices
from posets.polynomial import IntPolynomial
from reports.models import (
    BijectionVerdict,
    CohomologyEntry,
    CohomologyTable,
    Criterion,
    ElementVerdict,
    KostantReport,
    Method,
)
from roots.diagram import MarkedDiagram, connected_subsets, dual_diagram, simply_laced_cover, subdiagram
from utils.config_loader import settings
from utils.errors import DiagramError, KostantError
from utils.logging_utils import execution_logger
from weyl.poset import CosetPoset, generate_coset_poset


@lru_cache(maxsize=4)
def _worker_poset(diagram: MarkedDiagram, cap: int) -> CosetPoset:
    return generate_coset_poset(diagram, max_elements=cap)


def _poincare_chunk(diagram: MarkedDiagram, cap: int, elements: Sequence[int]) -> List[Tuple[int, Tuple[int, ...]]]:
    poset = _worker_poset(diagram, cap)
    return [(w, poincare_polynomial(poset, w).coeffs) for w in elements]


def _poincare_map(poset: CosetPoset, elements: Sequence[int], jobs: int) -> Dict[int, IntPolynomial]:
    """P_w for the given elements, optionally spread over worker processes."""
    if jobs <= 1 or len(elements) < 2 * jobs:
        return {w: poincare_polynomial(poset, w) for w in elements}

    chunks = [list(elements[i::jobs]) for i in range(jobs)]
    cap = max(len(poset), settings.engine.max_elements)
    found: Dict[int, IntPolynomial] = {}
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for rows in pool.map(_poincare_chunk, [poset.diagram] * jobs, [cap] * jobs, chunks):
            found.update({w: IntPolynomial(coeffs) for w, coeffs in rows})
    return {w: found[w] for w in elements}


def _criterion(poset: CosetPoset, method: Method) -> Criterion:
    if method is Method.KL:
        return Criterion.KL
    if method is Method.BOTH:
        return Criterion.BOTH
    if len(poset.diagram.crossed) != 1:
        return Criterion.RATIONAL_SMOOTHNESS
    return Criterion.PALINDROMIC


def passes_pruning(poset: CosetPoset, w: int) -> bool:
    """At most one simple descent inside ^S W."""
    return len(poset.descents(w)) <= 1


def classify_regular(
    poset: CosetPoset,
    method: Union[Method, str] = Method.PALINDROMIC,
    jobs: Optional[int] = None,
    verify_pruning: bool = False,
    with_slices: bool = False,
) -> KostantReport:
    """Kostant verdict for every element of a regular block ^S W."""
    method = Method(method)
    diagram = poset.diagram
    if diagram.singular:
        raise KostantError("regular classification needs an empty singular set", singular=sorted(diagram.singular))
    jobs = jobs or settings.engine.jobs
    maximal = len(diagram.crossed) == 1
    target = diagram.name

    execution_logger.log_step_start("classify_regular", target, method=method.value, size=len(poset))
    survivors = [w for w in poset.elements if not maximal or passes_pruning(poset, w)]
    pruned = set(poset.elements) - set(survivors)
    execution_logger.log_action("prune", target, kept=len(survivors), pruned=len(pruned))

    polynomials: Dict[int, IntPolynomial] = {}
    if method in (Method.PALINDROMIC, Method.BOTH):
        polynomials = _poincare_map(poset, survivors, jobs)

    zero_one: Dict[int, bool] = {}
    if method in (Method.KL, Method.BOTH):
        table = build_kl_table(poset)
        zero_one = {w: table.column_is_zero_one(w) for w in survivors}

    if verify_pruning and pruned:
        offenders = [w for w in sorted(pruned) if poincare_polynomial(poset, w).is_palindromic()]
        execution_logger.log_validation(f"pruning_soundness:{target}", [], offenders, not offenders)
        if offenders:
            raise KostantError("pruning removed a palindromic element", diagram=target, element=offenders[0])

    standard = {w: sorted(subset) for subset, w in standard_kostant(poset).items()}
    type_a = diagram.is_connected and diagram.dynkin_type().letter == "A" and maximal

    verdicts = []
    for w in poset.elements:
        palindromic = polynomials[w].is_palindromic() if w in polynomials else None
        kl_verdict = zero_one.get(w)
        if palindromic is not None and kl_verdict is not None and palindromic != kl_verdict:
            execution_logger.log_step_end("classify_regular", target, status="failed")
            raise KostantError("palindromic and KL verdicts disagree", diagram=target, element=w)
        kostant = w not in pruned and bool(palindromic if palindromic is not None else kl_verdict)

        if w in standard and not kostant:
            raise KostantError("standard element is not Kostant", diagram=target, element=w)

        verdicts.append(
            ElementVerdict(
                element=w,
                length=poset.lengths[w],
                word=list(poset.word(w)),
                kostant=kostant,
                standard=w in standard,
                subdiagram=standard.get(w),
                pruned=w in pruned,
                palindromic=palindromic,
                kl_zero_one=kl_verdict,
                poincare=polynomials[w].to_list() if w in polynomials else None,
                slices=rank_slices(poset, w) if with_slices and kostant else None,
                type_a_word=type_a_word(poset, w) if type_a else None,
            )
        )

    report = KostantReport(
        diagram=target,
        crossed=sorted(diagram.crossed),
        method=method,
        criterion=_criterion(poset, method),
        size=len(poset),
        verdicts=verdicts,
        quotient_poincare=quotient_poincare(poset).to_list(),
    )
    execution_logger.log_step_end(
        "classify_regular", target, kostant=report.kostant_count, standard=report.standard_count
    )
    return report


def _valid_subsets(diagram: MarkedDiagram) -> List[FrozenSet[int]]:
    """I = empty, plus every I whose components all contain a crossed node."""
    nodes = list(diagram.nodes)
    found: List[FrozenSet[int]] = [frozenset()]
    for size in range(1, len(nodes) + 1):
        for chosen in combinations(nodes, size):
            if not subdiagram(diagram, chosen).has_s_trivial_component:
                found.append(frozenset(chosen))
    return found


def standard_kostant(source: Union[CosetPoset, MarkedDiagram]) -> Dict[FrozenSet[int], int]:
    """Subdiagram I with no S-trivial component -> phi(I), the top of ^(S n I) W_I."""
    poset = source if isinstance(source, CosetPoset) else generate_coset_poset(source)
    images: Dict[int, FrozenSet[int]] = {}
    result: Dict[FrozenSet[int], int] = {}
    for subset in _valid_subsets(poset.diagram):
        w = poset.phi(subset)
        if poset.support(w) != subset:
            raise KostantError("support of phi(I) differs from I", subset=sorted(subset), support=sorted(poset.support(w)))
        if w in images:
            raise KostantError("phi is not injective", element=w, first=sorted(images[w]), second=sorted(subset))
        images[w] = subset
        result[subset] = w
    return result


def standard_interval_matches(poset: CosetPoset, subset: Iterable[int]) -> bool:
    """[e, phi(I)] is isomorphic, labels included, to the quotient of the induced diagram."""
    chosen = frozenset(subset)
    w = poset.phi(chosen)
    local = generate_coset_poset(poset.diagram.induced(chosen))
    ideal = bruhat_view(poset, poset.lower_ideal(w)).digraph()
    whole = bruhat_view(local).digraph()
    return labeled_isomorphic(ideal, whole)


def verify_bijection(diagram: MarkedDiagram, poset: Optional[CosetPoset] = None) -> BijectionVerdict:
    """Compare Kostant modules with connected subdiagrams containing the crossed node."""
    crossed = sorted(diagram.crossed)
    base = dict(diagram=diagram.name, crossed=crossed)
    if len(crossed) != 1 or not diagram.is_connected:
        return BijectionVerdict(**base, applies=False, reason="needs one crossed node on a connected diagram")

    alpha = crossed[0]
    if diagram.is_simply_laced:
        cover = diagram
    elif is_hermitian(diagram) is not None:
        cover = simply_laced_cover(dual_diagram(diagram))
    else:
        return BijectionVerdict(**base, applies=False, reason="not simply laced and not Hermitian symmetric")

    poset = poset or generate_coset_poset(diagram)
    report = classify_regular(poset, Method.PALINDROMIC)
    kostant = set(report.kostant_elements)
    cover_node = next(iter(cover.crossed))
    expected = len(connected_subsets(cover, containing=cover_node)) + 1

    unmatched: List[int] = []
    non_kostant: List[int] = []
    if cover is diagram:
        images = set(standard_kostant(poset).values())
        unmatched = sorted(kostant - images)
        non_kostant = sorted(images - kostant)

    holds = len(kostant) == expected and not unmatched and not non_kostant
    execution_logger.log_validation(f"bijection:{diagram.name}:{alpha}", expected, len(kostant), holds)
    return BijectionVerdict(
        **base,
        applies=True,
        holds=holds,
        reason="simply laced" if cover is diagram else "simply-laced cover of the dual",
        cover=None if cover is diagram else cover.name,
        kostant_count=len(kostant),
        subdiagram_count=expected,
        unmatched_kostant=unmatched,
        non_kostant_images=non_kostant,
    )


def _cohomology_from_kl(poset: CosetPoset, w: int, table: KLTable) -> CohomologyTable:
    degrees: Dict[int, List[CohomologyEntry]] = {}
    kostant = True
    for x in sorted(poset.lower_ideal(w)):
        poly = table.relative(x, w)
        kostant = kostant and poly.is_zero_one
        for degree, dim in ext_vector(poly, poset.lengths[x], poset.lengths[w]).nonzero.items():
            degrees.setdefault(degree, []).append(CohomologyEntry(element=x, multiplicity=dim))
    return CohomologyTable(element=w, kostant=kostant, source="kl", degrees=dict(sorted(degrees.items())))


def u_cohomology(
    poset: CosetPoset,
    w: int,
    method: Union[Method, str] = Method.PALINDROMIC,
    table: Optional[KLTable] = None,
) -> CohomologyTable:
    """H^i(u, L_w) as Levi modules F_x: rank slices for Kostant w, KL multiplicities otherwise."""
    method = Method(method)
    if method is Method.PALINDROMIC and poincare_polynomial(poset, w).is_palindromic():
        levels = rank_slices(poset, w)
        top = poset.lengths[w]
        degrees = {
            i: [CohomologyEntry(element=x) for x in levels[top - i]] for i in range(top + 1) if levels[top - i]
        }
        return CohomologyTable(element=w, kostant=True, source="slices", degrees=degrees)
    return _cohomology_from_kl(poset, w, table or build_kl_table(poset))


def type_a_word(poset: CosetPoset, x: int) -> str:
    """0/1 word of x for type A with one crossed node r: a permutation of 1^r 0^(n-r)."""
    diagram = poset.diagram
    if not diagram.is_connected or diagram.dynkin_type().letter != "A" or len(diagram.crossed) != 1:
        raise DiagramError("0/1 words need type A with one crossed node", diagram=diagram.name)
    key = poset.keys[x]
    tail = [0]
    for value in reversed(key):
        tail.append(tail[-1] + value)
    coords = tail[::-1]
    low = min(coords)
    return "".join(str(c - low) for c in coords)
