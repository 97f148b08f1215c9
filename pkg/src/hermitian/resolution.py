"""Minimal free resolutions of Wallach representations, read off their BGG resolutions."""

from typing import Dict, FrozenSet, List, Optional

from hermitian.ordering import order_view
from hermitian.pairs import HSPair, dprime, pair_name, split_rank, wallach_block
from posets.intervals import interval
from reports.models import Ordering, ResolutionData, ResolutionTerm
from utils.errors import IntervalError, KostantError
from utils.logging_utils import execution_logger
from weyl.poset import CosetPoset, generate_coset_poset
from weyl.singular import SingularSubposet, levi_dominant_conjugate, singular_subposet


def chain_shift(poset: CosetPoset, x: int, top: int, singular: FrozenSet[int]) -> int:
    """Edges on a maximal chain from x up to top whose label is not in J; non-simple covers count."""
    count = 0
    current = x
    while current != top:
        simple = [i for i in poset.ascents(current) if poset.bruhat_leq(poset.transitions[current][i], top)]
        if simple:
            label: Optional[int] = poset.node(simple[0])
            current = poset.transitions[current][simple[0]]
        else:
            current, label = next((y, lab) for y, lab in poset.upper_covers(current) if poset.bruhat_leq(y, top))
        if label not in singular:
            count += 1
    return count


def minimal_resolution(hs: HSPair, k: int) -> ResolutionData:
    """Betti numbers and degree shifts of C[X_k] as a module over R = C[u]."""
    block = wallach_block(hs, k)
    rs = hs.rs
    weight = [str(c) for c in block.weight]
    target = f"{hs.name}:k={k}"

    if k in (0, split_rank(hs)):
        term = ResolutionTerm(index=0, elements=[], dimensions=[1], shifts={0: 1})
        return ResolutionData(
            pair=hs.name, k=k, weight=weight, singular=sorted(block.singular), reduced=pair_name(hs.diagram), terms=[term]
        )

    execution_logger.log_step_start("minimal_resolution", target, singular=sorted(block.singular))
    poset = generate_coset_poset(hs.diagram)
    sub: SingularSubposet = singular_subposet(poset, block.singular)
    reduced, _, copies = dprime(hs, k, block.singular)
    expected_size = copies * (len(generate_coset_poset(reduced)) if reduced.nodes else 1)
    execution_logger.log_validation(f"block_size:{target}", expected_size, len(sub), expected_size == len(sub))

    bottom, top = sub.members[0], sub.members[-1]
    graded = interval(order_view(sub, Ordering.BRUHAT), bottom, top)
    if not graded.graded:
        raise IntervalError("singular block is not graded", bottom=bottom, top=top, chains=graded.witness)

    levi = hs.diagram.levi
    highest = {}
    for x in sub.members:
        image = poset.apply_word(poset.word(x), block.antidominant)
        highest[x] = levi_dominant_conjugate(rs, image, levi) - rs.rho

    top_weight = highest[top]
    execution_logger.log_validation(
        f"top_weight:{target}", weight, [str(c) for c in top_weight], top_weight == block.weight
    )

    terms: List[ResolutionTerm] = []
    for index in range(graded.length + 1):
        elements = [x for x in sub.members if graded.length - graded.rank[x] == index]
        dimensions = []
        shifts: Dict[int, int] = {}
        for x in elements:
            dimension = rs.weyl_dimension(levi, highest[x])
            shift = rs.root_coordinates(top_weight - highest[x])[rs.index(hs.alpha)]
            chain = chain_shift(poset, x, top, sub.singular)
            execution_logger.log_validation(f"shift_rules:{target}:{x}", str(shift), chain, shift == chain)
            if shift < 0 or shift.denominator != 1:
                raise KostantError("degree shift is not a nonnegative integer", element=x, shift=str(shift))
            dimensions.append(dimension)
            shifts[int(shift)] = shifts.get(int(shift), 0) + dimension
        terms.append(ResolutionTerm(index=index, elements=elements, dimensions=dimensions, shifts=shifts))

    data = ResolutionData(
        pair=hs.name,
        k=k,
        weight=weight,
        singular=sorted(block.singular),
        reduced=pair_name(reduced),
        terms=terms,
    )
    execution_logger.log_step_end("minimal_resolution", target, betti=data.betti)
    return data
