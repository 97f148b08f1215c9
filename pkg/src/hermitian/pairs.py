"""Hermitian symmetric pairs and the diagram reductions attached to their singular blocks."""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Tuple

from roots.diagram import (
    DynkinType,
    MarkedDiagram,
    bourbaki_relabel,
    dual_diagram,
    simply_laced_cover,
)
from roots.system import Root, RootSystem, Weight, build_root_system, extended_attach
from utils.config_loader import settings
from utils.constants import EMPTY_DIAGRAM
from utils.errors import ConfigurationError, DiagramError
from utils.logging_utils import execution_logger
from weyl.poset import generate_coset_poset
from weyl.singular import antidominant_data, is_singular_member

EMPTY = MarkedDiagram(nodes=())


@dataclass(frozen=True)
class HSPair:
    """A connected diagram with one cominuscule crossed node."""

    diagram: MarkedDiagram
    alpha: int
    coefficient: int

    @property
    def kind(self) -> DynkinType:
        return self.diagram.dynkin_type()

    @property
    def index(self) -> int:
        """Bourbaki index of the crossed node."""
        return self.kind.index(self.alpha)

    @property
    def levi_name(self) -> str:
        return self.diagram.induced(self.diagram.levi).name

    @property
    def name(self) -> str:
        return f"({self.kind.name},{self.levi_name})"

    @property
    def rs(self) -> RootSystem:
        return build_root_system(self.diagram)


def pair_name(diagram: MarkedDiagram) -> str:
    """'(D6,D5)' style name of a marked diagram, 'empty' for the empty one."""
    if not diagram.nodes:
        return EMPTY_DIAGRAM
    return f"({diagram.name},{diagram.induced(diagram.levi).name})"


def is_hermitian(diagram: MarkedDiagram) -> Optional[HSPair]:
    """The pair when the single crossed node has coefficient 1 in the highest root, else None."""
    if not diagram.nodes or not diagram.is_connected or len(diagram.crossed) != 1:
        return None
    alpha = next(iter(diagram.crossed))
    rs = build_root_system(diagram)
    coefficient = rs.coefficient(rs.highest_root, alpha)
    if coefficient != 1:
        return None
    return HSPair(diagram.with_marks(singular=()), alpha, coefficient)


def require_hermitian(diagram: MarkedDiagram) -> HSPair:
    hs = is_hermitian(diagram)
    if hs is None:
        raise DiagramError("not a Hermitian symmetric pair", diagram=diagram.name, crossed=sorted(diagram.crossed))
    return hs


def has_adjacent_pair(diagram: MarkedDiagram, nodes: Iterable[int]) -> bool:
    chosen = set(nodes)
    return any(bond.a in chosen and bond.b in chosen for bond in diagram.bonds)


def block_nonempty(diagram: MarkedDiagram, singular: Iterable[int]) -> bool:
    """Whether ^S W^J has any element; J with two adjacent nodes is always empty."""
    hs = require_hermitian(diagram)
    nodes = frozenset(singular)
    if has_adjacent_pair(hs.diagram, nodes):
        return False
    if not nodes:
        return True
    poset = generate_coset_poset(hs.diagram)
    return any(is_singular_member(poset, x, nodes) for x in poset.elements)


@dataclass(frozen=True)
class StronglyOrthSeq:
    """gamma_1, ..., gamma_u in Phi(u), each the highest short root orthogonal to the previous ones."""

    pair: HSPair
    roots: Tuple[Root, ...]

    def __len__(self) -> int:
        return len(self.roots)


def strongly_orthogonal(hs: HSPair) -> StronglyOrthSeq:
    rs = hs.rs
    candidates = sorted(
        (root for root in rs.short_roots if rs.coefficient(root, hs.alpha) >= 1),
        key=lambda r: (sum(r), r),
        reverse=True,
    )
    chosen: List[Root] = []
    for root in candidates:
        if all(rs.inner_product(root, gamma) == 0 for gamma in chosen):
            chosen.append(root)
    return StronglyOrthSeq(hs, tuple(chosen))


def reduced_diagram(hs: HSPair, t: int) -> MarkedDiagram:
    """D^(t): attach -gamma_i, delete it with its neighbours, keep the component of alpha."""
    sequence = strongly_orthogonal(hs)
    if not 0 <= t <= len(sequence):
        raise DiagramError("reduction step out of range", t=t, split_rank=len(sequence))

    current = hs.diagram
    for gamma in sequence.roots[:t]:
        extended = extended_attach(hs.rs, gamma, current)
        removed = {extended.affine_node} | set(extended.neighbours(extended.affine_node))
        if hs.alpha in removed:
            return EMPTY
        remaining = current.induced(set(current.nodes) - removed)
        component = next(c for c in remaining.components() if hs.alpha in c)
        current = remaining.induced(component)
    return current


def copies_for(hs: HSPair, singular: Iterable[int]) -> int:
    """Two copies when J holds a long root of (B_n,B_{n-1}) or the long root of (C_n,A_{n-1})."""
    kind = hs.kind
    if kind.letter not in ("B", "C"):
        return 1
    rs = hs.rs
    long_in_j = any(not rs.is_short(rs.simple_root(node)) for node in singular)
    if kind.letter == "B" and hs.index == 1 and long_in_j:
        return 2
    if kind.letter == "C" and hs.index == kind.rank and long_in_j:
        return 2
    return 1


def dprime(hs: HSPair, t: int, singular: Iterable[int] = ()) -> Tuple[MarkedDiagram, Optional[int], int]:
    """(D', alpha', copies): D^(t) if simply laced, else the simply-laced cover of its dual.

    alpha' is the Bourbaki index of the crossed node of D', None for the empty diagram.
    """
    reduced = reduced_diagram(hs, t)
    copies = copies_for(hs, singular)
    if not reduced.nodes:
        return EMPTY, None, copies
    if reduced.is_simply_laced:
        target = bourbaki_relabel(reduced)
    else:
        target = simply_laced_cover(dual_diagram(bourbaki_relabel(reduced)))
    alpha = next(iter(target.crossed))
    return target, target.dynkin_type().index(alpha), copies


@dataclass(frozen=True)
class WallachBlock:
    """Highest weight -k*c*zeta of the k-th Wallach representation and its singular set."""

    pair: HSPair
    k: int
    c: int
    weight: Weight
    antidominant: Weight
    singular: FrozenSet[int]


def wallach_constant(hs: HSPair) -> int:
    """c for the pair, from the configured rules."""
    kind = hs.kind
    for rule in settings.wallach:
        if rule.type != kind.letter or (rule.rank is not None and rule.rank != kind.rank):
            continue
        if rule.node == "first" and hs.index != 1:
            continue
        if rule.node == "spin" and hs.index not in (kind.rank - 1, kind.rank):
            continue
        return rule.slope * kind.rank + rule.offset
    raise ConfigurationError("no Wallach constant configured", pair=hs.name)


def split_rank(hs: HSPair) -> int:
    return len(strongly_orthogonal(hs))


def wallach_block(hs: HSPair, k: int) -> WallachBlock:
    """mu = -k*c*zeta and J = simple roots fixing the antidominant conjugate of mu + rho."""
    rank = split_rank(hs)
    if not 0 <= k <= rank:
        raise DiagramError("Wallach index out of range", k=k, split_rank=rank)
    rs = hs.rs
    if k == 0:
        zero = rs.zero_weight()
        return WallachBlock(hs, 0, 0, zero, antidominant_data(rs, zero).weight, frozenset())

    c = wallach_constant(hs)
    weight = rs.fundamental_weight(hs.alpha) * (-k * c)
    data = antidominant_data(rs, weight)
    if k < rank:
        passed = len(data.singular) == k and not has_adjacent_pair(hs.diagram, data.singular)
        execution_logger.log_validation(f"wallach_singular_set:{hs.name}:k={k}", k, len(data.singular), passed)
        if not passed:
            raise ConfigurationError(
                "Wallach constant gives the wrong singular set", pair=hs.name, c=c, k=k, singular=sorted(data.singular)
            )
    return WallachBlock(hs, k, c, weight, data.weight, data.singular)
