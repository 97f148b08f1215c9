"""Root systems in exact arithmetic.

Roots are integer tuples in the simple-root basis, weights are :class:`Weight` objects in
the fundamental-weight basis. ``cartan[i][j]`` is the pairing of the i-th simple root
with the j-th simple coroot.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple, Union

import sympy

from roots.diagram import Bond, DynkinType, MarkedDiagram
from utils.constants import POSITIVE_ROOT_COUNTS
from utils.errors import DiagramError, DimensionError, WeightError
from utils.logging_utils import execution_logger

Root = Tuple[int, ...]


@dataclass(frozen=True)
class Weight:
    """A weight in fundamental-weight coordinates; coords[i] is the pairing with alpha_i^vee."""

    coords: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def _check(self, other: "Weight") -> None:
        if len(other.coords) != len(self.coords):
            raise DimensionError("weights of different rank", left=len(self.coords), right=len(other.coords))

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, scalar: Union[int, Fraction]) -> "Weight":
        return Weight(tuple(c * scalar for c in self.coords))

    __rmul__ = __mul__

    def __neg__(self) -> "Weight":
        return Weight(tuple(-c for c in self.coords))

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def as_ints(self) -> Tuple[int, ...]:
        if not self.is_integral:
            raise WeightError("weight is not integral", weight=str(self))
        return tuple(int(c) for c in self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


class RootSystem:
    """Cartan data, positive roots and weight arithmetic of a finite diagram."""

    def __init__(self, diagram: MarkedDiagram):
        if diagram.affine_node is not None:
            raise DiagramError("root systems are built from finite diagrams only", node=diagram.affine_node)
        if not diagram.nodes:
            raise DiagramError("root system of the empty diagram")
        self.diagram = diagram
        self.types = diagram.types
        self.nodes: Tuple[int, ...] = diagram.nodes
        self.rank = len(self.nodes)
        self._position = {node: i for i, node in enumerate(self.nodes)}

        self.cartan = self._cartan_matrix(diagram.bonds)
        self.lengths = self._squared_lengths(diagram)
        self.form = tuple(
            tuple(Fraction(self.cartan[i][j] * self.lengths[j], 2) for j in range(self.rank))
            for i in range(self.rank)
        )
        inverse = sympy.Matrix(self.cartan).inv()
        self._cartan_inverse = tuple(
            tuple(Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(self.rank))
            for i in range(self.rank)
        )

        self.positive_roots: Tuple[Root, ...] = self._generate_positive_roots()
        self._root_index = {root: i for i, root in enumerate(self.positive_roots)}
        short_length = min(self.root_length_sq(root) for root in self.positive_roots)
        self.short_roots: FrozenSet[Root] = frozenset(
            root for root in self.positive_roots if self.root_length_sq(root) == short_length
        )
        self.rho = Weight(tuple(Fraction(1) for _ in range(self.rank)))

        expected = sum(POSITIVE_ROOT_COUNTS[t.letter](t.rank) for t in self.types)
        execution_logger.log_validation(
            f"positive_roots:{diagram.name}", expected, len(self.positive_roots), expected == len(self.positive_roots)
        )

    @property
    def kind(self) -> DynkinType:
        """Type of a connected system."""
        return self.diagram.dynkin_type()

    @property
    def highest_root(self) -> Root:
        self._require_connected()
        return self.positive_roots[-1]

    @property
    def highest_short_root(self) -> Root:
        self._require_connected()
        return max(self.short_roots, key=lambda r: (sum(r), r))

    def _require_connected(self) -> None:
        if not self.diagram.is_connected:
            raise DiagramError("highest roots need a connected diagram", diagram=self.diagram.name)

    # -- construction ------------------------------------------------------------------

    def _cartan_matrix(self, bonds: Sequence[Bond]) -> Tuple[Tuple[int, ...], ...]:
        matrix = [[2 if i == j else 0 for j in range(self.rank)] for i in range(self.rank)]
        for bond in bonds:
            a, b = self._position[bond.a], self._position[bond.b]
            if bond.short is None:
                matrix[a][b] = matrix[b][a] = -1
            else:
                long_i, short_i = self._position[bond.long], self._position[bond.short]
                matrix[long_i][short_i] = -bond.multiplicity
                matrix[short_i][long_i] = -1
        return tuple(tuple(row) for row in matrix)

    def _squared_lengths(self, diagram: MarkedDiagram) -> Tuple[int, ...]:
        relative: Dict[int, Fraction] = {}
        for component in diagram.components():
            start = min(component)
            relative[start] = Fraction(1)
            pending = [start]
            while pending:
                node = pending.pop()
                for bond in diagram.bonds:
                    if node not in (bond.a, bond.b):
                        continue
                    other = bond.b if node == bond.a else bond.a
                    if other in relative:
                        continue
                    if bond.short is None:
                        relative[other] = relative[node]
                    elif other == bond.short:
                        relative[other] = relative[node] / bond.multiplicity
                    else:
                        relative[other] = relative[node] * bond.multiplicity
                    pending.append(other)
            scale = 2 / min(relative[v] for v in component)
            for v in component:
                relative[v] *= scale
        return tuple(int(relative[node]) for node in self.nodes)

    def _generate_positive_roots(self) -> Tuple[Root, ...]:
        simple = [tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)]
        found = set(simple)
        frontier = list(simple)
        while frontier:
            next_frontier = []
            for root in frontier:
                for i in range(self.rank):
                    image = self.reflect_root(root, i)
                    if image not in found and all(c >= 0 for c in image) and any(image):
                        found.add(image)
                        next_frontier.append(image)
            frontier = next_frontier
        return tuple(sorted(found, key=lambda r: (sum(r), r)))

    # -- indices -----------------------------------------------------------------------

    def index(self, node: int) -> int:
        try:
            return self._position[node]
        except KeyError:
            raise DiagramError("node not in root system", node=node) from None

    def indices(self, nodes: Iterable[int]) -> FrozenSet[int]:
        return frozenset(self.index(node) for node in nodes)

    def simple_root(self, node: int) -> Root:
        i = self.index(node)
        return tuple(1 if j == i else 0 for j in range(self.rank))

    # -- roots -------------------------------------------------------------------------

    def is_root(self, vector: Sequence[int]) -> bool:
        vector = tuple(vector)
        return vector in self._root_index or tuple(-c for c in vector) in self._root_index

    def height(self, root: Root) -> int:
        return sum(root)

    def root_length_sq(self, root: Sequence[int]) -> Fraction:
        return self.inner_product(tuple(root), tuple(root))

    def is_short(self, root: Root) -> bool:
        """All roots of a simply-laced system count as short."""
        return tuple(abs(c) for c in root) in self.short_roots

    def coroot(self, root: Sequence[int]) -> Tuple[int, ...]:
        """Coefficients of root^vee in the simple coroot basis."""
        norm = self.root_length_sq(root)
        coefficients = [Fraction(root[j] * self.lengths[j]) / norm for j in range(self.rank)]
        return tuple(int(c) for c in coefficients)

    def reflect_root(self, root: Root, i: int) -> Root:
        pairing = sum(root[j] * self.cartan[j][i] for j in range(self.rank))
        return tuple(c - pairing if j == i else c for j, c in enumerate(root))

    def roots_supported_in(self, nodes: Iterable[int]) -> Tuple[Root, ...]:
        """Positive roots of the Levi subsystem spanned by the given nodes."""
        allowed = self.indices(nodes)
        return tuple(
            root for root in self.positive_roots if all(c == 0 or j in allowed for j, c in enumerate(root))
        )

    def coefficient(self, root: Sequence[int], node: int) -> int:
        return root[self.index(node)]

    # -- weights -----------------------------------------------------------------------

    def weight(self, coords: Sequence[Union[int, Fraction]]) -> Weight:
        if len(coords) != self.rank:
            raise DimensionError("weight has the wrong rank", expected=self.rank, actual=len(coords))
        return Weight(tuple(coords))

    def zero_weight(self) -> Weight:
        return Weight(tuple(Fraction(0) for _ in range(self.rank)))

    def fundamental_weight(self, node: int) -> Weight:
        i = self.index(node)
        return Weight(tuple(Fraction(1 if j == i else 0) for j in range(self.rank)))

    def root_weight(self, root: Sequence[int]) -> Weight:
        """Fundamental coordinates of a root."""
        return Weight(tuple(Fraction(sum(root[j] * self.cartan[j][k] for j in range(self.rank))) for k in range(self.rank)))

    def root_coordinates(self, weight: Weight) -> Tuple[Fraction, ...]:
        """Coordinates of a weight in the simple-root basis."""
        self._check_weight(weight)
        return tuple(
            sum((weight[j] * self._cartan_inverse[j][k] for j in range(self.rank)), Fraction(0))
            for k in range(self.rank)
        )

    def pairing(self, weight: Weight, root: Sequence[int]) -> Fraction:
        """<weight, root^vee>."""
        self._check_weight(weight)
        return sum((c * weight[j] for j, c in enumerate(self.coroot(root))), Fraction(0))

    def reflect(self, weight: Weight, node: int) -> Weight:
        """Simple reflection s_node applied to a weight."""
        return self.reflect_index(weight, self.index(node))

    def reflect_index(self, weight: Weight, i: int) -> Weight:
        value = weight[i]
        if value == 0:
            return weight
        row = self.cartan[i]
        return Weight(tuple(c - value * row[k] for k, c in enumerate(weight.coords)))

    def inner_product(self, u: Union[Weight, Sequence[int]], v: Union[Weight, Sequence[int]]) -> Fraction:
        """Symmetric invariant form; arguments are weights or roots in the simple-root basis."""
        left = self._as_root_coordinates(u)
        right = self._as_root_coordinates(v)
        return sum(
            (left[i] * self.form[i][j] * right[j] for i in range(self.rank) for j in range(self.rank) if left[i] and right[j]),
            Fraction(0),
        )

    def _as_root_coordinates(self, value: Union[Weight, Sequence[int]]) -> Tuple[Fraction, ...]:
        if isinstance(value, Weight):
            return self.root_coordinates(value)
        if len(value) != self.rank:
            raise DimensionError("root has the wrong rank", expected=self.rank, actual=len(value))
        return tuple(Fraction(c) for c in value)

    def _check_weight(self, weight: Weight) -> None:
        if len(weight) != self.rank:
            raise DimensionError("weight has the wrong rank", expected=self.rank, actual=len(weight))

    def weyl_dimension(self, levi: Iterable[int], highest_weight: Weight) -> int:
        """Dimension of the irreducible Levi module with the given highest weight."""
        levi = frozenset(levi)
        self._check_weight(highest_weight)
        for node in sorted(levi):
            if highest_weight[self.index(node)] < 0:
                raise WeightError("weight is not dominant for the Levi", node=node, weight=str(highest_weight))
        shifted = highest_weight + self.rho
        dimension = Fraction(1)
        for root in self.roots_supported_in(levi):
            dimension *= self.pairing(shifted, root) / self.pairing(self.rho, root)
        if dimension.denominator != 1:
            raise WeightError("Weyl dimension is not an integer", weight=str(highest_weight))
        return int(dimension)


@lru_cache(maxsize=64)
def _cached_root_system(nodes: Tuple[int, ...], bonds: Tuple[Bond, ...]) -> RootSystem:
    return RootSystem(MarkedDiagram(nodes=nodes, bonds=bonds))


def build_root_system(diagram: MarkedDiagram) -> RootSystem:
    """Root system of a finite diagram; marks are ignored and systems are cached by shape."""
    return _cached_root_system(diagram.nodes, diagram.bonds)


def extended_attach(rs: RootSystem, gamma: Sequence[int], diagram: MarkedDiagram) -> MarkedDiagram:
    """Attach a node for -gamma to the nodes it is not orthogonal to."""
    gamma = tuple(gamma)
    if gamma not in rs.positive_roots:
        raise DiagramError("not a positive root", root=gamma)

    present = [node for node in diagram.nodes if diagram.affine_node != node]
    new_node = min(min(present, default=1), 1) - 1
    gamma_sq = rs.root_length_sq(gamma)
    bonds: List[Bond] = list(diagram.bonds)
    for node in present:
        alpha = rs.simple_root(node)
        if rs.inner_product(gamma, alpha) == 0:
            continue
        alpha_sq = rs.root_length_sq(alpha)
        product = rs.pairing(rs.root_weight(gamma), alpha) * rs.pairing(rs.root_weight(alpha), gamma)
        if gamma_sq == alpha_sq:
            short = None
        else:
            short = node if alpha_sq < gamma_sq else new_node
        bonds.append(Bond(new_node, node, int(product), short=short))

    if len(bonds) == len(diagram.bonds):
        raise DiagramError("root is orthogonal to every node", root=gamma)

    labels = dict(diagram.labels)
    labels[new_node] = "-γ"
    return MarkedDiagram(
        nodes=(new_node,) + tuple(present),
        bonds=tuple(bonds),
        crossed=diagram.crossed,
        singular=diagram.singular,
        labels=tuple(labels.items()),
        affine_node=new_node,
    )
