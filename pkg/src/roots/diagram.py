"""Marked Dynkin diagrams: construction, validation, subdiagrams, duals and covers.

Nodes are integer ids (Bourbaki numbering for diagrams built by :func:`dynkin`).
A bond between a long and a short simple root records its short endpoint, which is
where the arrow of the usual picture points.
"""

import json
from dataclasses import dataclass, field, replace
from itertools import permutations
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from utils.config_loader import settings
from utils.constants import EMPTY_DIAGRAM, VALID_RANKS
from utils.errors import DiagramError


@dataclass(frozen=True)
class Bond:
    """Edge of a Dynkin diagram."""

    a: int
    b: int
    multiplicity: int = 1
    short: Optional[int] = None

    @property
    def long(self) -> Optional[int]:
        if self.short is None:
            return None
        return self.b if self.short == self.a else self.a

    def flipped(self) -> "Bond":
        """Same bond with the arrow reversed."""
        if self.short is None:
            return self
        return Bond(self.a, self.b, self.multiplicity, self.long)

    def joins(self, nodes: Iterable[int]) -> bool:
        node_set = set(nodes)
        return self.a in node_set and self.b in node_set


@dataclass(frozen=True)
class DynkinType:
    """Type of a connected diagram together with its nodes in Bourbaki order."""

    letter: str
    rank: int
    order: Tuple[int, ...]

    @property
    def name(self) -> str:
        return f"{self.letter}{self.rank}"

    def index(self, node: int) -> int:
        """Bourbaki index (1-based) of a node."""
        return self.order.index(node) + 1


@dataclass(frozen=True)
class MarkedDiagram:
    """A Dynkin diagram with crossed nodes (outside the Levi) and singular nodes."""

    nodes: Tuple[int, ...]
    bonds: Tuple[Bond, ...] = ()
    crossed: FrozenSet[int] = frozenset()
    singular: FrozenSet[int] = frozenset()
    labels: Tuple[Tuple[int, str], ...] = ()
    affine_node: Optional[int] = None
    _types: Tuple[DynkinType, ...] = field(default=(), init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "bonds", tuple(self.bonds))
        object.__setattr__(self, "crossed", frozenset(self.crossed))
        object.__setattr__(self, "singular", frozenset(self.singular))
        object.__setattr__(self, "labels", tuple(sorted(dict(self.labels).items())))
        self._validate()

    def _validate(self) -> None:
        if len(set(self.nodes)) != len(self.nodes):
            duplicate = next(v for v in self.nodes if self.nodes.count(v) > 1)
            raise DiagramError("duplicate node id", node=duplicate)

        node_set = set(self.nodes)
        seen_pairs = set()
        for bond in self.bonds:
            if bond.a not in node_set or bond.b not in node_set or bond.a == bond.b:
                raise DiagramError("bond references a missing node", bond=(bond.a, bond.b))
            pair = frozenset((bond.a, bond.b))
            if pair in seen_pairs:
                raise DiagramError("parallel bonds", bond=(bond.a, bond.b))
            seen_pairs.add(pair)
            touches_affine = self.affine_node in pair
            max_multiplicity = 4 if touches_affine else 3
            if not 1 <= bond.multiplicity <= max_multiplicity:
                raise DiagramError("bond multiplicity out of range", bond=(bond.a, bond.b))
            if bond.short is not None and bond.short not in pair:
                raise DiagramError("arrow endpoint not on its bond", bond=(bond.a, bond.b))
            if bond.multiplicity in (2, 3) and bond.short is None and not touches_affine:
                raise DiagramError("multiple bond without direction", bond=(bond.a, bond.b))

        for name, subset in (("crossed", self.crossed), ("singular", self.singular)):
            missing = subset - node_set
            if missing:
                raise DiagramError(f"{name} node not in diagram", node=min(missing))

        finite_nodes = [v for v in self.nodes if v != self.affine_node]
        finite_bonds = [b for b in self.bonds if self.affine_node not in (b.a, b.b)]
        graph = nx.Graph()
        graph.add_nodes_from(finite_nodes)
        graph.add_edges_from((b.a, b.b) for b in finite_bonds)
        types = []
        for component in sorted(nx.connected_components(graph), key=min):
            members = sorted(component)
            types.append(_identify(members, [b for b in finite_bonds if b.joins(component)]))
        object.__setattr__(self, "_types", tuple(types))

    # -- structure ---------------------------------------------------------------------

    @property
    def types(self) -> Tuple[DynkinType, ...]:
        """Types of the connected components of the finite part."""
        return self._types

    @property
    def name(self) -> str:
        if not self.nodes:
            return EMPTY_DIAGRAM
        return "x".join(t.name for t in self._types)

    @property
    def levi(self) -> FrozenSet[int]:
        """Nodes of the Levi subalgebra, S = nodes minus crossed."""
        return frozenset(self.nodes) - self.crossed

    @property
    def is_connected(self) -> bool:
        return len(self._types) == 1

    @property
    def is_simply_laced(self) -> bool:
        return all(b.multiplicity == 1 for b in self.bonds)

    def dynkin_type(self) -> DynkinType:
        """Type of a connected diagram."""
        if len(self._types) != 1:
            raise DiagramError("diagram is not connected", components=len(self._types))
        return self._types[0]

    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes)
        for bond in self.bonds:
            graph.add_edge(bond.a, bond.b, multiplicity=bond.multiplicity, short=bond.short)
        return graph

    def components(self) -> List[FrozenSet[int]]:
        return [frozenset(c) for c in sorted(nx.connected_components(self.graph()), key=min)]

    def neighbours(self, node: int) -> FrozenSet[int]:
        return frozenset(self.graph().neighbors(node))

    def label(self, node: int) -> str:
        return dict(self.labels).get(node, str(node))

    def node_for_label(self, token: Union[int, str]) -> int:
        """Resolve a node id or a letter alias."""
        if isinstance(token, int):
            return token
        text = str(token).strip()
        if text.lstrip("-").isdigit():
            return int(text)
        for node, alias in self.labels:
            if alias == text:
                return node
        raise DiagramError("unknown node label", label=text)

    # -- derived diagrams --------------------------------------------------------------

    def with_marks(
        self,
        crossed: Optional[Iterable[int]] = None,
        singular: Optional[Iterable[int]] = None,
    ) -> "MarkedDiagram":
        return replace(
            self,
            crossed=frozenset(self.crossed if crossed is None else crossed),
            singular=frozenset(self.singular if singular is None else singular),
        )

    def induced(self, subset: Iterable[int]) -> "MarkedDiagram":
        """Induced subdiagram on a node subset, keeping marks and labels."""
        keep = set(subset)
        return MarkedDiagram(
            nodes=tuple(v for v in self.nodes if v in keep),
            bonds=tuple(b for b in self.bonds if b.joins(keep)),
            crossed=self.crossed & keep,
            singular=self.singular & keep,
            labels=tuple((v, s) for v, s in self.labels if v in keep),
            affine_node=self.affine_node if self.affine_node in keep else None,
        )

    def descriptor(self) -> Dict[str, Any]:
        """Canonical JSON-able description, used for cache keys and serialization."""
        return {
            "name": self.name,
            "nodes": list(self.nodes),
            "bonds": [[b.a, b.b, b.multiplicity, b.short] for b in self.bonds],
            "crossed": sorted(self.crossed),
            "singular": sorted(self.singular),
        }


@dataclass(frozen=True)
class Subdiagram:
    """An induced subdiagram with its components and S-trivial flags."""

    diagram: MarkedDiagram
    components: Tuple[FrozenSet[int], ...]
    s_trivial: Tuple[bool, ...]

    @property
    def nodes(self) -> FrozenSet[int]:
        return frozenset(self.diagram.nodes)

    @property
    def has_s_trivial_component(self) -> bool:
        return any(self.s_trivial)


# -- recognition -----------------------------------------------------------------------


def _path_order(nodes: Sequence[int], adjacency: Mapping[int, List[int]]) -> List[int]:
    ends = [v for v in nodes if len(adjacency[v]) <= 1]
    path = [min(ends)]
    previous = None
    while True:
        step = [v for v in adjacency[path[-1]] if v != previous]
        if not step:
            return path
        previous = path[-1]
        path.append(step[0])


def _arm(center: int, start: int, adjacency: Mapping[int, List[int]]) -> List[int]:
    arm = [start]
    previous = center
    while True:
        step = [v for v in adjacency[arm[-1]] if v != previous]
        if not step:
            return arm
        if len(step) > 1:
            raise DiagramError("more than one branch node", node=arm[-1])
        previous = arm[-1]
        arm.append(step[0])


def _identify(nodes: Sequence[int], bonds: Sequence[Bond]) -> DynkinType:
    """Recognise a connected finite-type Dynkin graph."""
    n = len(nodes)
    if n == 1:
        return DynkinType("A", 1, (nodes[0],))
    if len(bonds) != n - 1:
        raise DiagramError("diagram contains a cycle", node=nodes[0])

    adjacency: Dict[int, List[int]] = {v: [] for v in nodes}
    for bond in bonds:
        adjacency[bond.a].append(bond.b)
        adjacency[bond.b].append(bond.a)
    for v in adjacency:
        adjacency[v].sort()
    degrees = {v: len(adjacency[v]) for v in nodes}

    multiple = [b for b in bonds if b.multiplicity > 1]
    if len(multiple) > 1:
        raise DiagramError("more than one multiple bond", bond=(multiple[1].a, multiple[1].b))

    if multiple:
        bond = multiple[0]
        if bond.multiplicity == 3:
            if n != 2:
                raise DiagramError("triple bond outside G2", bond=(bond.a, bond.b))
            return DynkinType("G", 2, (bond.short, bond.long))
        if max(degrees.values()) > 2:
            raise DiagramError("branch node in a diagram with a double bond", node=max(degrees, key=degrees.get))
        if n == 2:
            return DynkinType("B", 2, (bond.long, bond.short))
        path = _path_order(nodes, adjacency)
        ends = ({path[0], path[1]}, {path[-2], path[-1]})
        pair = {bond.a, bond.b}
        if pair == ends[0]:
            path.reverse()
        elif pair != ends[1]:
            if n == 4:
                if path[2] != bond.short:
                    path.reverse()
                return DynkinType("F", 4, tuple(path))
            raise DiagramError("double bond in an interior position", bond=(bond.a, bond.b))
        letter = "B" if path[-1] == bond.short else "C"
        return DynkinType(letter, n, tuple(path))

    if max(degrees.values()) <= 2:
        return DynkinType("A", n, tuple(_path_order(nodes, adjacency)))

    branch = [v for v in nodes if degrees[v] >= 3]
    if len(branch) != 1 or degrees[branch[0]] != 3:
        raise DiagramError("unsupported branching", node=branch[-1])
    center = branch[0]
    arms = sorted((_arm(center, v, adjacency) for v in adjacency[center]), key=lambda a: (len(a), min(a)))
    lengths = tuple(len(a) for a in arms)

    if lengths[:2] == (1, 1):
        if lengths[2] == 1:
            arms.sort(key=min)
        tail = arms.pop(2 if lengths[2] > 1 else 0)
        short_arms = sorted(arms, key=min)
        order = tuple(reversed(tail)) + (center, short_arms[0][0], short_arms[1][0])
        return DynkinType("D", n, order)
    if lengths in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
        one, two, long_arm = arms
        order = (two[1], one[0], two[0], center) + tuple(long_arm)
        return DynkinType("E", n, order)
    raise DiagramError("not a finite-type Dynkin graph", node=center)


# -- construction ----------------------------------------------------------------------


def _bonds_for(letter: str, rank: int) -> List[Bond]:
    n = rank
    chain = [Bond(i, i + 1) for i in range(1, n)]
    if letter == "A":
        return chain
    if letter == "B":
        return chain[:-1] + [Bond(n - 1, n, 2, short=n)]
    if letter == "C":
        return chain[:-1] + [Bond(n - 1, n, 2, short=n - 1)]
    if letter == "D":
        if n == 2:
            return []
        return [Bond(i, i + 1) for i in range(1, n - 1)] + [Bond(n - 2, n)]
    if letter == "E":
        return [Bond(1, 3)] + [Bond(i, i + 1) for i in range(3, n)] + [Bond(2, 4)]
    if letter == "F":
        return [Bond(1, 2), Bond(2, 3, 2, short=3), Bond(3, 4)]
    if letter == "G":
        return [Bond(1, 2, 3, short=1)]
    raise DiagramError("unknown type letter", type=letter)


def dynkin(
    letter: str,
    rank: int,
    crossed: Iterable[int] = (),
    singular: Iterable[int] = (),
    labels: Optional[Mapping[int, str]] = None,
) -> MarkedDiagram:
    """Build a Bourbaki-numbered diagram of type letter+rank."""
    letter = letter.upper()
    if letter not in VALID_RANKS or rank not in VALID_RANKS[letter]:
        raise DiagramError("unsupported type/rank", type=f"{letter}{rank}")
    if labels is None:
        labels = settings.labels.get(f"{letter}{rank}", {})
    return MarkedDiagram(
        nodes=tuple(range(1, rank + 1)),
        bonds=tuple(_bonds_for(letter, rank)),
        crossed=frozenset(crossed),
        singular=frozenset(singular),
        labels=tuple(labels.items()),
    )


def _split_type(text: str) -> Tuple[str, Optional[int]]:
    text = text.strip().upper()
    letter, digits = text[:1], text[1:]
    return letter, int(digits) if digits else None


def parse_diagram(source: Union[str, Mapping[str, Any]]) -> MarkedDiagram:
    """Parse `{"type":"F4","crossed":[1],"singular":[4],"labels":{"1":"a"}}`."""
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as e:
            raise DiagramError("diagram descriptor is not valid JSON", detail=str(e)) from e
    if not isinstance(source, Mapping) or "type" not in source:
        raise DiagramError("diagram descriptor needs a 'type' field")

    letter, rank = _split_type(str(source["type"]))
    rank = int(source.get("rank", rank or 0))
    labels = source.get("labels")
    base = dynkin(
        letter,
        rank,
        labels={int(k): str(v) for k, v in labels.items()} if labels else None,
    )
    crossed = [base.node_for_label(v) for v in source.get("crossed", [])]
    singular = [base.node_for_label(v) for v in source.get("singular", [])]
    return base.with_marks(crossed=crossed, singular=singular)


# -- operations ------------------------------------------------------------------------


def subdiagram(diagram: MarkedDiagram, subset: Iterable[int]) -> Subdiagram:
    """Induced subdiagram D(I); a component is S-trivial when it has no crossed node."""
    chosen = set(subset)
    unknown = chosen - set(diagram.nodes)
    if unknown:
        raise DiagramError("subset contains unknown nodes", node=min(unknown))
    induced = diagram.induced(chosen)
    components = tuple(induced.components()) if chosen else ()
    flags = tuple(not (component & diagram.crossed) for component in components)
    return Subdiagram(induced, components, flags)


def dual_diagram(diagram: MarkedDiagram) -> MarkedDiagram:
    """Reverse every arrow (B and C swap, F4 and G2 are relabelled)."""
    return replace(diagram, bonds=tuple(b.flipped() for b in diagram.bonds))


def simply_laced_cover(diagram: MarkedDiagram) -> MarkedDiagram:
    """Simply-laced cover of (B_n,B_{n-1}), (C_n,A_{n-1}) or of their duals.

    The dual of (B_n,B_{n-1}) is covered by (A_{2n-1},A_{2n-2}) crossed at alpha_1 and the
    dual of (C_n,A_{n-1}) by (D_{n+1},A_n) crossed at alpha_{n+1}.
    """
    if diagram.is_simply_laced:
        raise DiagramError("simply-laced diagrams have no cover", diagram=diagram.name)
    kind = diagram.dynkin_type()
    if len(diagram.crossed) != 1:
        raise DiagramError("cover needs exactly one crossed node", diagram=diagram.name)
    index = kind.index(next(iter(diagram.crossed)))
    n = kind.rank

    if (kind.letter, index) in (("B", 1), ("C", 1)):
        return dynkin("A", 2 * n - 1, crossed=[1])
    if (kind.letter, index) in (("C", n), ("B", n)):
        return dynkin("D", n + 1, crossed=[n + 1])
    raise DiagramError("no simply-laced cover for this pair", diagram=kind.name, crossed=index)


def bourbaki_relabel(diagram: MarkedDiagram) -> MarkedDiagram:
    """Renumber a connected diagram 1..n in Bourbaki order, keeping its marks."""
    if not diagram.nodes:
        return diagram
    kind = diagram.dynkin_type()
    position = {node: kind.index(node) for node in kind.order}
    return dynkin(
        kind.letter,
        kind.rank,
        crossed=[position[v] for v in diagram.crossed],
        singular=[position[v] for v in diagram.singular],
        labels={},
    )


def _automorphisms(letter: str, rank: int) -> List[Dict[int, int]]:
    identity = {i: i for i in range(1, rank + 1)}
    if letter == "A" and rank > 1:
        return [identity, {i: rank + 1 - i for i in range(1, rank + 1)}]
    if letter == "D" and rank == 4:
        maps = []
        for image in permutations((1, 3, 4)):
            mapping = dict(identity)
            mapping.update(dict(zip((1, 3, 4), image)))
            maps.append(mapping)
        return maps
    if letter == "D" and rank > 4:
        swap = dict(identity)
        swap[rank - 1], swap[rank] = rank, rank - 1
        return [identity, swap]
    if letter == "E" and rank == 6:
        return [identity, {1: 6, 2: 2, 3: 5, 4: 4, 5: 3, 6: 1}]
    return [identity]


def canonical_form(diagram: MarkedDiagram) -> Tuple[str, Tuple[int, ...], Tuple[int, ...]]:
    """(type name, crossed indices, singular indices) up to diagram automorphism."""
    if not diagram.nodes:
        return (EMPTY_DIAGRAM, (), ())
    kind = diagram.dynkin_type()
    crossed = [kind.index(v) for v in diagram.crossed]
    singular = [kind.index(v) for v in diagram.singular]
    best = min(
        (tuple(sorted(m[i] for i in crossed)), tuple(sorted(m[i] for i in singular)))
        for m in _automorphisms(kind.letter, kind.rank)
    )
    return (kind.name, best[0], best[1])


def connected_subsets(diagram: MarkedDiagram, containing: Optional[int] = None) -> List[FrozenSet[int]]:
    """All nonempty connected node subsets, optionally those containing one node."""
    graph = diagram.graph()
    nodes = list(diagram.nodes)
    found = []
    for mask in range(1, 1 << len(nodes)):
        subset = frozenset(nodes[i] for i in range(len(nodes)) if mask >> i & 1)
        if containing is not None and containing not in subset:
            continue
        if nx.is_connected(graph.subgraph(subset)):
            found.append(subset)
    return sorted(found, key=lambda s: (len(s), sorted(s)))
