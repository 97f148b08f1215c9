"""Parabolic quotients ^S W as posets.

An element of ^S W is stored through its canonical key: the image of
lambda0 = sum of the crossed fundamental weights under the inverse of the element.
Right multiplication by s_i acts on keys by the simple reflection s_i, so the sign of
key[i] tells whether w*s_i goes up, stays in the coset W_S w, or goes down.
"""

from collections import deque
from functools import lru_cache
from math import prod
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from roots.diagram import MarkedDiagram
from roots.system import RootSystem, Weight, build_root_system
from utils.config_loader import settings
from utils.constants import WEYL_GROUP_ORDERS
from utils.errors import PosetTooLargeError
from utils.logging_utils import execution_logger

Key = Tuple[int, ...]

LEAVES = -1


def group_order(diagram: MarkedDiagram) -> int:
    """|W| of a (possibly disconnected) diagram; 1 for the empty diagram."""
    return prod(WEYL_GROUP_ORDERS[t.letter](t.rank) for t in diagram.types)


def quotient_size(diagram: MarkedDiagram) -> int:
    """|W| / |W_S| without generating anything."""
    return group_order(diagram) // group_order(diagram.induced(diagram.levi))


def require_size(diagram: MarkedDiagram, allow_large: Optional[bool] = None) -> int:
    """Refuse quotients above the large-quotient limit unless explicitly allowed."""
    size = quotient_size(diagram)
    engine = settings.engine
    allowed = engine.allow_large if allow_large is None else allow_large
    if size > engine.large_quotient_limit and not allowed:
        raise PosetTooLargeError(
            "quotient needs --allow-large", diagram=diagram.name, size=size, limit=engine.large_quotient_limit
        )
    if size > engine.max_elements:
        raise PosetTooLargeError("poset too large", diagram=diagram.name, size=size, cap=engine.max_elements)
    return size


class CosetPoset:
    """The quotient ^S W with lengths, transitions, Hasse covers and a Bruhat oracle."""

    def __init__(
        self,
        diagram: MarkedDiagram,
        rs: RootSystem,
        keys: List[Key],
        lengths: List[int],
        transitions: List[Tuple[int, ...]],
        parents: List[Tuple[int, int]],
    ):
        self.diagram = diagram
        self.rs = rs
        self.keys = keys
        self.lengths = lengths
        self.transitions = transitions
        self.parents = parents
        self.ids: Dict[Key, int] = {key: i for i, key in enumerate(keys)}
        self.levi: FrozenSet[int] = diagram.levi
        self.top = len(keys) - 1
        self.cache_ideals = len(keys) <= settings.engine.bruhat_table_threshold

        self._bruhat: Dict[Tuple[int, int], bool] = {}
        self._ideals: Dict[int, FrozenSet[int]] = {}
        self._lower_covers: Dict[int, Tuple[Tuple[int, Optional[int]], ...]] = {}
        self._upper_covers: Optional[List[List[Tuple[int, Optional[int]]]]] = None
        self._words: Dict[int, Tuple[int, ...]] = {0: ()}
        # tables built on top of this poset (KL), released with it
        self.memo: Dict[str, Any] = {}
        self._coroot_data = [
            (self.rs.coroot(root), self.rs.root_weight(root).as_ints()) for root in self.rs.positive_roots
        ]

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self):
        return iter(range(len(self.keys)))

    @property
    def rank(self) -> int:
        return self.rs.rank

    @property
    def elements(self) -> range:
        return range(len(self.keys))

    @property
    def max_length(self) -> int:
        return self.lengths[self.top]

    def node(self, i: int) -> int:
        """Node id of the i-th simple root."""
        return self.rs.nodes[i]

    def by_length(self) -> List[List[int]]:
        """Element ids grouped by length."""
        levels: List[List[int]] = [[] for _ in range(self.max_length + 1)]
        for x in self.elements:
            levels[self.lengths[x]].append(x)
        return levels

    # -- moves -------------------------------------------------------------------------

    def up(self, x: int, i: int) -> Optional[int]:
        """x*s_i when it lies in ^S W and is longer than x."""
        key = self.keys[x]
        return self.transitions[x][i] if key[i] > 0 else None

    def down(self, x: int, i: int) -> Optional[int]:
        key = self.keys[x]
        return self.transitions[x][i] if key[i] < 0 else None

    def descents(self, x: int) -> List[int]:
        """Indices i with x*s_i < x inside ^S W."""
        return [i for i, c in enumerate(self.keys[x]) if c < 0]

    def ascents(self, x: int) -> List[int]:
        return [i for i, c in enumerate(self.keys[x]) if c > 0]

    def walk(self, start: int, word: Iterable[int]) -> Optional[int]:
        """Right-multiply by simple reflections (node ids); None when the path leaves ^S W."""
        current = start
        for node in word:
            nxt = self.transitions[current][self.rs.index(node)]
            if nxt == LEAVES:
                return None
            current = nxt
        return current

    def element(self, word: Sequence[int]) -> Optional[int]:
        """Id of the quotient element reached from e along a word of node ids."""
        return self.walk(0, word)

    # -- words and support -------------------------------------------------------------

    def word(self, x: int) -> Tuple[int, ...]:
        """A reduced word of x as node ids (read left to right)."""
        if x in self._words:
            return self._words[x]
        chain = []
        current = x
        while current not in self._words:
            parent, i = self.parents[current]
            chain.append((current, i))
            current = parent
        word = self._words[current]
        for element, i in reversed(chain):
            word = word + (self.node(i),)
            self._words[element] = word
        return word

    def support(self, x: int) -> FrozenSet[int]:
        """Simple roots in a reduced word; independent of the word chosen."""
        return frozenset(self.word(x))

    # -- Bruhat order ------------------------------------------------------------------

    def bruhat_leq(self, x: int, w: int) -> bool:
        """x <= w in the Bruhat order restricted to ^S W."""
        pending = []
        while True:
            if self.lengths[x] >= self.lengths[w]:
                result = x == w
                break
            if x == 0:
                result = True
                break
            cached = self._bruhat.get((x, w))
            if cached is not None:
                result = cached
                break
            pending.append((x, w))
            i = next(i for i, c in enumerate(self.keys[w]) if c < 0)
            w = self.transitions[w][i]
            xs = self.transitions[x][i]
            if xs != LEAVES and self.lengths[xs] < self.lengths[x]:
                x = xs
        for pair in pending:
            self._bruhat[pair] = result
        return result

    def lower_ideal(self, w: int) -> FrozenSet[int]:
        """{x : x <= w}, built along the parent chain of w."""
        if w in self._ideals:
            return self._ideals[w]
        chain = []
        current = w
        while current not in self._ideals and current != 0:
            parent, i = self.parents[current]
            chain.append((current, i))
            current = parent
        ideal: Set[int] = set(self._ideals.get(current, frozenset((0,))))
        for element, i in reversed(chain):
            ideal |= {y for y in (self.up(z, i) for z in ideal) if y is not None}
            if self.cache_ideals:
                self._ideals[element] = frozenset(ideal)
        result = frozenset(ideal)
        self._ideals.setdefault(w, result)
        return result

    def upper_ideal(self, x: int) -> FrozenSet[int]:
        found = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for z, _ in self.upper_covers(y):
                if z not in found:
                    found.add(z)
                    queue.append(z)
        return frozenset(found)

    def interval_elements(self, v: int, w: int) -> FrozenSet[int]:
        return frozenset(x for x in self.lower_ideal(w) if self.bruhat_leq(v, x))

    # -- covers ------------------------------------------------------------------------

    def label_between(self, lo: int, hi: int) -> Optional[int]:
        """Node id alpha with hi = lo*s_alpha, else None."""
        for i, target in enumerate(self.transitions[lo]):
            if target == hi:
                return self.node(i)
        return None

    def lower_covers(self, w: int) -> Tuple[Tuple[int, Optional[int]], ...]:
        """Elements covered by w with their labels, found through reflections w*t."""
        cached = self._lower_covers.get(w)
        if cached is not None:
            return cached
        key = self.keys[w]
        target_length = self.lengths[w] - 1
        found = set()
        for coroot, root_weight in self._coroot_data:
            pairing = sum(c * k for c, k in zip(coroot, key))
            if pairing >= 0:
                continue
            candidate = tuple(k - pairing * r for k, r in zip(key, root_weight))
            x = self.ids.get(candidate)
            if x is not None and self.lengths[x] == target_length:
                found.add(x)
        covers = tuple((x, self.label_between(x, w)) for x in sorted(found))
        self._lower_covers[w] = covers
        return covers

    def upper_covers(self, x: int) -> List[Tuple[int, Optional[int]]]:
        if self._upper_covers is None:
            upper: List[List[Tuple[int, Optional[int]]]] = [[] for _ in self.elements]
            for w in self.elements:
                for lo, label in self.lower_covers(w):
                    upper[lo].append((w, label))
            self._upper_covers = upper
        return self._upper_covers[x]

    def covers(self) -> List[Tuple[int, int, Optional[int]]]:
        """All Hasse edges (lo, hi, label) in a stable order."""
        return [(lo, hi, label) for hi in self.elements for lo, label in self.lower_covers(hi)]

    # -- standard elements -------------------------------------------------------------

    def phi(self, subset: Iterable[int]) -> int:
        """Longest element of the quotient of W_I, by greedy ascent inside I."""
        allowed = sorted(self.rs.index(node) for node in subset)
        current = 0
        moved = True
        while moved:
            moved = False
            for i in allowed:
                nxt = self.up(current, i)
                if nxt is not None:
                    current = nxt
                    moved = True
                    break
        return current

    # -- weights -----------------------------------------------------------------------

    def apply_word(self, word: Sequence[int], weight: Weight) -> Weight:
        """Linear action of the product of simple reflections in word on a weight."""
        for node in reversed(word):
            weight = self.rs.reflect(weight, node)
        return weight

    def descriptor(self) -> dict:
        return {
            "diagram": self.diagram.descriptor(),
            "elements": [{"id": i, "len": self.lengths[i], "key": list(self.keys[i])} for i in self.elements],
            "transitions": [list(row) for row in self.transitions],
            "covers": [
                {"lo": lo, "hi": hi, **({"label": label} if label is not None else {})}
                for lo, hi, label in self.covers()
            ],
        }


def generate_coset_poset(diagram: MarkedDiagram, max_elements: Optional[int] = None) -> CosetPoset:
    """Breadth-first generation of ^S W from the orbit of lambda0 under right multiplication."""
    cap = max_elements or settings.engine.max_elements
    rs = build_root_system(diagram)
    crossed = rs.indices(diagram.crossed)
    start: Key = tuple(1 if i in crossed else 0 for i in range(rs.rank))
    rows = [tuple(int(c) for c in row) for row in rs.cartan]

    target = diagram.name
    execution_logger.log_step_start("generate_coset_poset", target, crossed=sorted(diagram.crossed))

    keys: List[Key] = [start]
    lengths: List[int] = [0]
    parents: List[Tuple[int, int]] = [(0, -1)]
    layer: List[Key] = [start]
    ids: Dict[Key, int] = {start: 0}
    depth = 0
    while layer:
        discovered: Dict[Key, Tuple[int, int]] = {}
        for key in layer:
            parent = ids[key]
            for i, value in enumerate(key):
                if value <= 0:
                    continue
                image = tuple(k - value * r for k, r in zip(key, rows[i]))
                if image not in discovered:
                    discovered[image] = (parent, i)
        depth += 1
        layer = sorted(discovered)
        for key in layer:
            ids[key] = len(keys)
            keys.append(key)
            lengths.append(depth)
            parents.append(discovered[key])
        if len(keys) > cap:
            execution_logger.log_step_end("generate_coset_poset", target, status="failed", size=len(keys))
            raise PosetTooLargeError("poset too large", diagram=target, cap=cap)

    transitions: List[Tuple[int, ...]] = []
    for key in keys:
        row = []
        for i, value in enumerate(key):
            if value == 0:
                row.append(LEAVES)
            else:
                row.append(ids[tuple(k - value * r for k, r in zip(key, rows[i]))])
        transitions.append(tuple(row))

    poset = CosetPoset(diagram, rs, keys, lengths, transitions, parents)
    expected = quotient_size(diagram)
    execution_logger.log_validation(f"quotient_size:{target}", expected, len(poset), expected == len(poset))
    execution_logger.log_step_end("generate_coset_poset", target, size=len(poset), top_length=poset.max_length)
    return poset


def full_group(diagram: MarkedDiagram, max_elements: Optional[int] = None) -> CosetPoset:
    """W itself, as the quotient with every node crossed."""
    return generate_coset_poset(diagram.with_marks(crossed=diagram.nodes, singular=()), max_elements)


@lru_cache(maxsize=16)
def cached_full_group(diagram: MarkedDiagram) -> CosetPoset:
    """Full group shared by every caller asking for the same diagram."""
    return full_group(diagram)


def longest_element(group: CosetPoset, subset: Iterable[int]) -> int:
    """w_I in the full group."""
    return group.phi(subset)


def multiply(group: CosetPoset, y: int, z: int) -> int:
    """Group product y*z in the full group."""
    result = group.walk(y, group.word(z))
    assert result is not None
    return result


def inverse(group: CosetPoset, y: int) -> int:
    result = group.element(tuple(reversed(group.word(y))))
    assert result is not None
    return result


def to_group(group: CosetPoset, poset: CosetPoset, x: int) -> int:
    """Group id of a quotient element."""
    result = group.element(poset.word(x))
    assert result is not None
    return result


def from_group(group: CosetPoset, poset: CosetPoset, y: int) -> Optional[int]:
    """Quotient id of a group element that is a minimal coset representative, else None."""
    x = poset.element(group.word(y))
    if x is None or poset.lengths[x] != group.lengths[y]:
        return None
    return x
