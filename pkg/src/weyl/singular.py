"""Singular subposets ^S W^J and antidominant conjugation of weights."""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Tuple

from roots.system import RootSystem, Weight
from utils.errors import IntervalError
from weyl.poset import CosetPoset


@dataclass
class SingularSubposet:
    """Elements w of ^S W with w < w*s_alpha in ^S W for every alpha in J."""

    poset: CosetPoset
    singular: FrozenSet[int]
    members: Tuple[int, ...]
    bruhat_covers: Tuple[Tuple[int, int], ...] = ()
    mu_covers: Optional[Tuple[Tuple[int, int], ...]] = None
    _member_set: FrozenSet[int] = field(default=frozenset(), repr=False)

    def __post_init__(self) -> None:
        self._member_set = frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self._member_set

    def __iter__(self):
        return iter(self.members)

    def position(self, x: int) -> int:
        """1-based position in (length, id) order, as used for node numbering in reports."""
        return self.members.index(x) + 1

    def lower(self, w: int) -> FrozenSet[int]:
        """Members below w in the Bruhat order."""
        return self.poset.lower_ideal(w) & self._member_set

    def is_dashed(self, lo: int, hi: int) -> bool:
        return self.poset.lengths[hi] - self.poset.lengths[lo] > 1

    def lower_covers(self, w: int, ordering: str = "bruhat") -> Tuple[int, ...]:
        edges = self.bruhat_covers if ordering == "bruhat" else self.mu_covers
        if edges is None:
            raise IntervalError("mu-ordering has not been computed", singular=sorted(self.singular))
        return tuple(lo for lo, hi in edges if hi == w)


def is_singular_member(poset: CosetPoset, x: int, singular: Iterable[int]) -> bool:
    key = poset.keys[x]
    return all(key[poset.rs.index(node)] > 0 for node in singular)


def _maximal(poset: CosetPoset, candidates: Iterable[int]) -> List[int]:
    pool = sorted(candidates, key=lambda x: (-poset.lengths[x], x))
    maximal: List[int] = []
    for x in pool:
        if not any(poset.bruhat_leq(x, y) for y in maximal):
            maximal.append(x)
    return sorted(maximal)


def singular_subposet(poset: CosetPoset, singular: Optional[Iterable[int]] = None) -> SingularSubposet:
    """^S W^J with its Bruhat-induced covers; J defaults to the diagram's singular nodes."""
    nodes = frozenset(poset.diagram.singular if singular is None else singular)
    members = tuple(
        sorted((x for x in poset.elements if is_singular_member(poset, x, nodes)), key=lambda x: (poset.lengths[x], x))
    )
    member_set = frozenset(members)
    covers = []
    for w in members:
        below = (poset.lower_ideal(w) & member_set) - {w}
        covers.extend((lo, w) for lo in _maximal(poset, below))
    return SingularSubposet(poset, nodes, members, tuple(covers))


@dataclass(frozen=True)
class AntidominantData:
    """Antidominant conjugate of lambda + rho and the simple roots it is orthogonal to."""

    weight: Weight
    singular: FrozenSet[int]
    word: Tuple[int, ...]


def antidominant_data(rs: RootSystem, weight: Weight) -> AntidominantData:
    """Conjugate weight + rho into the antidominant chamber by reflecting positive coordinates."""
    current = weight + rs.rho
    word: List[int] = []
    while True:
        positive = [i for i, c in enumerate(current) if c > 0]
        if not positive:
            break
        current = rs.reflect_index(current, positive[0])
        word.append(rs.nodes[positive[0]])
    zero = frozenset(rs.nodes[i] for i, c in enumerate(current) if c == 0)
    return AntidominantData(current, zero, tuple(word))


def levi_dominant_conjugate(rs: RootSystem, weight: Weight, levi: Iterable[int]) -> Weight:
    """W_S-conjugate of a weight that pairs nonnegatively with every alpha in S."""
    indices = sorted(rs.indices(levi))
    current = weight
    while True:
        negative = [i for i in indices if current[i] < 0]
        if not negative:
            return current
        current = rs.reflect_index(current, negative[0])

