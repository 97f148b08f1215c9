"""Report data models."""

from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from utils.constants import SCHEMA_VERSION


class Method(str, Enum):
    """Test used to classify regular blocks."""

    PALINDROMIC = "palindromic"
    KL = "kl"
    BOTH = "both"


class Ordering(str, Enum):
    """Order on a singular subposet."""

    BRUHAT = "bruhat"
    MU = "mu"


class Criterion(str, Enum):
    """Label attached to a verdict set in reports."""

    PALINDROMIC = "palindromicity"
    KL = "kl-0/1"
    BOTH = "palindromicity and kl-0/1"
    RATIONAL_SMOOTHNESS = "rational smoothness criterion"
    GRADED_INTERVAL = "graded interval definition"
    MU_DEFINITION = "mu-ordering definition"


class CohomologyEntry(BaseModel):
    """One simple Levi module F_x inside H^i(u, L_w)."""

    element: int
    multiplicity: int = 1


class CohomologyTable(BaseModel):
    """u-cohomology of L_w, degree by degree."""

    element: int
    kostant: bool
    source: str
    degrees: Dict[int, List[CohomologyEntry]] = Field(default_factory=dict)

    @property
    def multiplicity_free(self) -> bool:
        return all(entry.multiplicity == 1 for entries in self.degrees.values() for entry in entries)

    def as_lists(self) -> Dict[int, List[int]]:
        """Degree -> element ids, repeated by multiplicity."""
        return {
            degree: [entry.element for entry in entries for _ in range(entry.multiplicity)]
            for degree, entries in sorted(self.degrees.items())
        }


class ElementVerdict(BaseModel):
    """Classification of a single element."""

    element: int
    length: int
    word: List[int]
    kostant: bool
    position: Optional[int] = None
    standard: bool = False
    subdiagram: Optional[List[int]] = None
    pruned: bool = False
    palindromic: Optional[bool] = None
    kl_zero_one: Optional[bool] = None
    poincare: Optional[List[int]] = None
    slices: Optional[List[List[int]]] = None
    bottom: Optional[int] = None
    component: Optional[int] = None
    type_a_word: Optional[str] = None


class KostantReport(BaseModel):
    """Kostant verdicts for every element of a block."""

    model_config = ConfigDict(use_enum_values=True)

    diagram: str
    crossed: List[int]
    singular: List[int] = Field(default_factory=list)
    method: Optional[Method] = None
    ordering: Optional[Ordering] = None
    criterion: Criterion
    size: int
    verdicts: List[ElementVerdict]
    quotient_poincare: Optional[List[int]] = None

    @property
    def kostant_elements(self) -> List[int]:
        return [v.element for v in self.verdicts if v.kostant]

    @property
    def standard_elements(self) -> List[int]:
        return [v.element for v in self.verdicts if v.standard]

    @property
    def kostant_count(self) -> int:
        return len(self.kostant_elements)

    @property
    def standard_count(self) -> int:
        return len(self.standard_elements)

    def verdict(self, element: int) -> ElementVerdict:
        for v in self.verdicts:
            if v.element == element:
                return v
        raise KeyError(element)

    def summary(self) -> Dict[str, Any]:
        return {
            "diagram": self.diagram,
            "crossed": self.crossed,
            "singular": self.singular,
            "criterion": self.criterion,
            "elements": self.size,
            "kostant": self.kostant_count,
            "standard": self.standard_count,
        }

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for v in self.verdicts:
            rows.append(
                {
                    "Element": v.element,
                    "Position": v.position,
                    "Length": v.length,
                    "Word": " ".join(str(n) for n in v.word),
                    "Kostant": v.kostant,
                    "Standard": v.standard,
                    "Subdiagram": " ".join(str(n) for n in v.subdiagram or []),
                    "Pruned": v.pruned,
                    "Palindromic": v.palindromic,
                    "KL 0/1": v.kl_zero_one,
                    "Poincare": " ".join(str(c) for c in v.poincare or []),
                    "Type A word": v.type_a_word,
                }
            )
        return pd.DataFrame(rows)


class BijectionVerdict(BaseModel):
    """Outcome of checking Kostant modules against connected subdiagrams."""

    diagram: str
    crossed: List[int]
    applies: bool
    holds: Optional[bool] = None
    reason: str = ""
    cover: Optional[str] = None
    kostant_count: Optional[int] = None
    subdiagram_count: Optional[int] = None
    unmatched_kostant: List[int] = Field(default_factory=list)
    non_kostant_images: List[int] = Field(default_factory=list)


class ComplexSummary(BaseModel):
    """Checks run on a signed BGG complex."""

    diagram: str
    element: int
    kostant: bool
    term_sizes: List[int]
    arrows: int
    squares: int
    backtracked: bool = False
    bad_squares: List[Tuple[int, int, int, int]] = Field(default_factory=list)
    bad_products: List[int] = Field(default_factory=list)
    crowded_pairs: List[Tuple[int, int]] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.bad_squares or self.bad_products or self.crowded_pairs)


class ResolutionTerm(BaseModel):
    """One term R(-shift)^rank summed over a rank slice."""

    index: int
    elements: List[int]
    dimensions: List[int]
    shifts: Dict[int, int]

    @property
    def betti(self) -> int:
        return sum(self.dimensions)


class ResolutionData(BaseModel):
    """Minimal free resolution read off a BGG resolution."""

    pair: str
    k: int
    weight: List[str]
    singular: List[int]
    reduced: str
    terms: List[ResolutionTerm]

    @property
    def betti(self) -> List[int]:
        return [term.betti for term in self.terms]

    @property
    def shifts(self) -> List[List[int]]:
        return [sorted(term.shifts) for term in self.terms]

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def display(self) -> str:
        """0 -> R(-a)^b -> ... -> R -> 0, highest index on the left."""
        parts = []
        for term in reversed(self.terms):
            pieces = []
            for shift, rank in sorted(term.shifts.items()):
                module = "R" if shift == 0 else f"R(-{shift})"
                pieces.append(module if rank == 1 else f"{module}^{rank}")
            parts.append(" + ".join(pieces))
        return "0 -> " + " -> ".join(parts) + " -> 0"

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "Index": term.index,
                    "Betti": term.betti,
                    "Shifts": ", ".join(f"{s}x{r}" for s, r in sorted(term.shifts.items())),
                    "Elements": len(term.elements),
                }
                for term in self.terms
            ]
        )


class SingularBlockReport(BaseModel):
    """A singular block ^S W^J with both orderings and its reduced-pair answer."""

    diagram: str
    crossed: List[int]
    singular: List[int]
    nonempty: bool
    members: List[int] = Field(default_factory=list)
    bruhat_covers: List[Tuple[int, int]] = Field(default_factory=list)
    mu_covers: List[Tuple[int, int]] = Field(default_factory=list)
    components: int = 0
    reduced: Optional[str] = None
    reduced_node: Optional[int] = None
    copies: Optional[int] = None
    bruhat: Optional[KostantReport] = None
    mu: Optional[KostantReport] = None
    resolution: Optional[ResolutionData] = None

    @property
    def size(self) -> int:
        return len(self.members)


class CacheEntry(BaseModel):
    """One stored result, addressed by the hash of its descriptor."""

    key: str
    operation: str
    descriptor: Dict[str, Any]
    schema_version: int = SCHEMA_VERSION
    created_at: datetime = Field(default_factory=datetime.now)
    payload: str


class GoldenCheck(BaseModel):
    """Comparison of one recomputed value with shipped golden data."""

    table: str
    item: str
    expected: Any
    actual: Any
    passed: bool
