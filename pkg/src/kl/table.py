"""Kazhdan-Lusztig polynomials: ordinary, relative (parabolic) and singular.

Ordinary polynomials P_{x,w} live on the full Weyl group and are computed column by
column with the standard right-descent recursion. Relative polynomials for ^S W are
read off ordinary ones through a convention, and singular polynomials for ^S W^J are
alternating sums of relative ones over W_J.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from posets.intervals import poincare_polynomial
from posets.polynomial import IntPolynomial
from roots.diagram import MarkedDiagram, dynkin
from utils.config_loader import settings
from utils.errors import ConventionError, GroupTooLargeError, IntervalError, KostantError
from utils.logging_utils import execution_logger
from weyl.poset import (
    CosetPoset,
    cached_full_group,
    generate_coset_poset,
    group_order,
    longest_element,
    multiply,
    to_group,
)

Poly = Tuple[int, ...]


class KLConvention(str, Enum):
    """How relative polynomials are obtained from ordinary ones."""

    MAXIMAL_REPRESENTATIVE = "maximal_representative"
    MINIMAL_REPRESENTATIVE = "minimal_representative"
    LEVI_ALTERNATING = "levi_alternating"


def _accumulate(acc: List[int], poly: Optional[Poly], shift: int, factor: int = 1) -> None:
    if not poly:
        return
    needed = shift + len(poly)
    if len(acc) < needed:
        acc.extend([0] * (needed - len(acc)))
    for k, c in enumerate(poly):
        acc[shift + k] += factor * c


def _trim(coeffs: List[int]) -> Poly:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def subgroup_elements(group: CosetPoset, nodes: Iterable[int]) -> List[int]:
    """Ids of the parabolic subgroup W_I inside the full group, sorted by (length, id)."""
    generators = sorted(nodes)
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for y in frontier:
            for node in generators:
                z = group.walk(y, (node,))
                if z is not None and z not in found:
                    found.add(z)
                    nxt.append(z)
        frontier = nxt
    return sorted(found, key=lambda y: (group.lengths[y], y))


class OrdinaryKL:
    """P_{x,w} on the full group, one memoized column per w."""

    def __init__(self, group: CosetPoset):
        if group.levi:
            raise KostantError("ordinary KL polynomials need the full group", diagram=group.diagram.name)
        cap = settings.engine.kl_group_cap
        if len(group) > cap:
            raise GroupTooLargeError(
                "group too large for ordinary KL polynomials; use the palindromic method",
                diagram=group.diagram.name,
                size=len(group),
                cap=cap,
            )
        self.group = group
        self._columns: Dict[int, Dict[int, Poly]] = {0: {0: (1,)}}
        self._mu: Dict[int, Tuple[Tuple[int, int], ...]] = {}

    def column(self, w: int) -> Dict[int, Poly]:
        """{x: P_{x,w}} for every x <= w."""
        stack = [w]
        while stack:
            y = stack[-1]
            if y in self._columns:
                stack.pop()
                continue
            v = self.group.parents[y][0]
            if v not in self._columns:
                stack.append(v)
                continue
            missing = [z for z, _ in self._mu_list(v) if z not in self._columns]
            if missing:
                stack.extend(missing)
                continue
            self._columns[y] = self._compute(y)
            stack.pop()
        return self._columns[w]

    def _mu_list(self, v: int) -> Tuple[Tuple[int, int], ...]:
        cached = self._mu.get(v)
        if cached is not None:
            return cached
        lengths = self.group.lengths
        entries = []
        for z, poly in self._columns[v].items():
            gap = lengths[v] - lengths[z]
            if gap % 2 == 1:
                coefficient = poly[(gap - 1) // 2] if (gap - 1) // 2 < len(poly) else 0
                if coefficient:
                    entries.append((z, coefficient))
        result = tuple(sorted(entries))
        self._mu[v] = result
        return result

    def _compute(self, w: int) -> Dict[int, Poly]:
        group = self.group
        v, s = group.parents[w]
        lengths, keys, transitions = group.lengths, group.keys, group.transitions
        length_w = lengths[w]
        column_v = self._columns[v]
        mus = [(z, m) for z, m in self._mu_list(v) if keys[z][s] < 0]

        below = set(column_v)
        below |= {transitions[y][s] for y in column_v}
        column: Dict[int, Poly] = {}
        for x in below:
            xs = transitions[x][s]
            c = 1 if keys[x][s] < 0 else 0
            acc: List[int] = []
            _accumulate(acc, column_v.get(xs), 1 - c)
            _accumulate(acc, column_v.get(x), c)
            for z, m in mus:
                _accumulate(acc, self._columns[z].get(x), (length_w - lengths[z]) // 2, -m)
            poly = _trim(acc)
            self._check(x, w, poly)
            column[x] = poly
        return column

    def _check(self, x: int, w: int, poly: Poly) -> None:
        gap = self.group.lengths[w] - self.group.lengths[x]
        if not poly or any(c < 0 for c in poly):
            raise ConventionError("KL polynomial vanishes or has a negative coefficient", x=x, w=w)
        if x != w and len(poly) - 1 > (gap - 1) // 2:
            raise ConventionError("KL degree bound violated", x=x, w=w, degree=len(poly) - 1)
        if x == w and poly != (1,):
            raise ConventionError("P_{w,w} differs from 1", w=w)

    def polynomial(self, x: int, w: int) -> IntPolynomial:
        return IntPolynomial(self.column(w).get(x, ()))

    def mu(self, x: int, w: int) -> int:
        gap = self.group.lengths[w] - self.group.lengths[x]
        if gap <= 0 or gap % 2 == 0:
            return 0
        return self.polynomial(x, w).coefficient((gap - 1) // 2)


@dataclass
class ExtVector:
    """dim Ext^i(N_x, L_w) for each i with a nonzero value."""

    dims: Dict[int, int] = field(default_factory=dict)

    def __getitem__(self, i: int) -> int:
        return self.dims.get(i, 0)

    @property
    def nonzero(self) -> Dict[int, int]:
        return {i: d for i, d in sorted(self.dims.items()) if d}

    @property
    def is_zero(self) -> bool:
        return not self.nonzero


def ext_vector(poly: IntPolynomial, length_x: int, length_w: int) -> ExtVector:
    """Coefficient of q^e becomes Ext^i with i = l(w) - l(x) - 2e."""
    gap = length_w - length_x
    return ExtVector({gap - 2 * e: c for e, c in enumerate(poly.coeffs) if c})


class KLTable:
    """Relative and singular KL polynomials of one quotient ^S W."""

    def __init__(self, poset: CosetPoset, convention: KLConvention):
        self.poset = poset
        self.convention = KLConvention(convention)
        plain = poset.diagram.with_marks(crossed=(), singular=())
        order = group_order(plain)
        if order > settings.engine.kl_group_cap:
            raise GroupTooLargeError(
                "group too large for KL polynomials", diagram=plain.name, size=order, cap=settings.engine.kl_group_cap
            )
        self.group = cached_full_group(plain)
        self.ordinary = ordinary_table(self.group)
        self.longest_levi = longest_element(self.group, poset.levi)
        self._group_ids: Dict[int, int] = {}
        self._relative: Dict[Tuple[int, int], IntPolynomial] = {}
        self._singular: Dict[Tuple[FrozenSet[int], int, int], IntPolynomial] = {}
        self._levi_elements: Optional[List[int]] = None

    def group_id(self, x: int) -> int:
        cached = self._group_ids.get(x)
        if cached is None:
            cached = to_group(self.group, self.poset, x)
            self._group_ids[x] = cached
        return cached

    def relative(self, x: int, w: int) -> IntPolynomial:
        """^S P_{x,w}; zero unless x <= w."""
        cached = self._relative.get((x, w))
        if cached is not None:
            return cached
        if not self.poset.bruhat_leq(x, w):
            result = IntPolynomial.zero()
        elif self.convention is KLConvention.MAXIMAL_REPRESENTATIVE:
            gx = multiply(self.group, self.longest_levi, self.group_id(x))
            gw = multiply(self.group, self.longest_levi, self.group_id(w))
            result = self.ordinary.polynomial(gx, gw)
        elif self.convention is KLConvention.MINIMAL_REPRESENTATIVE:
            result = self.ordinary.polynomial(self.group_id(x), self.group_id(w))
        else:
            result = self._levi_alternating(x, w)
        self._relative[(x, w)] = result
        return result

    def _levi_alternating(self, x: int, w: int) -> IntPolynomial:
        if self._levi_elements is None:
            self._levi_elements = subgroup_elements(self.group, self.poset.levi)
        gw = self.group_id(w)
        column = self.ordinary.column(gw)
        gx = self.group_id(x)
        total = IntPolynomial.zero()
        for z in self._levi_elements:
            zx = multiply(self.group, z, gx)
            if zx in column:
                sign = -1 if self.group.lengths[z] % 2 else 1
                total = total + IntPolynomial(column[zx]) * sign
        return total

    def relative_column(self, w: int) -> Dict[int, IntPolynomial]:
        return {x: self.relative(x, w) for x in sorted(self.poset.lower_ideal(w))}

    def singular(self, singular: Iterable[int], x: int, w: int) -> IntPolynomial:
        """^S P^J_{x,w} = sum over z in W_J of (-1)^l(z) ^S P_{xz,w}."""
        nodes = frozenset(singular)
        cached = self._singular.get((nodes, x, w))
        if cached is not None:
            return cached
        total = IntPolynomial.zero()
        for z in subgroup_elements(self.group, nodes):
            xz = self.poset.walk(x, self.group.word(z))
            if xz is None or self.poset.lengths[xz] != self.poset.lengths[x] + self.group.lengths[z]:
                raise IntervalError("element is not in ^S W^J", x=x, singular=sorted(nodes))
            sign = -1 if self.group.lengths[z] % 2 else 1
            total = total + self.relative(xz, w) * sign
        if not total.is_nonnegative:
            raise ConventionError(
                "singular KL polynomial has a negative coefficient",
                convention=self.convention.value,
                x=x,
                w=w,
                polynomial=str(total),
            )
        self._singular[(nodes, x, w)] = total
        return total

    def ext_dims(self, singular: Iterable[int], x: int, w: int) -> ExtVector:
        poly = self.singular(singular, x, w)
        return ext_vector(poly, self.poset.lengths[x], self.poset.lengths[w])

    def column_is_zero_one(self, w: int) -> bool:
        return all(self.relative(x, w).is_zero_one for x in self.poset.lower_ideal(w))


def _calibration_posets() -> List[CosetPoset]:
    diagrams: Sequence[MarkedDiagram] = (
        dynkin("A", 3, crossed=[2]),
        dynkin("D", 4, crossed=[1, 3]),
    )
    return [generate_coset_poset(d) for d in diagrams]


def _convention_passes(convention: KLConvention, posets: Sequence[CosetPoset]) -> bool:
    for poset in posets:
        table = KLTable(poset, convention)
        for w in poset.elements:
            if table.relative(0, w).is_zero:
                return False
            palindromic = poincare_polynomial(poset, w).is_palindromic()
            try:
                zero_one = table.column_is_zero_one(w)
            except ConventionError:
                return False
            if zero_one != palindromic:
                return False
    return True


@lru_cache(maxsize=1)
def select_convention() -> KLConvention:
    """First convention consistent with the rational-smoothness oracle on reference quotients."""
    configured = KLConvention(settings.engine.kl_convention)
    if not settings.engine.calibrate_convention:
        return configured

    execution_logger.log_step_start("kl_calibration", "conventions")
    posets = _calibration_posets()
    candidates = [configured] + [c for c in KLConvention if c is not configured]
    for candidate in candidates:
        passed = _convention_passes(candidate, posets)
        execution_logger.log_validation(f"kl_convention:{candidate.value}", True, passed, passed)
        if passed:
            if candidate is not configured:
                execution_logger.logger.warning(
                    "Configured KL convention rejected", configured=configured.value, selected=candidate.value
                )
            execution_logger.log_step_end("kl_calibration", "conventions", selected=candidate.value)
            return candidate
    execution_logger.log_step_end("kl_calibration", "conventions", status="failed")
    raise ConventionError("no KL convention passes calibration")


def build_kl_table(poset: CosetPoset, convention: Optional[KLConvention] = None) -> KLTable:
    """KL table of a quotient, kept on the poset object per convention."""
    chosen = convention or select_convention()
    tables: Dict[KLConvention, KLTable] = poset.memo.setdefault("kl_tables", {})
    table = tables.get(chosen)
    if table is None:
        table = tables[chosen] = KLTable(poset, chosen)
    return table


def ordinary_table(group: CosetPoset) -> OrdinaryKL:
    """Ordinary KL columns of a full group, kept on the group object."""
    table = group.memo.get("ordinary_kl")
    if table is None:
        table = group.memo["ordinary_kl"] = OrdinaryKL(group)
    return table


def kl_ordinary(group: CosetPoset, x: int, w: int) -> IntPolynomial:
    return ordinary_table(group).polynomial(x, w)


def kl_relative(poset: CosetPoset, x: int, w: int) -> IntPolynomial:
    return build_kl_table(poset).relative(x, w)


def kl_singular(poset: CosetPoset, singular: Iterable[int], x: int, w: int) -> IntPolynomial:
    return build_kl_table(poset).singular(singular, x, w)


def ext_dims(poset: CosetPoset, singular: Iterable[int], x: int, w: int) -> ExtVector:
    return build_kl_table(poset).ext_dims(singular, x, w)
