"""Golden-table harness: recompute every shipped table and diff it against config/golden."""

from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

import pandas as pd
import yaml

from hermitian.block import singular_block
from hermitian.pairs import dprime, pair_name, require_hermitian
from hermitian.resolution import minimal_resolution
from kostant.classifier import classify_regular
from reports.models import GoldenCheck, Method
from roots.diagram import MarkedDiagram, canonical_form, parse_diagram
from utils.config_loader import CONFIG_DIR
from utils.constants import EMPTY_DIAGRAM
from utils.errors import GoldenMismatchError
from utils.logging_utils import execution_logger
from weyl.poset import generate_coset_poset, quotient_size, require_size

GOLDEN_DIR = CONFIG_DIR / "golden"
TABLES = ("table1", "table2", "figures", "resolution")


def load_golden(name: str) -> Dict[str, Any]:
    with open(GOLDEN_DIR / f"{name}.yaml", "r") as f:
        return yaml.safe_load(f) or {}


def first_divergence(expected: Any, actual: Any) -> Optional[str]:
    """Human-readable location of the first difference, None when equal."""
    if isinstance(expected, (list, tuple)) and isinstance(actual, (list, tuple)):
        for index, (left, right) in enumerate(zip(expected, actual)):
            inner = first_divergence(left, right)
            if inner is not None:
                return f"[{index}]{inner}" if inner.startswith("[") else f"[{index}]: {inner}"
        if len(expected) != len(actual):
            return f"length {len(expected)} != {len(actual)}"
        return None
    if expected != actual:
        return f"expected {expected!r}, got {actual!r}"
    return None


def _check(table: str, item: str, expected: Any, actual: Any) -> GoldenCheck:
    passed = first_divergence(expected, actual) is None
    execution_logger.log_validation(f"golden:{table}:{item}", expected, actual, passed)
    return GoldenCheck(table=table, item=item, expected=expected, actual=actual, passed=passed)


def _selected(type_name: str, only: Optional[Sequence[str]]) -> bool:
    return not only or type_name.upper() in {name.upper() for name in only}


def _diagram(type_name: str, crossed: Iterable[int], singular: Iterable[int] = ()) -> MarkedDiagram:
    return parse_diagram({"type": type_name, "crossed": list(crossed), "singular": list(singular)})


def check_table1(
    only: Optional[Sequence[str]] = None, jobs: Optional[int] = None, allow_large: bool = False
) -> List[GoldenCheck]:
    """Kostant counts and quotient sizes for every maximal parabolic listed."""
    checks = []
    for type_name, data in load_golden("table1").items():
        if not _selected(type_name, only):
            continue
        expected_counts = {int(k): v for k, v in data["kostant"].items()}
        sizes = {int(k): v for k, v in data.get("sizes", {}).items()}
        rank = _diagram(type_name, ()).dynkin_type().rank
        nodes = range(1, rank + 1) if allow_large else sorted(expected_counts)
        for node in nodes:
            diagram = _diagram(type_name, [node])
            if node not in expected_counts:
                # outside the shipped table: computed and reported, never compared
                require_size(diagram, allow_large)
                report = classify_regular(generate_coset_poset(diagram), Method.PALINDROMIC, jobs=jobs)
                checks.append(
                    GoldenCheck(
                        table="table1", item=f"{type_name}:{node}", expected=None, actual=report.kostant_count, passed=True
                    )
                )
                continue
            if node in sizes:
                checks.append(_check("table1", f"{type_name}:{node}:size", sizes[node], quotient_size(diagram)))
            require_size(diagram, allow_large)
            report = classify_regular(generate_coset_poset(diagram), Method.PALINDROMIC, jobs=jobs)
            checks.append(_check("table1", f"{type_name}:{node}", expected_counts[node], report.kostant_count))
    return checks


def _expected_reduced(row: Dict[str, Any]) -> List[Any]:
    if row["reduced"] is None:
        return [EMPTY_DIAGRAM, []]
    reduced = parse_diagram({"type": row["reduced"], "crossed": [row["node"]]})
    name, crossed, _ = canonical_form(reduced)
    return [name, list(crossed)]


def check_table2(only: Optional[Sequence[str]] = None) -> List[GoldenCheck]:
    """Reduced pair D', its crossed node (up to automorphism) and the copy count."""
    checks = []
    for row in load_golden("table2")["rows"]:
        if not _selected(row["type"], only):
            continue
        hs = require_hermitian(_diagram(row["type"], [row["crossed"]]))
        singular = list(row["singular"])
        reduced, _, copies = dprime(hs, len(singular), singular)
        name, crossed, _ = canonical_form(reduced)
        item = f"{hs.name}:J={singular}"
        checks.append(_check("table2", item, _expected_reduced(row), [name, list(crossed)]))
        checks.append(_check("table2", f"{item}:copies", row["copies"], copies))
    return checks


def check_figures(only: Optional[Sequence[str]] = None) -> List[GoldenCheck]:
    """Element, Kostant and standard counts, level sizes and mu covers of the drawn posets."""
    data = load_golden("figures")
    checks = []
    for row in data.get("regular", []):
        if not _selected(row["type"], only):
            continue
        poset = generate_coset_poset(_diagram(row["type"], row["crossed"]))
        report = classify_regular(poset, Method.PALINDROMIC)
        item = f"{row['type']}:{row['crossed']}"
        actual = {
            "elements": len(poset),
            "kostant": report.kostant_count,
            "standard": report.standard_count,
            "top_length": poset.max_length,
            "levels": [len(level) for level in poset.by_length()],
        }
        for field_name, value in actual.items():
            if field_name in row:
                checks.append(_check("figures", f"{item}:{field_name}", row[field_name], value))

    for row in data.get("singular", []):
        if not _selected(row["type"], only):
            continue
        block = singular_block(_diagram(row["type"], row["crossed"], row["singular"]))
        item = f"{row['type']}:{row['crossed']}:J={row['singular']}"
        checks.append(_check("figures", f"{item}:elements", row["elements"], block.size))
        if "mu_covers" in row:
            position = {x: i + 1 for i, x in enumerate(block.members)}
            actual_covers = sorted([position[lo], position[hi]] for lo, hi in block.mu_covers)
            checks.append(_check("figures", f"{item}:mu_covers", sorted(row["mu_covers"]), actual_covers))
    return checks


def check_resolutions(only: Optional[Sequence[str]] = None) -> List[GoldenCheck]:
    checks = []
    for row in load_golden("resolution")["resolutions"]:
        if not _selected(row["type"], only):
            continue
        hs = require_hermitian(_diagram(row["type"], [row["crossed"]]))
        data = minimal_resolution(hs, row["k"])
        item = f"{hs.name}:k={row['k']}"
        checks.append(_check("resolution", f"{item}:betti", row["betti"], data.betti))
        checks.append(_check("resolution", f"{item}:shifts", row["shifts"], data.shifts))
    return checks


CHECKERS: Dict[str, Callable[..., List[GoldenCheck]]] = {
    "table1": check_table1,
    "table2": check_table2,
    "figures": check_figures,
    "resolution": check_resolutions,
}


def run_golden(
    only: Optional[Sequence[str]] = None,
    tables: Optional[Sequence[str]] = None,
    jobs: Optional[int] = None,
    allow_large: bool = False,
) -> List[GoldenCheck]:
    """Run the chosen golden tables; raise GoldenMismatchError naming the first divergence."""
    chosen = list(tables or TABLES)
    execution_logger.log_step_start("golden", ",".join(chosen), only=list(only or []))
    checks: List[GoldenCheck] = []
    for table in chosen:
        if table == "table1":
            checks.extend(check_table1(only, jobs=jobs, allow_large=allow_large))
        else:
            checks.extend(CHECKERS[table](only))

    failed = [c for c in checks if not c.passed]
    execution_logger.log_step_end(
        "golden", ",".join(chosen), status="failed" if failed else "passed", checks=len(checks), failed=len(failed)
    )
    if failed:
        first = failed[0]
        raise GoldenMismatchError(
            "golden mismatch",
            expected=first.expected,
            actual=first.actual,
            table=first.table,
            item=first.item,
            divergence=first_divergence(first.expected, first.actual),
        )
    return checks


def table1_rows(checks: Iterable[GoldenCheck]) -> Dict[str, List[int]]:
    """Type -> Kostant counts in node order, from table1 checks."""
    rows: Dict[str, List[int]] = {}
    for check in checks:
        parts = check.item.split(":")
        if check.table == "table1" and len(parts) == 2:
            rows.setdefault(parts[0], []).append(check.actual)
    return rows


def table1_frame(checks: Iterable[GoldenCheck]) -> pd.DataFrame:
    rows = table1_rows(checks)
    return pd.DataFrame(
        [{"Type": name, **{f"r={i}": count for i, count in enumerate(counts, 1)}} for name, counts in rows.items()]
    )


def checks_frame(checks: Iterable[GoldenCheck]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "Table": c.table,
                "Item": c.item,
                "Expected": str(c.expected),
                "Actual": str(c.actual),
                "Passed": c.passed,
            }
            for c in checks
        ]
    )


def table2_frame(only: Optional[Sequence[str]] = None) -> pd.DataFrame:
    """Table 2 as computed, one row per shipped (pair, J)."""
    rows = []
    for row in load_golden("table2")["rows"]:
        if not _selected(row["type"], only):
            continue
        hs = require_hermitian(_diagram(row["type"], [row["crossed"]]))
        reduced, node, copies = dprime(hs, len(row["singular"]), row["singular"])
        rows.append(
            {
                "D": hs.name,
                "alpha": hs.index,
                "J": " ".join(str(j) for j in row["singular"]),
                "|J|": len(row["singular"]),
                "D'": pair_name(reduced),
                "alpha'": node,
                "Copies": copies,
            }
        )
    return pd.DataFrame(rows)
