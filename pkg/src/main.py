#!/usr/bin/env python3
"""Main entry point for the Kostant modules toolkit."""

import json
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import typer
from rich.console import Console
from rich.table import Table

from bgg.complex import build_bgg, verify_complex
from hermitian.block import singular_block
from hermitian.pairs import require_hermitian
from hermitian.resolution import minimal_resolution
from kl.table import build_kl_table
from kostant.classifier import classify_regular
from posets.export import export
from posets.intervals import quotient_poincare
from posets.polynomial import IntPolynomial
from reports.cache import ResultCache, canonical_json
from reports.golden import TABLES, checks_frame, run_golden, table1_frame, table1_rows, table2_frame
from reports.models import KostantReport, Method, Ordering, ResolutionData, SingularBlockReport
from roots.diagram import MarkedDiagram, parse_diagram
from utils.config_loader import settings
from utils.constants import EXCEL_SHEETS, HS_PAIRS
from utils.errors import DiagramError, FormatError, KostantError, exit_code_for
from utils.excel_writer import ReportWorkbook
from utils.logging_utils import exception_logger, execution_logger
from weyl.poset import CosetPoset, generate_coset_poset, require_size
from weyl.singular import SingularSubposet

app = typer.Typer(help="Kostant modules in parabolic category O: posets, KL polynomials, BGG complexes.")
console = Console()
err_console = Console(stderr=True)

FORMATS = ("text", "json", "dot")

TypeOption = typer.Option(..., "--type", help="Dynkin type, e.g. F4, or a letter with --rank")
RankOption = typer.Option(None, "--rank", help="Rank when --type is a bare letter")
CrossedOption = typer.Option("", "--crossed", help="Crossed nodes, comma separated ids or labels")
SingularOption = typer.Option("", "--J", help="Singular nodes, comma separated ids or labels")
FormatOpt = typer.Option("text", "--format", help="text, json or dot")
CacheDirOption = typer.Option(None, "--cache-dir", help="Result cache directory")
MaxElementsOption = typer.Option(None, "--max-elements", help="Cap on generated quotient sizes")
JobsOption = typer.Option(None, "--jobs", help="Worker processes for classification")
AllowLargeOption = typer.Option(False, "--allow-large", help="Allow quotients above the large-quotient limit")
VerifyCacheOption = typer.Option(False, "--verify-cache", help="Recompute cache hits and compare bytes")
XlsxOption = typer.Option(None, "--xlsx", help="Also write an Excel workbook to this path")


def handle_errors(func: Callable[..., None]) -> Callable[..., None]:
    """Turn KostantError into a diagnostic and its exit code."""

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        try:
            func(*args, **kwargs)
        except KostantError as e:
            exception_logger.log_exception(e, func.__name__)
            err_console.print(f"[bold red]Error:[/bold red] {e}")
            raise typer.Exit(code=exit_code_for(e))

    return wrapper


def _apply_overrides(
    cache_dir: Optional[Path], max_elements: Optional[int], jobs: Optional[int], allow_large: bool
) -> None:
    """Flags override settings for this invocation."""
    if cache_dir is not None:
        settings.cache_dir = str(cache_dir)
    if max_elements is not None:
        settings.max_elements = max_elements
    if jobs is not None:
        settings.jobs = jobs
    if allow_large:
        settings.allow_large = True


def _tokens(text: str) -> List[str]:
    return [token.strip() for token in text.split(",") if token.strip()]


def _diagram(type_name: str, rank: Optional[int], crossed: str, singular: str = "") -> MarkedDiagram:
    source: Dict[str, Any] = {"type": type_name, "crossed": _tokens(crossed), "singular": _tokens(singular)}
    if rank is not None:
        source["rank"] = rank
    return parse_diagram(source)


def _check_format(fmt: str, allowed=FORMATS) -> str:
    if fmt not in allowed:
        raise FormatError("unknown output format", format=fmt, allowed=list(allowed))
    return fmt


def _poset(diagram: MarkedDiagram) -> CosetPoset:
    regular = diagram.with_marks(singular=())
    require_size(regular)
    return generate_coset_poset(regular)


def _emit(text: str) -> None:
    typer.echo(text.rstrip("\n"))


def _write_xlsx(path: Optional[Path], frames: Dict[str, Any]) -> None:
    if path is None:
        return
    written = ReportWorkbook(path).write_frames(frames)
    err_console.print(f"[yellow]Workbook saved to: {written}[/yellow]")


def _kostant_table(report: KostantReport, title: str) -> Table:
    table = Table(title=title)
    table.add_column("Element", style="cyan")
    table.add_column("Length")
    table.add_column("Word")
    table.add_column("Standard")
    for v in report.verdicts:
        if not v.kostant:
            continue
        subdiagram = " ".join(str(n) for n in v.subdiagram) if v.subdiagram is not None else ""
        table.add_row(
            str(v.position or v.element),
            str(v.length),
            " ".join(str(n) for n in v.word),
            f"yes {{{subdiagram}}}" if v.standard else "",
        )
    return table


@app.command()
@handle_errors
def poset(
    type_name: str = TypeOption,
    rank: Optional[int] = RankOption,
    crossed: str = CrossedOption,
    fmt: str = FormatOpt,
    cache_dir: Optional[Path] = CacheDirOption,
    max_elements: Optional[int] = MaxElementsOption,
    allow_large: bool = AllowLargeOption,
    verify_cache: bool = VerifyCacheOption,
):
    """Generate ^S W with its Hasse diagram."""
    _apply_overrides(cache_dir, max_elements, None, allow_large)
    fmt = _check_format(fmt)
    diagram = _diagram(type_name, rank, crossed)
    quotient = _poset(diagram)

    if fmt == "dot":
        _emit(export(quotient, "dot").decode("utf-8"))
        return
    if fmt == "json":
        cache = ResultCache(cache_dir, verify=verify_cache)
        descriptor = cache.descriptor("poset", diagram.descriptor())
        _emit(cache.fetch(descriptor, lambda: json.loads(export(quotient, "json"))))
        return

    console.print(f"{diagram.name}, crossed {sorted(diagram.crossed)}: {len(quotient)} elements")
    console.print(f"top length {quotient.max_length}")
    console.print("levels " + " ".join(str(len(level)) for level in quotient.by_length()))
    console.print(f"Poincare polynomial {quotient_poincare(quotient)}")


def _classify_payload(diagram: MarkedDiagram, method: Method, jobs: Optional[int]) -> Dict[str, Any]:
    report = classify_regular(_poset(diagram), method, jobs=jobs)
    return report.model_dump(mode="json")


def _singular_payload(diagram: MarkedDiagram) -> Dict[str, Any]:
    regular = diagram.with_marks(singular=())
    require_size(regular)
    return singular_block(diagram).model_dump(mode="json")


def _print_singular(block: SingularBlockReport) -> None:
    if not block.nonempty:
        console.print(f"{block.diagram}, J = {block.singular}: empty block")
        return
    console.print(f"{block.diagram}, J = {block.singular}: {block.size} elements")
    for report in (block.bruhat, block.mu):
        if report is None:
            continue
        console.print(f"{report.ordering} ordering ({report.criterion}): {report.kostant_count} Kostant")
        console.print(_kostant_table(report, f"Kostant modules, {report.ordering} ordering"))
    if block.reduced is not None:
        node = "" if block.reduced_node is None else f", alpha' = {block.reduced_node}"
        console.print(f"reduced pair {block.reduced}{node}, copies {block.copies}")


def _subposet(poset: CosetPoset, block: SingularBlockReport) -> SingularSubposet:
    return SingularSubposet(
        poset=poset,
        singular=frozenset(block.singular),
        members=tuple(block.members),
        bruhat_covers=tuple(tuple(c) for c in block.bruhat_covers),
        mu_covers=tuple(tuple(c) for c in block.mu_covers) if block.mu is not None else None,
    )


@app.command()
@handle_errors
def classify(
    type_name: str = TypeOption,
    rank: Optional[int] = RankOption,
    crossed: str = CrossedOption,
    singular: str = SingularOption,
    method: Method = typer.Option(Method.PALINDROMIC, "--method", help="palindromic, kl or both"),
    ordering: Ordering = typer.Option(Ordering.BRUHAT, "--ordering", help="Order on a singular block"),
    fmt: str = FormatOpt,
    cache_dir: Optional[Path] = CacheDirOption,
    max_elements: Optional[int] = MaxElementsOption,
    jobs: Optional[int] = JobsOption,
    allow_large: bool = AllowLargeOption,
    verify_cache: bool = VerifyCacheOption,
    xlsx: Optional[Path] = XlsxOption,
):
    """Kostant verdicts for a regular block, or for a singular block when --J is given."""
    _apply_overrides(cache_dir, max_elements, jobs, allow_large)
    fmt = _check_format(fmt)
    diagram = _diagram(type_name, rank, crossed, singular)
    cache = ResultCache(cache_dir, verify=verify_cache)

    if diagram.singular:
        descriptor = cache.descriptor("singular", diagram.descriptor())
        block = SingularBlockReport.model_validate_json(cache.fetch(descriptor, lambda: _singular_payload(diagram)))
        report = block.mu if ordering is Ordering.MU else block.bruhat
        if fmt == "json":
            _emit(canonical_json(block.model_dump(mode="json")))
        elif fmt == "dot":
            sub = _subposet(_poset(diagram), block)
            circled = report.kostant_elements if report else []
            _emit(export(sub, "dot", circled=circled, ordering=ordering.value).decode("utf-8"))
        else:
            _print_singular(block)
        if report is not None:
            _write_xlsx(xlsx, {EXCEL_SHEETS["classification"]: report.to_frame()})
        return

    descriptor = cache.descriptor("classify", diagram.descriptor(), method=method.value)
    text = cache.fetch(descriptor, lambda: _classify_payload(diagram, method, jobs))
    report = KostantReport.model_validate_json(text)

    if fmt == "json":
        _emit(text)
    elif fmt == "dot":
        notes = {v.element: "{" + ",".join(str(n) for n in v.subdiagram) + "}" for v in report.verdicts if v.standard}
        _emit(export(_poset(diagram), "dot", circled=report.kostant_elements, notes=notes).decode("utf-8"))
    else:
        console.print(f"{report.size} elements, {report.kostant_count} Kostant, {report.standard_count} standard")
        console.print(f"criterion: {report.criterion}")
        console.print(_kostant_table(report, f"Kostant modules of {report.diagram}, crossed {report.crossed}"))
    _write_xlsx(xlsx, {EXCEL_SHEETS["classification"]: report.to_frame()})


@app.command()
@handle_errors
def klpoly(
    type_name: str = TypeOption,
    rank: Optional[int] = RankOption,
    crossed: str = CrossedOption,
    singular: str = SingularOption,
    w: Optional[int] = typer.Option(None, "--w", help="Top element id (default: the longest element)"),
    x: Optional[int] = typer.Option(None, "--x", help="Bottom element id (default: the whole column)"),
    fmt: str = FormatOpt,
    max_elements: Optional[int] = MaxElementsOption,
):
    """Relative KL polynomials ^S P_{x,w}, or singular ones when --J is given."""
    _apply_overrides(None, max_elements, None, False)
    fmt = _check_format(fmt, ("text", "json"))
    diagram = _diagram(type_name, rank, crossed, singular)
    quotient = _poset(diagram)
    table = build_kl_table(quotient)
    top = quotient.top if w is None else w
    if not 0 <= top < len(quotient) or (x is not None and not 0 <= x < len(quotient)):
        raise DiagramError("element id out of range", size=len(quotient))

    nodes = sorted(diagram.singular)
    bottoms = [x] if x is not None else sorted(quotient.lower_ideal(top))
    rows = []
    for bottom in bottoms:
        poly: IntPolynomial = table.singular(nodes, bottom, top) if nodes else table.relative(bottom, top)
        ext = table.ext_dims(nodes, bottom, top)
        rows.append({"x": bottom, "w": top, "polynomial": poly.to_list(), "ext": ext.nonzero})

    if fmt == "json":
        payload = {"diagram": diagram.descriptor(), "convention": table.convention.value, "rows": rows}
        _emit(canonical_json(payload))
        return
    out = Table(title=f"KL polynomials of {diagram.name} ({table.convention.value})")
    out.add_column("x", style="cyan")
    out.add_column("w")
    out.add_column("P")
    out.add_column("Ext")
    for row in rows:
        poly = IntPolynomial(tuple(row["polynomial"]))
        ext = ", ".join(f"Ext^{i}={d}" for i, d in row["ext"].items())
        out.add_row(str(row["x"]), str(row["w"]), poly.format("q"), ext)
    console.print(out)


@app.command()
@handle_errors
def singular(
    type_name: str = TypeOption,
    rank: Optional[int] = RankOption,
    crossed: str = CrossedOption,
    singular_nodes: str = SingularOption,
    ordering: Ordering = typer.Option(Ordering.MU, "--ordering", help="Order drawn in DOT output"),
    fmt: str = FormatOpt,
    cache_dir: Optional[Path] = CacheDirOption,
    max_elements: Optional[int] = MaxElementsOption,
    allow_large: bool = AllowLargeOption,
    verify_cache: bool = VerifyCacheOption,
):
    """The singular block ^S W^J under both orderings, with its reduced pair."""
    _apply_overrides(cache_dir, max_elements, None, allow_large)
    fmt = _check_format(fmt)
    diagram = _diagram(type_name, rank, crossed, singular_nodes)
    if not diagram.singular:
        raise DiagramError("singular blocks need --J")
    cache = ResultCache(cache_dir, verify=verify_cache)
    descriptor = cache.descriptor("singular", diagram.descriptor())
    text = cache.fetch(descriptor, lambda: _singular_payload(diagram))
    block = SingularBlockReport.model_validate_json(text)

    if fmt == "json":
        _emit(text)
    elif fmt == "dot":
        view = ordering if block.mu is not None else Ordering.BRUHAT
        report = block.mu if view is Ordering.MU else block.bruhat
        circled = report.kostant_elements if report else []
        _emit(export(_subposet(_poset(diagram), block), "dot", circled=circled, ordering=view.value).decode("utf-8"))
    else:
        _print_singular(block)


@app.command()
@handle_errors
def bgg(
    type_name: str = TypeOption,
    rank: Optional[int] = RankOption,
    crossed: str = CrossedOption,
    w: Optional[int] = typer.Option(None, "--w", help="Top element id (default: the longest element)"),
    fmt: str = FormatOpt,
    max_elements: Optional[int] = MaxElementsOption,
):
    """Signed BGG complex over [e, w] with its square and D*D checks."""
    _apply_overrides(None, max_elements, None, False)
    fmt = _check_format(fmt, ("text", "json"))
    quotient = _poset(_diagram(type_name, rank, crossed))
    top = quotient.top if w is None else w
    if not 0 <= top < len(quotient):
        raise DiagramError("element id out of range", size=len(quotient))

    complex_ = build_bgg(quotient, top)
    summary = verify_complex(complex_)
    if fmt == "json":
        _emit(canonical_json({**complex_.to_payload(), "summary": summary.model_dump(mode="json")}))
    else:
        console.print(f"{summary.diagram}, w = {summary.element}, Kostant: {summary.kostant}")
        console.print("term sizes " + " ".join(str(n) for n in summary.term_sizes))
        console.print(f"{summary.arrows} arrows, {summary.squares} squares, backtracked: {summary.backtracked}")
        status = "[green]passed[/green]" if summary.passed else "[red]failed[/red]"
        console.print(f"checks {status}")
    if not summary.passed:
        raise KostantError("complex checks failed", squares=len(summary.bad_squares), products=summary.bad_products)


@app.command()
@handle_errors
def resolution(
    pair: Optional[str] = typer.Option(None, "--pair", help=f"Named pair: {', '.join(HS_PAIRS)}"),
    type_name: Optional[str] = typer.Option(None, "--type", help="Dynkin type when --pair is not given"),
    rank: Optional[int] = RankOption,
    crossed: str = CrossedOption,
    k: int = typer.Option(1, "--k", help="Index of the Wallach representation"),
    fmt: str = FormatOpt,
    cache_dir: Optional[Path] = CacheDirOption,
    verify_cache: bool = VerifyCacheOption,
    xlsx: Optional[Path] = XlsxOption,
):
    """Betti numbers and degree shifts of the k-th Wallach representation."""
    _apply_overrides(cache_dir, None, None, False)
    fmt = _check_format(fmt, ("text", "json"))
    if pair is not None:
        if pair.upper() not in HS_PAIRS:
            raise DiagramError("unknown pair", pair=pair, known=list(HS_PAIRS))
        letter, pair_rank, node = HS_PAIRS[pair.upper()]
        diagram = parse_diagram({"type": f"{letter}{pair_rank}", "crossed": [node]})
    elif type_name is not None:
        diagram = _diagram(type_name, rank, crossed)
    else:
        raise DiagramError("give --pair or --type/--crossed")
    hs = require_hermitian(diagram)

    cache = ResultCache(cache_dir, verify=verify_cache)
    descriptor = cache.descriptor("resolution", diagram.descriptor(), k=k)
    text = cache.fetch(descriptor, lambda: minimal_resolution(hs, k).model_dump(mode="json"))
    data = ResolutionData.model_validate_json(text)

    if fmt == "json":
        _emit(text)
    else:
        console.print(f"{data.pair}, k = {data.k}, J = {data.singular}, reduced pair {data.reduced}")
        table = Table(title="Minimal free resolution")
        table.add_column("i", style="cyan")
        table.add_column("Betti")
        table.add_column("Shifts")
        for term in data.terms:
            shifts = ", ".join(f"{rank_}x R(-{s})" if s else f"{rank_}x R" for s, rank_ in sorted(term.shifts.items()))
            table.add_row(str(term.index), str(term.betti), shifts)
        console.print(table)
        console.print(data.display())
    _write_xlsx(xlsx, {EXCEL_SHEETS["resolution"]: data.to_frame()})


@app.command()
@handle_errors
def tables(
    only: str = typer.Option("", "--only", help="Restrict to these types, comma separated (e.g. E6)"),
    table: str = typer.Option("", "--table", help=f"Restrict to tables: {', '.join(TABLES)}"),
    jobs: Optional[int] = JobsOption,
    allow_large: bool = AllowLargeOption,
    xlsx: Optional[Path] = XlsxOption,
):
    """Recompute the shipped golden tables and diff them; exit 4 on a mismatch."""
    _apply_overrides(None, None, jobs, allow_large)
    chosen = _tokens(table) or list(TABLES)
    unknown = [t for t in chosen if t not in TABLES]
    if unknown:
        raise DiagramError("unknown table", table=unknown[0], known=list(TABLES))

    checks = run_golden(_tokens(only), chosen, jobs=jobs, allow_large=allow_large)
    for type_name, counts in table1_rows(checks).items():
        console.print(f"{type_name}: " + " ".join(str(c) for c in counts))
    console.print(f"[bold green]{len(checks)} golden checks passed[/bold green]")
    execution_logger.generate_summary()

    frames = {EXCEL_SHEETS["golden"]: checks_frame(checks)}
    if "table1" in chosen:
        frames[EXCEL_SHEETS["table1"]] = table1_frame(checks)
    if "table2" in chosen:
        frames[EXCEL_SHEETS["table2"]] = table2_frame(_tokens(only))
    _write_xlsx(xlsx, frames)


@app.command()
def info():
    """Display information about the toolkit."""
    app_info = settings.app
    console.print(f"[bold]{app_info.name}[/bold] {app_info.version} ({app_info.environment})")
    console.print("Posets, KL polynomials and Kostant modules of parabolic category O")
    console.print("\nCommands:")
    console.print("poset       ^S W and its Hasse diagram")
    console.print("classify    Kostant verdicts, regular or singular")
    console.print("klpoly      relative and singular KL polynomials")
    console.print("singular    singular blocks, both orderings, reduced pair")
    console.print("bgg         signed BGG complexes")
    console.print("resolution  Wallach representations")
    console.print("tables      golden-table verification")
    console.print(f"\nCache: {settings.cache.dir}")
    console.print(f"KL convention: {settings.engine.kl_convention}")


if __name__ == "__main__":
    app()
