"""Assembly of a singular block report: both orderings, both verdict sets and D'."""

from typing import Iterable, Optional

from hermitian.ordering import classify_singular, mu_components, mu_ordering
from hermitian.pairs import dprime, has_adjacent_pair, is_hermitian, pair_name
from hermitian.resolution import minimal_resolution
from kl.table import build_kl_table
from reports.models import Method, Ordering, SingularBlockReport
from roots.diagram import MarkedDiagram
from utils.errors import GroupTooLargeError
from utils.logging_utils import execution_logger
from weyl.poset import CosetPoset, generate_coset_poset
from weyl.singular import singular_subposet


def singular_block(
    diagram: MarkedDiagram,
    singular: Optional[Iterable[int]] = None,
    poset: Optional[CosetPoset] = None,
    wallach_k: Optional[int] = None,
) -> SingularBlockReport:
    """^S W^J with Bruhat and mu verdicts; the palindromic route is used when KL is out of reach."""
    nodes = frozenset(diagram.singular if singular is None else singular)
    regular = diagram.with_marks(singular=())
    poset = poset or generate_coset_poset(regular)
    hs = is_hermitian(regular)
    base = dict(diagram=regular.name, crossed=sorted(regular.crossed), singular=sorted(nodes))

    sub = singular_subposet(poset, nodes)
    if not sub.members or has_adjacent_pair(regular, nodes):
        return SingularBlockReport(**base, nonempty=False)

    try:
        table = build_kl_table(poset)
    except GroupTooLargeError as e:
        execution_logger.logger.warning("KL polynomials out of reach, using palindromic verdicts", reason=str(e))
        table = None

    mu_report = None
    components = 1
    if table is not None:
        sub = mu_ordering(sub, table)
        bruhat_report = classify_singular(sub, Ordering.BRUHAT, Method.KL, table)
        mu_report = classify_singular(sub, Ordering.MU, Method.KL, table)
        components = len(mu_components(sub))
    else:
        bruhat_report = classify_singular(sub, Ordering.BRUHAT, Method.PALINDROMIC)

    report = SingularBlockReport(
        **base,
        nonempty=True,
        members=list(sub.members),
        bruhat_covers=list(sub.bruhat_covers),
        mu_covers=list(sub.mu_covers or ()),
        components=components,
        bruhat=bruhat_report,
        mu=mu_report,
    )

    if hs is not None:
        reduced, alpha_prime, copies = dprime(hs, len(nodes), nodes)
        expected = copies * (len(generate_coset_poset(reduced)) if reduced.nodes else 1)
        execution_logger.log_validation(f"equivalent_size:{hs.name}:{sorted(nodes)}", expected, len(sub), expected == len(sub))
        report.reduced = pair_name(reduced)
        report.reduced_node = alpha_prime
        report.copies = copies
        if wallach_k is not None:
            report.resolution = minimal_resolution(hs, wallach_k)
    return report
