"""
Export posets as DOT digraphs (drawn bottom to top) or versioned JSON.

For example, after writing the DOT output to 'f4.gv' you can render it with:

    dot -Tpng -O f4.gv
"""

import json
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from utils.constants import DOT_STYLES, SCHEMA_VERSION
from utils.errors import FormatError
from weyl.poset import CosetPoset
from weyl.singular import SingularSubposet

Source = Union[CosetPoset, SingularSubposet]


def _edges(source: Source, ordering: str) -> List[Tuple[int, int, Optional[int]]]:
    if isinstance(source, CosetPoset):
        return source.covers()
    edges = source.bruhat_covers if ordering == "bruhat" else source.mu_covers or ()
    return [(lo, hi, source.poset.label_between(lo, hi)) for lo, hi in edges]


def _nodes(source: Source) -> List[int]:
    if isinstance(source, CosetPoset):
        return list(source.elements)
    return list(source.members)


def _poset(source: Source) -> CosetPoset:
    return source if isinstance(source, CosetPoset) else source.poset


def _display_name(source: Source, x: int) -> str:
    if isinstance(source, SingularSubposet):
        return str(source.position(x))
    return str(x)


def to_dot(
    source: Source,
    circled: Iterable[int] = (),
    notes: Optional[Mapping[int, str]] = None,
    ordering: str = "bruhat",
) -> str:
    poset = _poset(source)
    circled = set(circled)
    notes = notes or {}
    lines = ["digraph poset {", "\trankdir=BT;"]

    layers: Dict[int, List[int]] = {}
    for x in _nodes(source):
        layers.setdefault(poset.lengths[x], []).append(x)
    for length in sorted(layers):
        lines.append("\t{")
        lines.append("\t\trank = same;")
        for x in layers[length]:
            label = _display_name(source, x)
            if x in notes:
                label = f"{label}\\n{notes[x]}"
            style = DOT_STYLES["kostant"] if x in circled else DOT_STYLES["plain"]
            lines.append(f'\t\t"{x}" [label="{label}", {style}];')
        lines.append("\t}")

    for lo, hi, label in _edges(source, ordering):
        attributes = []
        if label is not None:
            attributes.append(f'label="{poset.diagram.label(label)}"')
        if poset.lengths[hi] - poset.lengths[lo] > 1:
            attributes.append(DOT_STYLES["dashed"])
        suffix = f" [{', '.join(attributes)}]" if attributes else ""
        lines.append(f'\t"{lo}" -> "{hi}"{suffix};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_payload(
    source: Source,
    circled: Iterable[int] = (),
    notes: Optional[Mapping[int, str]] = None,
    ordering: str = "bruhat",
) -> Dict[str, Any]:
    poset = _poset(source)
    circled = sorted(set(circled))
    payload: Dict[str, Any] = {"schema": SCHEMA_VERSION}
    if isinstance(source, CosetPoset):
        payload.update(source.descriptor())
    else:
        payload.update(
            {
                "diagram": poset.diagram.descriptor(),
                "singular": sorted(source.singular),
                "ordering": ordering,
                "elements": [
                    {"id": x, "position": source.position(x), "len": poset.lengths[x], "key": list(poset.keys[x])}
                    for x in source.members
                ],
                "covers": [
                    {"lo": lo, "hi": hi, "dashed": poset.lengths[hi] - poset.lengths[lo] > 1}
                    for lo, hi, _ in _edges(source, ordering)
                ],
            }
        )
    payload["circled"] = circled
    if notes:
        payload["notes"] = {str(k): v for k, v in sorted(notes.items())}
    return payload


def export(
    source: Source,
    fmt: str,
    circled: Iterable[int] = (),
    notes: Optional[Mapping[int, str]] = None,
    ordering: str = "bruhat",
) -> bytes:
    """Serialize a poset or singular subposet as 'dot' or 'json'."""
    if fmt == "dot":
        return to_dot(source, circled, notes, ordering).encode("utf-8")
    if fmt == "json":
        payload = to_json_payload(source, circled, notes, ordering)
        return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
    raise FormatError("unknown export format", format=fmt)
