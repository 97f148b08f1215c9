import json
import re

import pytest

from kostant.classifier import classify_regular
from posets.export import export, to_dot, to_json_payload
from utils.constants import SCHEMA_VERSION
from utils.errors import FormatError
from weyl.singular import singular_subposet

NODE_LINE = re.compile(r'^\t\t"\d+" \[label=')


def test_f4_dot(f4_poset):
    text = to_dot(f4_poset)
    assert text.startswith("digraph poset {\n\trankdir=BT;")
    assert len([line for line in text.splitlines() if NODE_LINE.match(line)]) == 24
    assert 'label="b"' in text
    assert text.count("rank = same;") == 16


def test_kostant_elements_are_circled(d4_poset):
    kostant = classify_regular(d4_poset).kostant_elements
    text = export(d4_poset, "dot", circled=kostant).decode("utf-8")
    assert text.count("shape=doublecircle") == 22
    assert text.count("shape=circle") == 10


def test_json_payload(a3_middle):
    raw = export(a3_middle, "json", circled=[0], notes={0: "e"})
    payload = json.loads(raw)
    assert payload["schema"] == SCHEMA_VERSION
    assert len(payload["elements"]) == 6
    assert payload["circled"] == [0]
    assert payload["notes"] == {"0": "e"}
    assert raw == export(a3_middle, "json", circled=[0], notes={0: "e"})


def test_singular_subposets_use_positions_and_dashes(a3_middle):
    sub = singular_subposet(a3_middle, [2])
    text = to_dot(sub)
    assert "style=dashed" in text
    assert '[label="1"' in text and '[label="2"' in text
    payload = to_json_payload(sub)
    assert payload["singular"] == [2]
    assert payload["covers"] == [{"lo": sub.members[0], "hi": sub.members[1], "dashed": True}]


def test_unknown_format(a3_middle):
    with pytest.raises(FormatError):
        export(a3_middle, "svg")
