import json

import pytest
from hypothesis import given

from gausslink.codec import REPORT_KEYS, GaussCodeError, parse, report_json, serialize
from gausslink.diagram import Endpoint, GaussDiagram
from gausslink.families import gen_Dn, gen_torus
from gausslink.invariants import report

from conftest import diagrams


def test_hopf_type_parse():
    d = parse("O1+U2+/U1+O2+")
    assert d.lengths == (2, 2)
    a, b = d.arrows
    assert (a.tail, a.head, a.sign) == (Endpoint(0, 0), Endpoint(1, 0), 1)
    assert (b.tail, b.head, b.sign) == (Endpoint(1, 1), Endpoint(0, 1), 1)


def test_kink():
    d = parse("O1+U1+")
    assert d.lengths == (2,)
    assert d.n_crossings == 1 and d.signs == (1,)


def test_whitespace_and_labels_ignored():
    d = parse(" O7-  U3+ / U7- O3+\n")
    assert serialize(d) == "O1-U2+/U1-O2+"


@pytest.mark.parametrize(
    "text, message, offset",
    [
        ("O1+U1-", "sign mismatch for label 1", 3),
        ("O1+X", "malformed token 'X'", 3),
        ("O1+", "label 1 appears 1 time(s)", 0),
        ("O1+U1+U1+", "label 1 appears 3 time(s)", 6),
        ("O1+O1+", "label 1 has two O tokens", 3),
        ("U1+U1+", "label 1 has two U tokens", 3),
        ("", "empty input", 0),
        ("   ", "empty input", 0),
        ("O0+U0+", "malformed token", 0),
        ("O1U1", "malformed token", 0),
    ],
)
def test_errors(text, message, offset):
    with pytest.raises(GaussCodeError) as info:
        parse(text)
    assert message in str(info.value)
    assert info.value.offset == offset


def test_offset_counts_bytes():
    with pytest.raises(GaussCodeError) as info:
        parse("O1+é")
    assert info.value.offset == 3
    with pytest.raises(GaussCodeError) as info:
        parse("O1+U1+/é/O")
    assert info.value.offset == 7


def test_serialize_empty_two_components():
    assert serialize(GaussDiagram.empty(2)) == "/"
    assert parse("/") == GaussDiagram.empty(2)


def test_serialize_hopf():
    assert serialize(parse("O5+U9+/U5+O9+")) == "O1+U2+/U1+O2+"


@given(diagrams(max_crossings=10))
def test_round_trip(d):
    text = serialize(d)
    e = parse(text) if text.strip("/") or d.n_components > 1 else d
    assert e.raw == d.normalized().raw
    assert serialize(e) == text


@given(diagrams(components=3, max_crossings=6))
def test_round_trip_three_components(d):
    assert parse(serialize(d)).raw == d.normalized().raw


def test_report_keys_and_order():
    out = json.loads(report_json(report(gen_torus(2))))
    assert list(out) == list(REPORT_KEYS)
    assert out["S"] == 4 and out["T"] == 2


def test_report_empty_all_zero():
    out = json.loads(report_json(report(GaussDiagram.empty(2))))
    assert out == {"lk12": 0, "lk21": 0, "S": 0, "T": 0, "crossings": 0, "components": 2, "rii_lower_bound": 0}


def test_report_dn():
    out = json.loads(report_json(report(gen_Dn(3))))
    assert out["T"] == -3 and out["rii_lower_bound"] == 3
