import itertools

import pytest
from hypothesis import given, strategies as st

from gausslink.codec import parse
from gausslink.diagram import (
    Arrow,
    Endpoint,
    GaussDiagram,
    InvalidDiagram,
    Mode,
    canonical_form,
    canonical_key,
    isomorphic,
    transform,
    validate,
)
from gausslink.pairing import S_REPRESENTATIVES

from conftest import diagrams, rotations

HOPF = GaussDiagram(
    (2, 2),
    (Arrow(Endpoint(0, 0), Endpoint(1, 0), 1), Arrow(Endpoint(0, 1), Endpoint(1, 1), 1)),
)


def test_empty_is_valid():
    assert validate(GaussDiagram.empty(2)) == []
    assert GaussDiagram.empty(2).words == ((), ())


def test_hopf_layout_valid():
    assert validate(HOPF) == []
    assert HOPF.words == ((1, 3), (0, 2))


def test_odd_length_reported_in_classical_mode():
    d = GaussDiagram(
        (3, 1),
        (Arrow(Endpoint(0, 0), Endpoint(0, 1), 1), Arrow(Endpoint(0, 2), Endpoint(1, 0), 1)),
    )
    assert validate(d) == []
    errs = validate(d, classical=True)
    assert any("odd component length" in e for e in errs)


def test_all_violations_reported():
    bad = GaussDiagram(
        (2, 1),
        (Arrow(Endpoint(0, 0), Endpoint(0, 0), 2), Arrow(Endpoint(0, 1), Endpoint(3, 0), 1)),
    )
    errs = validate(bad)
    assert any("sign" in e for e in errs)
    assert any("share a slot" in e for e in errs)
    assert any("out of range" in e for e in errs)
    assert any("slot count" in e for e in errs)
    with pytest.raises(InvalidDiagram):
        bad.words


def test_isomorphic_identity_all_modes():
    for mode in Mode:
        assert isomorphic(HOPF, HOPF, mode)


def test_rotation_by_one_is_rotate_equivalent():
    r = transform(HOPF, (1, 1))
    assert isomorphic(HOPF, r, Mode.ROTATE)


def test_based_mode_sees_base_point():
    d = parse("O1+U2-/U1+O2-")
    r = transform(d, (1, 0))
    assert not isomorphic(d, r, Mode.BASED)
    assert isomorphic(d, r, Mode.ROTATE)


def test_permutation_needs_permute_mode():
    d = parse("O1+O2+/U1+U2+")
    swapped = transform(d, (0, 0), (1, 0))
    assert not isomorphic(d, swapped, Mode.ROTATE)
    assert isomorphic(d, swapped, Mode.ROTATE_PERMUTE)


def test_s_representatives_pairwise_equivalent():
    reps = [r.diagram for r in S_REPRESENTATIVES]
    assert len(reps) == 4
    for a, b in itertools.combinations(reps, 2):
        assert isomorphic(a, b, Mode.ROTATE_PERMUTE)
        assert not isomorphic(a, b, Mode.BASED)


@given(diagrams(), st.data())
def test_canonical_form_is_class_invariant(d, data):
    shifts = data.draw(rotations(d))
    perm = data.draw(st.permutations(range(d.n_components)))
    e = transform(d, shifts, perm)
    assert canonical_form(d) == canonical_form(e)
    assert isomorphic(d, canonical_form(d), Mode.ROTATE_PERMUTE)


@given(diagrams(max_crossings=5), diagrams(max_crossings=5))
def test_canonical_key_agrees_with_brute_isomorphism(a, b):
    for mode in Mode:
        assert (canonical_key(a, mode) == canonical_key(b, mode)) == isomorphic(a, b, mode)


@given(diagrams(components=3, max_crossings=5), st.data())
def test_three_components(d, data):
    shifts = data.draw(rotations(d))
    e = transform(d, shifts)
    assert canonical_key(d, Mode.ROTATE) == canonical_key(e, Mode.ROTATE)
    assert validate(e) == []


@given(diagrams())
def test_normalized_preserves_based_class(d):
    assert isomorphic(d, d.normalized(), Mode.BASED)
