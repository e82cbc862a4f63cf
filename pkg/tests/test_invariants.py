import pytest
from hypothesis import given

from gausslink.codec import parse
from gausslink.diagram import GaussDiagram, transform
from gausslink.families import gen_Dn, gen_torus
from gausslink.invariants import (
    linking_numbers,
    multiple_linking_S,
    multiple_linking_T,
    report,
    rii_lower_bound,
)

from conftest import diagrams


def flip_signs(d):
    return GaussDiagram.from_codes(d.words, tuple(-s for s in d.signs))


def reverse_arrows(d):
    return GaussDiagram.from_codes(tuple(tuple(c ^ 1 for c in w) for w in d.words), d.signs)


def test_hopf_counts():
    lk = linking_numbers(parse("O1+U2-/U1+O2-"))
    assert lk == (1, -1, 1, 1)


def test_wrong_component_count():
    one = parse("O1+U1+")
    for f in (linking_numbers, multiple_linking_S, multiple_linking_T):
        with pytest.raises(ValueError):
            f(one)
    with pytest.raises(ValueError):
        rii_lower_bound(gen_torus(1), one)


def test_report_single_component_nulls():
    r = report(parse("O1+U1+"))
    assert r.S is None and r.T is None and r.rii_lower_bound is None
    assert r.components == 1 and r.crossings == 1


def test_rii_bound_between_diagrams():
    assert rii_lower_bound(gen_Dn(4)) == 4
    assert rii_lower_bound(gen_Dn(4), gen_Dn(1)) == 3
    assert rii_lower_bound(gen_torus(3), gen_torus(3)) == 0


@given(diagrams(max_crossings=10))
def test_sign_flip_symmetry(d):
    # every term is a product of two signs
    e = flip_signs(d)
    assert multiple_linking_S(e) == multiple_linking_S(d)
    assert multiple_linking_T(e) == multiple_linking_T(d)
    lk, lk2 = linking_numbers(d), linking_numbers(e)
    assert (lk2.lk01, lk2.lk10) == (-lk.lk01, -lk.lk10)


@given(diagrams(max_crossings=10))
def test_direction_and_component_swap(d):
    lk = linking_numbers(d)
    for e in (reverse_arrows(d), transform(d, (0, 0), (1, 0))):
        lk2 = linking_numbers(e)
        assert (lk2.lk01, lk2.lk10) == (lk.lk10, lk.lk01)
        assert multiple_linking_S(e) == multiple_linking_S(d)
        assert multiple_linking_T(e) == multiple_linking_T(d)


@given(diagrams(max_crossings=10))
def test_T_parity(d):
    # lk^2 - c is always even, so T is an integer without rounding
    lk = linking_numbers(d)
    assert (lk.lk01 ** 2 - lk.c01) % 2 == 0
    assert (lk.lk10 ** 2 - lk.c10) % 2 == 0
