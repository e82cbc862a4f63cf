import json

import pytest
from hypothesis import given, settings, strategies as st

from gausslink.codec import parse, serialize
from gausslink.diagram import GaussDiagram, Mode, isomorphic, transform, validate
from gausslink.families import gen_Dn, gen_torus
from gausslink.kernels import canonical_key_bytes
from gausslink.invariants import multiple_linking_S, multiple_linking_T
from gausslink.moves import (
    ALL_KINDS,
    OMEGA3_SIGNS,
    TABLE2,
    MoveKind,
    MoveSite,
    StaleSite,
    apply,
    crosses_base_point,
    decompose_via_table2,
    enumerate_sites,
    inverse,
    replay,
)

from conftest import diagrams

O3 = [MoveKind(3, v, 0) for v in "abcdefgh"]


def sites_of(d, max_crossings=None):
    return enumerate_sites(d, ALL_KINDS, max_crossings or d.n_crossings + 2)


def test_kind_names_round_trip():
    for k in ALL_KINDS:
        assert MoveKind.parse(k.name) == k
    for bad in ("O3a+", "O2e+", "O2a", "X1a+", "O4a+"):
        with pytest.raises(ValueError):
            MoveKind.parse(bad)


def test_kink_site_and_removal():
    d = parse("O1+U1+")
    neg = [s for s in sites_of(d) if s.kind.family == 1 and s.kind.polarity < 0]
    assert len(neg) == 1
    out = apply(d, neg[0])
    assert out == GaussDiagram.empty(1)


def test_crossingless_sites():
    d = GaussDiagram.empty(2)
    sites = sites_of(d)
    assert all(s.kind.polarity > 0 for s in sites)
    assert any(s.kind.family == 2 and s.inter_component for s in sites)


def test_dn_negative_sites():
    def count(n):
        return sum(
            1 for s in sites_of(gen_Dn(n)) if s.kind.family == 2 and s.kind.polarity < 0 and s.inter_component
        )

    assert count(1) == 1
    assert count(2) == 2
    # nested pairs: only the innermost pair and its partner across the base point are adjacent
    assert count(5) == 2


def test_positive_omega2_lowers_T():
    d = GaussDiagram.empty(2)
    site = next(s for s in sites_of(d) if s.inter_component and s.kind.polarity > 0)
    assert multiple_linking_T(apply(d, site)) == -1
    for n in range(5):
        d = gen_torus(n)
        site = next(s for s in sites_of(d) if s.inter_component and s.kind.polarity > 0)
        assert multiple_linking_T(apply(d, site)) == n * (n - 1) - 1


def test_stale_site_rejected():
    d = parse("O1+U1+")
    site = MoveSite(MoveKind(2, "a", -1), (((0, 0), (0, 1)), ((0, 0), (0, 1))), (1, -1))
    with pytest.raises(StaleSite):
        apply(d, site)
    site = MoveSite(MoveKind(1, "a", -1), (((1, 0), (1, 1)),), (1,))
    with pytest.raises(StaleSite):
        apply(d, site)
    assert serialize(d) == "O1+U1+"


def test_site_json_round_trip():
    for s in sites_of(gen_Dn(2)):
        assert MoveSite.from_json(json.loads(json.dumps(s.to_json()))) == s


@given(diagrams(max_crossings=6), st.data())
def test_apply_then_inverse(d, data):
    sites = sites_of(d, 8)
    if not sites:
        return
    s = data.draw(st.sampled_from(sites))
    after = apply(d, s)
    assert validate(after) == []
    assert after.n_crossings - d.n_crossings == s.crossing_change
    back = apply(after, inverse(s, after))
    assert isomorphic(back, d, Mode.BASED)
    # and forward again
    assert apply(back, s) == after


@given(diagrams(max_crossings=6))
def test_delta_laws_every_site(d):
    s0, t0 = multiple_linking_S(d), multiple_linking_T(d)
    for s in sites_of(d, 8):
        out = apply(d, s)
        assert multiple_linking_S(out) == s0
        want = -s.kind.polarity if s.inter_component else 0
        assert multiple_linking_T(out) - t0 == want


@settings(max_examples=50)
@given(diagrams(max_crossings=5))
def test_enumeration_deterministic_and_rotation_covariant(d):
    a = sites_of(d)
    assert a == sites_of(d)
    # the set of reachable classes does not depend on the base points; the
    # multiset does, since the gap holding a base point has three placements
    r = transform(d, tuple(1 if n else 0 for n in d.lengths))
    ka = {canonical_key_bytes(*apply(d, s).raw, False) for s in a}
    kb = {canonical_key_bytes(*apply(r, s).raw, False) for s in sites_of(r)}
    assert ka == kb


@given(diagrams(max_crossings=7))
def test_omega3_inverse_is_omega3(d):
    for s in enumerate_sites(d, O3):
        after = apply(d, s)
        inv = inverse(s, after)
        assert inv.kind.family == 3
        assert apply(after, inv) == d.normalized()


def test_omega3_sign_table_distinct():
    assert len(set(OMEGA3_SIGNS.values())) == 8
    assert set(TABLE2) == set("bcdefgh")


def test_table2_omega3b_example():
    d = parse("U1+U2+/U3+O2+O3+O1+")
    site = MoveSite(MoveKind(3, "b", 0), (((1, 2), (1, 3)), ((1, 0), (1, 1)), ((0, 0), (0, 1))), (1, 1, 1))
    dec = decompose_via_table2(d, site)
    assert [s.kind.name for s in dec.sites] == ["O2c+", "O3a", "O2d-"]
    assert dec.exact
    assert replay(d, dec.sites)[-1] == apply(d, site)


def test_table2_omega3d_five_moves():
    d = parse("/U1-U2+O3+O2+O1-U3+")
    site = MoveSite(MoveKind(3, "d", 0), (((1, 2), (1, 3)), ((1, 4), (1, 5)), ((1, 0), (1, 1))), (1, 1, -1))
    dec = decompose_via_table2(d, site)
    assert [s.kind.name for s in dec.sites] == ["O2a+", "O2c+", "O3a", "O2d-", "O2b-"]
    assert [lvl[0] for lvl in dec.levels] == ["d", "b"]
    trace = [multiple_linking_T(x) for x in replay(d, dec.sites)]
    assert trace[0] == trace[-1]


def test_table2_across_base_point():
    d = parse("O1+U2+U3+O3+/U1+O2+")
    site = MoveSite(MoveKind(3, "b", 0), (((0, 3), (0, 0)), ((1, 1), (1, 0)), ((0, 1), (0, 2))), (1, 1, 1))
    assert crosses_base_point(site)
    dec = decompose_via_table2(d, site)
    assert not dec.exact
    end = replay(d, dec.sites)[-1]
    assert isomorphic(end, apply(d, site), Mode.ROTATE)


def test_decompose_rejects_omega3a():
    d = parse("U1+U2+/U3+O2+O3+O1+")
    a_sites = enumerate_sites(d, [MoveKind(3, "a", 0)])
    if a_sites:
        with pytest.raises(ValueError):
            decompose_via_table2(d, a_sites[0])
