import pytest
from hypothesis import given, strategies as st

from gausslink.codec import parse
from gausslink.diagram import GaussDiagram, Mode
from gausslink.families import gen_K, gen_L, gen_torus
from gausslink.pairing import (
    LK01,
    LK10,
    S,
    S_EXPANSION_L,
    T,
    T_EXPANSION_K,
    T_REPRESENTATIVES,
    PairType,
    PatternSum,
    bracket,
    bracket_sum,
    brute_force_bracket,
    classify_pair,
    parse_pattern,
)
from gausslink.invariants import multiple_linking_S, multiple_linking_T

from conftest import diagrams


def test_pattern_parse_open_and_fixed_signs():
    p = parse_pattern("O1+U2/U1+O2", Mode.BASED)
    assert p.signs == (1, None)
    assert p.degree == 2 and p.n_components == 2


def test_representative_counts():
    assert len(T_REPRESENTATIVES) == 4


def test_bracket_component_mismatch():
    with pytest.raises(ValueError):
        bracket(S, parse("O1+U1+"))


def test_empty_pattern_counts_once():
    empty = parse_pattern("/", Mode.BASED)
    assert bracket(empty, GaussDiagram.empty(2)) == 1
    assert bracket(empty, gen_torus(3)) == 1


def test_lk_patterns_on_hopf():
    d = parse("O1+U2+/U1+O2+")
    assert bracket(LK01, d) == 1
    assert bracket(LK10, d) == 1


def test_pattern_sum_algebra():
    d = gen_torus(3)
    ps = PatternSum.of(S, T) - PatternSum.of(T)
    assert bracket_sum(ps, d) == bracket(S, d)
    assert bracket_sum(-PatternSum.of(S), d) == -9


def test_classify_pair():
    d = parse("O1+U2+O3+U3+/U1+O2+")
    a, b, kink = d.arrows
    assert classify_pair(a, b, d) == PairType.S
    assert classify_pair(a, kink, d) == PairType.NONE
    e = parse("O1+O2+/U1+U2+")
    assert classify_pair(*e.arrows, e) == PairType.T
    with pytest.raises(ValueError):
        classify_pair(a, b, parse("O1+U1+"))


@given(diagrams(max_crossings=6))
def test_kernel_matches_brute_force(d):
    for P in (S, T, LK01, LK10):
        assert bracket(P, d) == brute_force_bracket(P, d)


@given(diagrams(max_crossings=5))
def test_signed_pattern_brute_force(d):
    for ps in (S_EXPANSION_L, T_EXPANSION_K):
        for _, P in ps.terms:
            assert bracket(P, d) == brute_force_bracket(P, d)


@given(diagrams(max_crossings=9))
def test_bracket_matches_closed_form(d):
    assert bracket(S, d) == multiple_linking_S(d)
    assert bracket(T, d) == multiple_linking_T(d)


def test_expansions_on_families():
    for n in range(1, 7):
        for m in range(n + 1):
            assert bracket_sum(S_EXPANSION_L, gen_L(m, n)) == n * (n - m)
    for n in range(6):
        for m in range(6):
            assert bracket_sum(T_EXPANSION_K, gen_K(m, n)) == (n - m) ** 2 - (n + m)


def test_degenerate_brackets():
    assert bracket(S, GaussDiagram.empty(2)) == 0
    assert bracket(T, parse("O1+/U1+")) == 0
    assert bracket_sum(PatternSum(()), gen_torus(3)) == 0


@given(diagrams(max_crossings=9))
def test_exhaustiveness_by_pair_enumeration(d):
    import itertools

    inter = [a for a in d.arrows if a.tail.component != a.head.component]
    total = sum(a.sign * b.sign for a, b in itertools.combinations(inter, 2))
    assert bracket(S, d) + bracket(T, d) == total
    # the split matches classify_pair
    s_part = sum(
        a.sign * b.sign for a, b in itertools.combinations(inter, 2) if classify_pair(a, b, d) == PairType.S
    )
    assert s_part == bracket(S, d)


@given(diagrams(max_crossings=8), st.data())
def test_unbased_bracket_is_class_invariant(d, data):
    from gausslink.diagram import transform

    shifts = tuple(data.draw(st.integers(0, max(n - 1, 0))) for n in d.lengths)
    perm = data.draw(st.permutations(range(2)))
    e = transform(d, shifts, perm)
    assert bracket(S, e) == bracket(S, d)
    assert bracket(T, e) == bracket(T, d)
