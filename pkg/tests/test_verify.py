import json

from gausslink import verify
from gausslink.codec import parse, serialize
from gausslink.moves import MoveSite, apply
from gausslink.verify import (
    VerifySuiteConfig,
    check_relators,
    check_S_invariance,
    check_T_behavior,
    check_table2,
    corpus,
    random_diagram,
    relator_table,
    run_suite,
)

SMALL = VerifySuiteConfig(seed=7, trials=40, max_crossings=8)


def test_random_diagram_deterministic():
    a = random_diagram("x", 2, 10)
    assert serialize(a) == serialize(random_diagram("x", 2, 10))
    assert a.n_components == 2 and a.n_crossings <= 10


def test_corpus_depends_on_seed():
    a = [serialize(d) for d in corpus(SMALL)]
    b = [serialize(d) for d in corpus(VerifySuiteConfig(seed=8, trials=40, max_crossings=8))]
    assert a != b and len(a) == 40


def test_small_suite_passes():
    v = run_suite(SMALL, ["S-invariance", "T-behavior", "relators"])
    assert [x.claim for x in v] == ["S-invariance", "T-behavior", "relators"]
    assert all(x.passed for x in v)
    assert all(x.checked > 0 for x in v)


def test_verdict_json():
    v = check_S_invariance(SMALL)
    obj = json.loads(json.dumps(v.to_json()))
    assert obj["claim"] == "S-invariance" and obj["pass"] is True and obj["counterexample"] is None


def test_failure_carries_replayable_counterexample(monkeypatch):
    # sabotage the expected law: every intra-component move "should" change T
    monkeypatch.setattr(verify, "expected_dT", lambda site: 1)
    v = check_T_behavior(SMALL)
    assert not v.passed
    cex = v.counterexample
    d = parse(cex["diagram"])
    site = MoveSite.from_json(cex["site"])
    apply(d, site)  # replays without error
    assert cex["expected_dT"] == 1 and cex["actual_dT"] != 1


def test_relator_table_shape():
    table = relator_table()
    for name in ("S", "T"):
        assert all(not any(vals) for vals in table[name].values())


def test_relators_small():
    v = check_relators(SMALL)
    assert v.passed, v.counterexample
    assert v.details["based_ablation"]["S:r2"] and v.details["based_ablation"]["T:r1"]


def test_table2_under_coverage_is_failure():
    v = check_table2(VerifySuiteConfig(trials=3, max_crossings=4))
    assert not v.passed
    assert v.details["under_coverage"]


def test_unknown_claim():
    import pytest

    with pytest.raises(ValueError):
        run_suite(SMALL, ["nope"])


def test_ten_thousand_samples_valid_and_oracle_mean():
    from gausslink.diagram import validate
    from gausslink.invariants import multiple_linking_T
    from gausslink.pairing import T, bracket

    total_closed = total_bracket = 0
    for i in range(10_000):
        d = random_diagram(f"mean:{i}", 2, 8)
        assert not validate(d)
        total_closed += multiple_linking_T(d)
        total_bracket += bracket(T, d)
    assert total_closed == total_bracket


def test_dn_negative_sites_raise_T():
    from gausslink.families import gen_Dn
    from gausslink.invariants import multiple_linking_T
    from gausslink.moves import MoveKind, enumerate_sites

    neg = [MoveKind(2, v, -1) for v in "abcd"]
    for n in range(1, 6):
        d = gen_Dn(n)
        sites = [s for s in enumerate_sites(d, neg) if s.inter_component]
        assert sites
        for s in sites:
            assert multiple_linking_T(apply(d, s)) - multiple_linking_T(d) == 1


def test_omega3a_keeps_T():
    from gausslink.families import gen_torus
    from gausslink.invariants import multiple_linking_T
    from gausslink.moves import MoveKind, enumerate_sites

    o3 = [MoveKind(3, v, 0) for v in "abcdefgh"]
    # a triangle needs an arrow between two strands on one circle; torus links have none
    assert not any(enumerate_sites(gen_torus(n), o3) for n in range(6))
    seen = 0
    for d in corpus(VerifySuiteConfig(seed=3, trials=200, max_crossings=10)):
        for s in enumerate_sites(d, o3[:1]):
            seen += 1
            assert multiple_linking_T(apply(d, s)) == multiple_linking_T(d)
    assert seen


def test_relators_vanish_on_empty():
    from gausslink.diagram import GaussDiagram, Mode
    from gausslink.pairing import bracket_sum
    from gausslink.verify import relator_sum

    for r in ("r1", "r2", "r3"):
        for mode in Mode:
            assert all(bracket_sum(ps, GaussDiagram.empty(2)) == 0 for ps in relator_sum(r, mode))
