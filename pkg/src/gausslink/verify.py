"""Randomised checks of the invariance and sensitivity laws.

Every check walks a seeded corpus of random 2-component diagrams and
applies every enumerated move site, so a run is reproducible from
``(seed, trials, max_crossings)``.  A failing verdict carries a replayable
counterexample: the diagram's Gauss code and the site as JSON.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .codec import serialize
from .diagram import GaussDiagram, Mode
from .kernels import canonical_key_bytes, linking_counts
from .moves import (
    ALL_KINDS,
    TABLE2,
    DecompositionError,
    MoveKind,
    MoveSite,
    apply_raw,
    crosses_base_point,
    decompose_via_table2,
    enumerate_sites_raw,
)
from .pairing import (
    S,
    S_REPRESENTATIVES,
    T,
    T_REPRESENTATIVES,
    ArrowPattern,
    PatternSum,
    bracket,
    bracket_sum,
    parse_pattern,
)

CLAIMS = ("S-invariance", "T-behavior", "relators", "table2")


@dataclass(frozen=True)
class VerifySuiteConfig:
    seed: int = 0
    trials: int = 1000
    max_crossings: int = 12
    kinds: frozenset = frozenset(ALL_KINDS)


@dataclass
class Verdict:
    claim: str
    passed: bool
    checked: int = 0
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "pass": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "details": self.details,
        }


# -- corpus ------------------------------------------------------------------------


def random_diagram(seed, components: int = 2, max_crossings: int = 12) -> GaussDiagram:
    """Seeded random diagram with at most ``max_crossings`` arrows.

    The arrow count is uniform on ``0..max_crossings``; endpoints are
    shuffled into slots, split among the components at random cut points,
    and signs are fair coin flips.  Component lengths may be odd (virtual
    diagrams).
    """
    if components < 1:
        raise ValueError("components must be >= 1")
    rng = random.Random(f"gausslink:{seed}")
    n = rng.randint(0, max_crossings)
    tokens = [(a, t) for a in range(n) for t in (True, False)]
    rng.shuffle(tokens)
    cuts = sorted(rng.randint(0, 2 * n) for _ in range(components - 1))
    bounds = [0] + cuts + [2 * n]
    words = [tokens[bounds[i] : bounds[i + 1]] for i in range(components)]
    signs = {a: rng.choice((1, -1)) for a in range(n)}
    return GaussDiagram.from_words(words, signs)


def corpus(cfg: VerifySuiteConfig) -> Iterator[GaussDiagram]:
    for t in range(cfg.trials):
        yield random_diagram(f"{cfg.seed}:{t}", 2, cfg.max_crossings)


# -- raw-level invariants -------------------------------------------------------------


def raw_S_T(raw) -> tuple[int, int]:
    """Closed-form (S, T) straight from word form."""
    lk01, lk10, c01, c10 = linking_counts(*raw)
    return lk01 * lk10, (lk01 ** 2 - c01 + lk10 ** 2 - c10) // 2


def expected_dT(site: MoveSite) -> int:
    if site.inter_component:
        return -site.kind.polarity
    return 0


def _cex(G_raw, site: MoveSite, **extra) -> dict:
    return {
        "diagram": serialize(GaussDiagram.from_codes(*G_raw)),
        "site": site.to_json(),
        **extra,
    }


# -- sweep --------------------------------------------------------------------------


@dataclass
class SweepStats:
    sites: int = 0
    by_kind: dict = field(default_factory=dict)
    s_failure: dict | None = None
    t_failure: dict | None = None
    s_checked: int = 0
    t_checked: int = 0


def sweep(cfg: VerifySuiteConfig, check_s: bool = True, check_t: bool = True) -> SweepStats:
    """Apply every enumerated site to every corpus diagram; record deltas."""
    stats = SweepStats()
    for G in corpus(cfg):
        raw = G.raw
        s0, t0 = raw_S_T(raw)
        for site in enumerate_sites_raw(raw, cfg.kinds, cfg.max_crossings):
            out = apply_raw(raw, site)
            s1, t1 = raw_S_T(out)
            stats.sites += 1
            name = site.kind.name
            stats.by_kind[name] = stats.by_kind.get(name, 0) + 1
            if check_s:
                stats.s_checked += 1
                if s1 != s0 and stats.s_failure is None:
                    stats.s_failure = _cex(raw, site, expected_dS=0, actual_dS=s1 - s0)
            if check_t:
                stats.t_checked += 1
                want = expected_dT(site)
                if t1 - t0 != want and stats.t_failure is None:
                    stats.t_failure = _cex(raw, site, expected_dT=want, actual_dT=t1 - t0)
    return stats


def check_S_invariance(cfg: VerifySuiteConfig = VerifySuiteConfig(), stats: SweepStats | None = None) -> Verdict:
    stats = stats or sweep(cfg, check_t=False)
    return Verdict(
        "S-invariance",
        stats.s_failure is None,
        stats.s_checked,
        stats.s_failure,
        {"sites_by_kind": dict(sorted(stats.by_kind.items()))},
    )


def check_T_behavior(cfg: VerifySuiteConfig = VerifySuiteConfig(), stats: SweepStats | None = None) -> Verdict:
    stats = stats or sweep(cfg, check_s=False)
    return Verdict(
        "T-behavior",
        stats.t_failure is None,
        stats.t_checked,
        stats.t_failure,
        {"sites_by_kind": dict(sorted(stats.by_kind.items()))},
    )


# -- relators ---------------------------------------------------------------------------

# Each relator swaps the two endpoints that one strand of an Omega-3 triangle
# carries; the other two strands contribute one endpoint each.  The fragment
# is closed into two based circles: the swapped pair on one circle, the two
# partner endpoints on the other in either order.
_RELATOR_STRANDS = {
    # name: (swapped pair, partner endpoints) as (label, is_tail)
    "r1": (((1, True), (2, True)), ((1, False), (2, False))),
    "r2": (((1, False), (3, True)), ((1, True), (3, False))),
    "r3": (((2, False), (3, False)), ((2, True), (3, True))),
}


def _code(word) -> str:
    return "".join(f"{'O' if t else 'U'}{lab}" for lab, t in word)


def relator_fragments(name: str):
    """All closures of relator ``name`` as (before, after) Gauss-code pairs."""
    pair, partners = _RELATOR_STRANDS[name]
    out = []
    for shared in (0, 1):
        for other in (partners, partners[::-1]):
            for before_pair in (pair,):
                after_pair = pair[::-1]
                comps_b = [list(before_pair), list(other)]
                comps_a = [list(after_pair), list(other)]
                if shared == 1:
                    comps_b.reverse()
                    comps_a.reverse()
                out.append(("/".join(map(_code, comps_b)), "/".join(map(_code, comps_a))))
    return out


def relator_sum(name: str, mode: Mode) -> list[PatternSum]:
    """Relator closures as pattern sums ``before - after`` in ``mode``."""
    return [
        PatternSum(((1, parse_pattern(b, mode)), (-1, parse_pattern(a, mode))))
        for b, a in relator_fragments(name)
    ]


def _pair_value(X: ArrowPattern, code: str) -> int:
    """<X, fragment> with the fragment's arrows taken positive."""
    p = parse_pattern(code)
    G = GaussDiagram.from_codes(p.diagram.words, (1,) * p.degree)
    return bracket(X, G)


def relator_table() -> dict:
    """<X, r_i> for S, T and each of their based representatives.

    ``{pattern: {relator: [values over closures]}}``.
    """
    patterns = {"S": S, "T": T}
    for i, rep in enumerate(S_REPRESENTATIVES):
        patterns[f"S_based{i}"] = rep
    for i, rep in enumerate(T_REPRESENTATIVES):
        patterns[f"T_based{i}"] = rep
    table = {}
    for pname, X in patterns.items():
        table[pname] = {
            r: [_pair_value(X, b) - _pair_value(X, a) for b, a in relator_fragments(r)]
            for r in _RELATOR_STRANDS
        }
    return table


def check_relators(cfg: VerifySuiteConfig = VerifySuiteConfig(), corpus_limit: int | None = None) -> Verdict:
    """Relator cancellation for S and T, plus the based-mode ablation.

    Pattern level: ``<S, r_i> = <T, r_i> = 0`` once base points are
    forgotten, while a single based representative of S fails on r2 and a
    based representative of T fails on r1 and r3.  Diagram level: the
    relator sums read as unbased patterns vanish on every corpus diagram,
    and in based-exact mode they do not.
    """
    table = relator_table()
    checked = 0
    problems = []
    for pname in ("S", "T"):
        for r, values in table[pname].items():
            checked += len(values)
            if any(values):
                problems.append({"pattern": pname, "relator": r, "values": values})
    ablation = {}
    for base, reps in (("S", S_REPRESENTATIVES), ("T", T_REPRESENTATIVES)):
        for r in _RELATOR_STRANDS:
            ablation[f"{base}:{r}"] = any(
                any(table[f"{base}_based{i}"][r]) for i in range(len(reps))
            )
    expected_ablation = {
        "S:r1": False, "S:r2": True, "S:r3": False,
        "T:r1": True, "T:r2": False, "T:r3": True,
    }
    if ablation != expected_ablation:
        problems.append({"ablation": ablation, "expected": expected_ablation})

    sums = {
        mode: {r: relator_sum(r, mode) for r in _RELATOR_STRANDS}
        for mode in (Mode.ROTATE, Mode.ROTATE_PERMUTE, Mode.BASED)
    }
    based_nonzero = {r: 0 for r in _RELATOR_STRANDS}
    n_diagrams = 0
    limit = cfg.trials if corpus_limit is None else min(cfg.trials, corpus_limit)
    for t, G in enumerate(corpus(cfg)):
        if t >= limit:
            break
        n_diagrams += 1
        for r in _RELATOR_STRANDS:
            for mode in (Mode.ROTATE, Mode.ROTATE_PERMUTE):
                for ps in sums[mode][r]:
                    checked += 1
                    v = bracket_sum(ps, G)
                    if v and len(problems) < 5:
                        problems.append(
                            {"diagram": serialize(G), "relator": r, "mode": mode.value, "value": v}
                        )
            if any(bracket_sum(ps, G) for ps in sums[Mode.BASED][r]):
                based_nonzero[r] += 1
    if n_diagrams and not all(based_nonzero.values()):
        problems.append({"based_mode_nonzero_counts": based_nonzero})
    return Verdict(
        "relators",
        not problems,
        checked,
        problems[0] if problems else None,
        {
            "pattern_values": {k: table[k] for k in ("S", "T")},
            "based_ablation": ablation,
            "based_mode_nonzero_diagrams": based_nonzero,
            "diagrams": n_diagrams,
        },
    )


# -- Omega-3 decompositions -------------------------------------------------------------------------------


def check_table2(cfg: VerifySuiteConfig = VerifySuiteConfig()) -> Verdict:
    """Decompose every Omega-3 b..h site of the corpus and compare."""
    variants = sorted(TABLE2)
    coverage = {v: 0 for v in variants}
    alpha_beta: dict[str, int] = {}
    kinds = [MoveKind(3, v, 0) for v in variants]
    checked = exact = rotated = 0
    failure = None
    for G in corpus(cfg):
        raw = G.raw
        for site in enumerate_sites_raw(raw, kinds):
            checked += 1
            coverage[site.kind.variant] += 1
            direct = apply_raw(raw, site)
            try:
                dec = decompose_via_table2(G, site)
            except DecompositionError as exc:
                failure = failure or _cex(raw, site, error=str(exc))
                continue
            cur = raw
            t_trace = [raw_S_T(cur)[1]]
            for s in dec.sites:
                cur = apply_raw(cur, s)
                t_trace.append(raw_S_T(cur)[1])
            if dec.exact:
                exact += 1
                same = cur == direct
            else:
                rotated += 1
                same = canonical_key_bytes(*cur, False) == canonical_key_bytes(*direct, False)
                same = same and crosses_base_point(site)
            if not same:
                failure = failure or _cex(raw, site, error="composite differs from direct move")
            if t_trace[-1] != t_trace[0]:
                failure = failure or _cex(raw, site, error="net T change", trace=t_trace)
            # per conjugation level: T change of the adding and removing Omega-2
            for _, pos, neg in dec.levels:
                ab = (expected_dT(pos), expected_dT(neg))
                alpha_beta[str(ab)] = alpha_beta.get(str(ab), 0) + 1
                if ab not in ((0, 0), (-1, 1)):
                    failure = failure or _cex(raw, site, error="bad (alpha, beta)", alpha_beta=ab)
    uncovered = [v for v in variants if not coverage[v]]
    details = {
        "coverage": coverage,
        "alpha_beta": alpha_beta,
        "based_exact": exact,
        "up_to_base_point_rotation": rotated,
    }
    if uncovered:
        details["under_coverage"] = uncovered
    return Verdict("table2", failure is None and not uncovered, checked, failure, details)


def run_suite(cfg: VerifySuiteConfig = VerifySuiteConfig(), claims: Iterable[str] = CLAIMS) -> list[Verdict]:
    claims = list(claims)
    unknown = set(claims) - set(CLAIMS)
    if unknown:
        raise ValueError(f"unknown claims: {sorted(unknown)}")
    out = []
    stats = None
    if "S-invariance" in claims or "T-behavior" in claims:
        stats = sweep(cfg, "S-invariance" in claims, "T-behavior" in claims)
    for claim in claims:
        if claim == "S-invariance":
            out.append(check_S_invariance(cfg, stats))
        elif claim == "T-behavior":
            out.append(check_T_behavior(cfg, stats))
        elif claim == "relators":
            out.append(check_relators(cfg))
        elif claim == "table2":
            out.append(check_table2(cfg))
    return out
