"""Arrow-pattern brackets <P, G>.

A pattern is a small diagram whose arrows may leave their sign open.  The
bracket sums, over every *subset* of arrows of ``G`` whose induced
subdiagram matches the pattern (under the pattern's equivalence mode), the
product of the subset's signs.  Each subset is counted once no matter how
many symmetries carry it onto the pattern.

Matching works through a lookup table built once per pattern: every
symmetric image of the pattern is encoded with the same integer key that the
kernel computes for subsets of ``G`` (see :func:`gausslink._pykernels.subset_key`),
together with a bitmask of acceptable sign patterns.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import kernels
from ._pykernels import subset_key
from .codec import GaussCodeError, tokenize
from .diagram import GaussDiagram, Mode, rotate_words

__all__ = [
    "ArrowPattern",
    "PatternSum",
    "PairType",
    "parse_pattern",
    "bracket",
    "bracket_sum",
    "classify_pair",
    "LK01",
    "LK10",
    "S",
    "T",
    "S_REPRESENTATIVES",
    "T_REPRESENTATIVES",
    "S_EXPANSION_L",
    "T_EXPANSION_K",
]


@dataclass(frozen=True)
class ArrowPattern:
    """Pattern diagram plus per-arrow sign constraints (``None`` = any sign).

    ``diagram`` carries placeholder signs; only ``signs`` is consulted.
    """

    diagram: GaussDiagram
    signs: tuple = ()
    mode: Mode = Mode.BASED
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if not self.signs:
            object.__setattr__(self, "signs", (None,) * self.diagram.n_crossings)
        if len(self.signs) != self.diagram.n_crossings:
            raise ValueError("one sign constraint per pattern arrow expected")

    @property
    def degree(self) -> int:
        return self.diagram.n_crossings

    @property
    def n_components(self) -> int:
        return self.diagram.n_components

    @cached_property
    def table(self) -> dict[int, int]:
        """Subset key -> bitmask over accepted sign patterns."""
        d = self.diagram
        k = d.n_crossings
        ncomp = d.n_components
        words = d.words
        if self.mode is Mode.BASED:
            shifts = [(0,) * ncomp]
        else:
            shifts = list(itertools.product(*[range(max(len(w), 1)) for w in words]))
        if self.mode is Mode.ROTATE_PERMUTE:
            perms = list(itertools.permutations(range(ncomp)))
        else:
            perms = [tuple(range(ncomp))]
        choices = [(1, -1) if s is None else (s,) for s in self.signs]
        assignments = list(itertools.product(*choices))
        table: dict[int, int] = {}
        for shift in shifts:
            rotated = rotate_words(words, shift)
            for perm in perms:
                image = [rotated[p] for p in perm]
                pts = [
                    (c, p, code >> 1, code & 1)
                    for c, w in enumerate(image)
                    for p, code in enumerate(w)
                ]
                key, order = subset_key(pts, ncomp, k)
                mask = table.get(key, 0)
                for signs in assignments:
                    bits = 0
                    for lab, a in enumerate(order):
                        if signs[a] < 0:
                            bits |= 1 << lab
                    mask |= 1 << bits
                table[key] = mask
        return table

    def __str__(self) -> str:
        if self.name:
            return self.name
        return pattern_code(self)


def pattern_code(p: ArrowPattern) -> str:
    parts = []
    for w in p.diagram.words:
        toks = []
        for code in w:
            s = p.signs[code >> 1]
            mark = "" if s is None else ("+" if s > 0 else "-")
            toks.append(f"{'O' if code & 1 else 'U'}{(code >> 1) + 1}{mark}")
        parts.append("".join(toks))
    return "/".join(parts)


def parse_pattern(text: str, mode: Mode | str = Mode.BASED, name: str = "") -> ArrowPattern:
    """Pattern in Gauss-code syntax where signs may be omitted."""
    comps = tokenize(text, signs_required=False)
    seen: dict[int, list] = {}
    for comp in comps:
        for t in comp:
            seen.setdefault(t.label, []).append(t)
    for label, toks in seen.items():
        if len(toks) != 2 or sum(t.over for t in toks) != 1:
            raise GaussCodeError(f"label {label} must appear once as O and once as U", toks[-1].offset)
        if toks[0].sign != toks[1].sign:
            raise GaussCodeError(f"sign mismatch for label {label}", toks[1].offset)
    order: dict[int, int] = {}
    for comp in comps:
        for t in comp:
            order.setdefault(t.label, len(order))
    words = [[(t.label, t.over) for t in comp] for comp in comps]
    d = GaussDiagram.from_words(words, {lab: 1 for lab in order})
    signs = [None] * len(order)
    for lab, i in order.items():
        signs[i] = seen[lab][0].sign
    return ArrowPattern(d, tuple(signs), Mode(mode), name)


@dataclass(frozen=True)
class PatternSum:
    terms: tuple = ()  # ((coefficient, ArrowPattern), ...)

    def __post_init__(self):
        terms = tuple((int(c), p) for c, p in self.terms if c != 0)
        object.__setattr__(self, "terms", terms)

    def __add__(self, other: "PatternSum") -> "PatternSum":
        return PatternSum(self.terms + other.terms)

    def __sub__(self, other: "PatternSum") -> "PatternSum":
        return PatternSum(self.terms + tuple((-c, p) for c, p in other.terms))

    def __neg__(self) -> "PatternSum":
        return PatternSum(tuple((-c, p) for c, p in self.terms))

    @classmethod
    def of(cls, *patterns: ArrowPattern) -> "PatternSum":
        return cls(tuple((1, p) for p in patterns))


def _ends(G: GaussDiagram):
    return [
        (a.tail.component, a.tail.position, a.head.component, a.head.position)
        for a in G.arrows
    ]


def bracket(P: ArrowPattern, G: GaussDiagram) -> int:
    """Signed count of arrow subsets of ``G`` matching ``P``."""
    if P.n_components != G.n_components:
        raise ValueError(
            f"pattern has {P.n_components} components, diagram has {G.n_components}"
        )
    return kernels.bracket_count(_ends(G), G.signs, P.degree, G.n_components, P.table)


def bracket_sum(PS: PatternSum, G: GaussDiagram) -> int:
    return sum(c * bracket(p, G) for c, p in PS.terms)


class PairType:
    S = "S-type"
    T = "T-type"
    NONE = "not-inter-component"


def classify_pair(a, b, G: GaussDiagram | None = None) -> str:
    """Which of S, T (if any) a pair of arrows contributes to."""
    if G is not None and G.n_components != 2:
        raise ValueError("classify_pair needs a 2-component diagram")
    da = (a.tail.component, a.head.component)
    db = (b.tail.component, b.head.component)
    if da[0] == da[1] or db[0] == db[1]:
        return PairType.NONE
    return PairType.T if da == db else PairType.S


def based_class(P: ArrowPattern) -> list[ArrowPattern]:
    """The distinct based patterns whose unbased class is ``P``'s."""
    d = P.diagram
    ncomp = d.n_components
    if P.mode is Mode.BASED:
        return [ArrowPattern(d, P.signs, Mode.BASED)]
    words = d.words
    perms = (
        itertools.permutations(range(ncomp))
        if P.mode is Mode.ROTATE_PERMUTE
        else [tuple(range(ncomp))]
    )
    out, seen = [], set()
    for perm in perms:
        for shift in itertools.product(*[range(max(len(w), 1)) for w in words]):
            image = rotate_words(words, shift)
            image = [image[p] for p in perm]
            labels: dict[int, int] = {}
            for w in image:
                for code in w:
                    labels.setdefault(code >> 1, len(labels))
            new_words = [[(labels[c >> 1], bool(c & 1)) for c in w] for w in image]
            signs = [None] * len(labels)
            for old, new in labels.items():
                signs[new] = P.signs[old]
            key = (tuple(tuple(w) for w in new_words), tuple(signs))
            if key in seen:
                continue
            seen.add(key)
            out.append(
                ArrowPattern(
                    GaussDiagram.from_words(new_words, {i: 1 for i in range(len(labels))}),
                    tuple(signs),
                    Mode.BASED,
                )
            )
    return out


# -- built-in patterns ----------------------------------------------------------

LK01 = parse_pattern("O1/U1", Mode.BASED, "LK01")
LK10 = parse_pattern("U1/O1", Mode.BASED, "LK10")
# opposite-direction pair / same-direction pair of inter-component arrows
S = parse_pattern("O1U2/U1O2", Mode.ROTATE_PERMUTE, "S")
T = parse_pattern("O1O2/U1U2", Mode.ROTATE_PERMUTE, "T")

S_REPRESENTATIVES = based_class(S)
T_REPRESENTATIVES = based_class(T)

# Signed based terms summing to S on the L(m, n) family: the positive pair
# read tail-first on circle 0, the positive pair read head-first, and the
# mixed-sign pair.
S_EXPANSION_L = PatternSum.of(
    parse_pattern("O1+U2+/U1+O2+", Mode.BASED),
    parse_pattern("U1+O2+/O1+U2+", Mode.BASED),
    parse_pattern("O1+U2-/U1+O2-", Mode.BASED),
)

# Six direction-specific signed terms summing to T on K(m, n).
T_EXPANSION_K = PatternSum.of(
    parse_pattern("O1+O2+/U1+U2+", Mode.ROTATE),
    parse_pattern("U1+U2+/O1+O2+", Mode.ROTATE),
    parse_pattern("O1-O2-/U1-U2-", Mode.ROTATE),
    parse_pattern("U1-U2-/O1-O2-", Mode.ROTATE),
    parse_pattern("O1+O2-/U1+U2-", Mode.ROTATE),
    parse_pattern("U1+U2-/O1+O2-", Mode.ROTATE),
)


def brute_force_bracket(P: ArrowPattern, G: GaussDiagram) -> int:
    """Reference bracket by explicit isomorphism testing of each subset.

    Slow; used by tests as an oracle for the table-driven kernel.
    """
    from .diagram import isomorphic

    if P.n_components != G.n_components:
        raise ValueError("component count mismatch")
    total = 0
    for subset in itertools.combinations(range(G.n_crossings), P.degree):
        sub = induced(G, subset)
        for signs in itertools.product(*[(1, -1) if s is None else (s,) for s in P.signs]):
            cand = GaussDiagram.from_codes(P.diagram.words, signs)
            if isomorphic(cand, sub, P.mode):
                prod = 1
                for i in subset:
                    prod *= G.arrows[i].sign
                total += prod
                break
    return total


def induced(G: GaussDiagram, subset: Iterable[int]) -> GaussDiagram:
    """Subdiagram on the chosen arrows, slots compressed, base points kept."""
    keep = set(subset)
    words = [[(c >> 1, bool(c & 1)) for c in w if (c >> 1) in keep] for w in G.words]
    return GaussDiagram.from_words(words, dict(enumerate(G.signs)))
