"""Reidemeister moves as rewrites of Gauss diagrams.

A move site is described by *strands*: ordered pairs of cyclically adjacent
slots ``((c, i), (c, (i + 1) % L))`` read along the component orientation.

* negative moves and Omega-3 name strands of the diagram they act on;
* positive moves name the strands that the new endpoints will occupy in the
  diagram they produce.

That convention makes every site self-inverting: the inverse of a site is the
same strands with the opposite polarity.

Variant labels
--------------
Omega-1 (one kink arrow, endpoints adjacent)::

    a: sign +, tail first    b: sign -, tail first
    c: sign +, head first    d: sign -, head first

Omega-2 (arrows x, y with adjacent tails on the over strand, x first, and
adjacent heads on the under strand; opposite signs)::

    a: heads in order x, y (parallel), x positive
    b: parallel, x negative
    c: heads in order y, x (antiparallel), x positive
    d: antiparallel, x negative

Omega-3 (top strand T with two tails, middle M with one head and one tail,
bottom B with two heads; arrows TM, TB, MB), keyed by the crossing signs
``(sign TM, sign TB, sign MB)``.  ``a`` and ``g`` are the two cyclic moves.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import kernels
from .diagram import GaussDiagram

Raw = tuple  # (words, signs)

OMEGA3_SIGNS = {
    "a": (1, -1, 1),
    "b": (1, 1, 1),
    "c": (1, -1, -1),
    "d": (1, 1, -1),
    "e": (-1, 1, 1),
    "f": (-1, -1, 1),
    "g": (-1, 1, -1),
    "h": (-1, -1, -1),
}
OMEGA3_BY_SIGNS = {v: k for k, v in OMEGA3_SIGNS.items()}

# (parallel, sign of first arrow along the over strand)
OMEGA2_SHAPE = {"a": (True, 1), "b": (True, -1), "c": (False, 1), "d": (False, -1)}
OMEGA2_BY_SHAPE = {v: k for k, v in OMEGA2_SHAPE.items()}

# (sign, tail first)
OMEGA1_SHAPE = {"a": (1, True), "b": (-1, True), "c": (1, False), "d": (-1, False)}
OMEGA1_BY_SHAPE = {v: k for k, v in OMEGA1_SHAPE.items()}

# One conjugation per Omega-3 variant: (positive Omega-2, inner Omega-3,
# negative Omega-2).  Following the inner variant's row down to "a" gives the
# full decomposition.
TABLE2 = {
    "b": ("c", "a", "d"),
    "c": ("c", "a", "d"),
    "d": ("a", "b", "b"),
    "e": ("a", "b", "b"),
    "f": ("d", "a", "c"),
    "g": ("c", "h", "d"),
    "h": ("a", "f", "b"),
}


class StaleSite(ValueError):
    """The site does not describe a legal move on the given diagram."""


class DecompositionError(RuntimeError):
    """No Omega-2 conjugation reproduced the direct Omega-3 move."""


@dataclass(frozen=True, order=True)
class MoveKind:
    family: int
    variant: str
    polarity: int = 0  # +1 adds crossings, -1 removes, 0 for Omega-3

    @property
    def name(self) -> str:
        suffix = {1: "+", -1: "-", 0: ""}[self.polarity]
        return f"O{self.family}{self.variant}{suffix}"

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, name: str) -> "MoveKind":
        name = name.strip()
        if len(name) < 3 or name[0] not in "OΩ" or name[1] not in "123":
            raise ValueError(f"bad move kind {name!r}")
        family = int(name[1])
        variant = name[2]
        rest = name[3:]
        polarity = {"+": 1, "-": -1, "": 0}.get(rest)
        if polarity is None or (family == 3) != (polarity == 0):
            raise ValueError(f"bad move kind {name!r}")
        table = {1: OMEGA1_SHAPE, 2: OMEGA2_SHAPE, 3: OMEGA3_SIGNS}[family]
        if variant not in table:
            raise ValueError(f"bad move kind {name!r}")
        return cls(family, variant, polarity)


ALL_KINDS = tuple(
    [MoveKind(1, v, p) for v in "abcd" for p in (1, -1)]
    + [MoveKind(2, v, p) for v in "abcd" for p in (1, -1)]
    + [MoveKind(3, v, 0) for v in "abcdefgh"]
)


@dataclass(frozen=True)
class MoveSite:
    kind: MoveKind
    strands: tuple  # tuple of ((c, i), (c, j)) pairs
    signs: tuple = ()  # signs of the arrows the move creates or removes

    @property
    def crossing_change(self) -> int:
        return {1: 1, 2: 2, 3: 0}[self.kind.family] * self.kind.polarity

    @property
    def inter_component(self) -> bool:
        """True for an Omega-2 whose two strands lie on different components."""
        return self.kind.family == 2 and self.strands[0][0][0] != self.strands[1][0][0]

    def to_json(self) -> dict:
        return {
            "kind": self.kind.name,
            "strands": [[list(e) for e in pair] for pair in self.strands],
            "signs": list(self.signs),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MoveSite":
        kind = MoveKind.parse(obj["kind"])
        strands = tuple(tuple(tuple(int(x) for x in e) for e in pair) for pair in obj["strands"])
        return cls(kind, strands, tuple(int(s) for s in obj.get("signs", ())))


# -- raw helpers --------------------------------------------------------------


def locate(words) -> list[list[int]]:
    """Per arrow ``[tail_comp, tail_pos, head_comp, head_pos]``."""
    n = sum(len(w) for w in words) // 2
    loc = [[0, 0, 0, 0] for _ in range(n)]
    for c, w in enumerate(words):
        for p, code in enumerate(w):
            r = loc[code >> 1]
            if code & 1:
                r[0] = c
                r[1] = p
            else:
                r[2] = c
                r[3] = p
    return loc


def _finish(words, signs) -> tuple[Raw, dict]:
    """Normalise labelled words; return raw form and label -> index map."""
    index: dict = {}
    out = []
    for w in words:
        row = []
        for label, tail in w:
            if label not in index:
                index[label] = len(index)
            row.append(2 * index[label] + tail)
        out.append(tuple(row))
    new_signs = [0] * len(index)
    for label, i in index.items():
        new_signs[i] = signs[label]
    return (tuple(out), tuple(new_signs)), index


def _labelled(words):
    return [[(code >> 1, code & 1) for code in w] for w in words]


def _pair_ok(pair, lengths) -> bool:
    (c, i), (c2, j) = pair
    if c != c2 or not 0 <= c < len(lengths):
        return False
    n = lengths[c]
    return n >= 2 and 0 <= i < n and j == (i + 1) % n


# -- enumeration ----------------------------------------------------------------


def _adjacent_pairs(words):
    for c, w in enumerate(words):
        n = len(w)
        if n < 2:
            continue
        for i in range(n):
            yield c, i, (i + 1) % n


def negative_omega1_sites(raw: Raw) -> list[MoveSite]:
    words, signs = raw
    out, seen = [], set()
    for c, i, j in _adjacent_pairs(words):
        x, y = words[c][i], words[c][j]
        a = x >> 1
        if a != y >> 1 or a in seen:
            continue
        seen.add(a)
        variant = OMEGA1_BY_SHAPE[(signs[a], bool(x & 1))]
        out.append(MoveSite(MoveKind(1, variant, -1), (((c, i), (c, j)),), (signs[a],)))
    return out


def negative_omega2_sites(raw: Raw) -> list[MoveSite]:
    words, signs = raw
    loc = None
    out, seen = [], set()
    for c, i, j in _adjacent_pairs(words):
        u, v = words[c][i], words[c][j]
        if not (u & 1 and v & 1):
            continue
        x, y = u >> 1, v >> 1
        if x == y or signs[x] != -signs[y]:
            continue
        key = frozenset((x, y))
        if key in seen:
            continue
        if loc is None:
            loc = locate(words)
        hcx, hpx = loc[x][2], loc[x][3]
        hcy, hpy = loc[y][2], loc[y][3]
        if hcx != hcy:
            continue
        n = len(words[hcx])
        if (hpx + 1) % n == hpy:
            parallel, under = True, ((hcx, hpx), (hcx, hpy))
        elif (hpy + 1) % n == hpx:
            parallel, under = False, ((hcx, hpy), (hcx, hpx))
        else:
            continue
        seen.add(key)
        variant = OMEGA2_BY_SHAPE[(parallel, signs[x])]
        out.append(
            MoveSite(MoveKind(2, variant, -1), (((c, i), (c, j)), under), (signs[x], signs[y]))
        )
    return out


def _omega3_check(words, signs, t_pair, m_pair, b_pair):
    """Variant letter if the three strands form a legal Omega-3 triangle."""
    (tc, ti), (_, tj) = t_pair
    (mc, mi), (_, mj) = m_pair
    (bc, bi), (_, bj) = b_pair
    t0, t1 = words[tc][ti], words[tc][tj]
    m0, m1 = words[mc][mi], words[mc][mj]
    b0, b1 = words[bc][bi], words[bc][bj]
    if not (t0 & 1 and t1 & 1) or (b0 & 1) or (b1 & 1) or (m0 & 1) == (m1 & 1):
        return None
    mh, mt = (m0, m1) if not m0 & 1 else (m1, m0)
    a, cc = mh >> 1, mt >> 1
    tset = {t0 >> 1, t1 >> 1}
    if a not in tset or len(tset) != 2:
        return None
    (b,) = tset - {a}
    if {b0 >> 1, b1 >> 1} != {b, cc} or len({a, b, cc}) != 3:
        return None
    e_t = 1 if t0 >> 1 == a else -1
    e_m = 1 if m0 >> 1 == a else -1
    e_b = 1 if b0 >> 1 == b else -1
    sa, sb, sc = signs[a], signs[b], signs[cc]
    if e_t * e_m != sb * sc or e_t * e_b != sa * sc:
        return None
    return OMEGA3_BY_SIGNS[(sa, sb, sc)]


def omega3_sites(raw: Raw, within: Iterable[int] | None = None) -> list[MoveSite]:
    """All legal Omega-3 sites, optionally only triangles inside ``within``."""
    words, signs = raw
    loc = locate(words)
    wanted = frozenset(within) if within is not None else None
    if wanted is None:
        pairs: Iterable = _adjacent_pairs(words)
    else:
        # the top strand carries two tails of the triangle's arrows
        cand = set()
        for a in wanted:
            c, p = loc[a][0], loc[a][1]
            n = len(words[c])
            if n >= 2:
                cand.add((c, (p - 1) % n, p))
                cand.add((c, p, (p + 1) % n))
        pairs = sorted(cand)
    out, seen = [], set()
    for c, i, j in pairs:
        u, v = words[c][i], words[c][j]
        if not (u & 1 and v & 1) or u >> 1 == v >> 1:
            continue
        t_pair = ((c, i), (c, j))
        for a, b in ((u >> 1, v >> 1), (v >> 1, u >> 1)):
            hc, hp = loc[a][2], loc[a][3]
            n = len(words[hc])
            for m_pair in (((hc, (hp - 1) % n), (hc, hp)), ((hc, hp), (hc, (hp + 1) % n))):
                if n < 2:
                    continue
                other = words[hc][m_pair[0][1] if m_pair[1][1] == hp else m_pair[1][1]]
                if not other & 1:
                    continue
                cc = other >> 1
                if cc in (a, b):
                    continue
                if wanted is not None and not {a, b, cc} <= wanted:
                    continue
                trip = (a, b, cc)
                if trip in seen:
                    continue
                bc1, bp1 = loc[b][2], loc[b][3]
                bc2, bp2 = loc[cc][2], loc[cc][3]
                if bc1 != bc2:
                    continue
                nb = len(words[bc1])
                cands = []
                if (bp1 + 1) % nb == bp2:
                    cands.append(((bc1, bp1), (bc1, bp2)))
                if (bp2 + 1) % nb == bp1:
                    cands.append(((bc1, bp2), (bc1, bp1)))
                for b_pair in cands:
                    variant = _omega3_check(words, signs, t_pair, m_pair, b_pair)
                    if variant is not None:
                        seen.add(trip)
                        out.append(
                            MoveSite(
                                MoveKind(3, variant, 0),
                                (t_pair, m_pair, b_pair),
                                (signs[a], signs[b], signs[cc]),
                            )
                        )
                        break
    return out


def _gaps(final_len: int):
    """Strands ``(p, p + 1)`` of a component that will have ``final_len`` slots.

    The last one wraps past the base point.  On a 2-slot result the wrapped
    strand repeats the plain one with the endpoints swapped, so it is skipped.
    """
    last = final_len if final_len > 2 else final_len - 1
    return [(p, (p + 1) % final_len) for p in range(last)]


def positive_omega1_sites(raw: Raw) -> Iterator[MoveSite]:
    words, _ = raw
    for c, w in enumerate(words):
        for p, q in _gaps(len(w) + 2):
            for variant, (sign, _) in OMEGA1_SHAPE.items():
                yield MoveSite(MoveKind(1, variant, 1), (((c, p), (c, q)),), (sign,))


def positive_omega2_sites(raw: Raw, inter_only: bool = False) -> Iterator[MoveSite]:
    words, _ = raw
    k = len(words)
    for co, cu in itertools.product(range(k), repeat=2):
        if co == cu:
            if inter_only:
                continue
            n = len(words[co]) + 4
            gaps = _gaps(n)
            spots = [
                (g, h) for g in gaps for h in gaps if len({g[0], g[1], h[0], h[1]}) == 4
            ]
        else:
            spots = itertools.product(_gaps(len(words[co]) + 2), _gaps(len(words[cu]) + 2))
        for (po, po2), (pu, pu2) in spots:
            for variant, (_, first) in OMEGA2_SHAPE.items():
                yield MoveSite(
                    MoveKind(2, variant, 1),
                    (((co, po), (co, po2)), ((cu, pu), (cu, pu2))),
                    (first, -first),
                )


def enumerate_sites_raw(
    raw: Raw, kinds: Iterable[MoveKind] | None = None, max_crossings: int | None = None
) -> list[MoveSite]:
    wanted = set(ALL_KINDS if kinds is None else kinds)
    families = {(k.family, k.polarity) for k in wanted}
    n = len(raw[1])
    out: list[MoveSite] = []
    if (1, -1) in families:
        out += negative_omega1_sites(raw)
    if (2, -1) in families:
        out += negative_omega2_sites(raw)
    if (3, 0) in families:
        out += omega3_sites(raw)
    if (1, 1) in families and (max_crossings is None or n + 1 <= max_crossings):
        out += positive_omega1_sites(raw)
    if (2, 1) in families and (max_crossings is None or n + 2 <= max_crossings):
        out += positive_omega2_sites(raw)
    return [s for s in out if s.kind in wanted]


def enumerate_sites(
    d: GaussDiagram, kinds: Iterable[MoveKind] | None = None, max_crossings: int | None = None
) -> list[MoveSite]:
    """Every site of the requested kinds on ``d``.

    Positive moves form an unbounded family in principle; here one site is
    listed per (insertion slots, variant), and ``max_crossings`` drops
    positive moves whose result would exceed it.
    """
    return enumerate_sites_raw(d.raw, kinds, max_crossings)


# -- application ----------------------------------------------------------------


def _apply_negative1(raw, site):
    words, signs = raw
    lengths = [len(w) for w in words]
    (pair,) = site.strands
    if not _pair_ok(pair, lengths):
        raise StaleSite(f"{site.kind}: strand {pair} is not an adjacent slot pair")
    (c, i), (_, j) = pair
    x, y = words[c][i], words[c][j]
    sign, tail_first = OMEGA1_SHAPE[site.kind.variant]
    if x >> 1 != y >> 1 or bool(x & 1) != tail_first or signs[x >> 1] != sign:
        raise StaleSite(f"{site.kind}: no matching kink at {pair}")
    return _remove(words, signs, {x >> 1})


def _remove(words, signs, arrows):
    lab = [[e for e in w if e[0] not in arrows] for w in _labelled(words)]
    return _finish(lab, dict(enumerate(signs)))


def _apply_negative2(raw, site):
    words, signs = raw
    lengths = [len(w) for w in words]
    over, under = site.strands
    if not (_pair_ok(over, lengths) and _pair_ok(under, lengths)):
        raise StaleSite(f"{site.kind}: strands are not adjacent slot pairs")
    parallel, first = OMEGA2_SHAPE[site.kind.variant]
    (c, i), (_, j) = over
    u, v = words[c][i], words[c][j]
    (uc, ui), (_, uj) = under
    p, q = words[uc][ui], words[uc][uj]
    x, y = u >> 1, v >> 1
    expected_heads = (2 * x, 2 * y) if parallel else (2 * y, 2 * x)
    if (
        not (u & 1 and v & 1)
        or x == y
        or signs[x] != first
        or signs[y] != -first
        or (p, q) != expected_heads
    ):
        raise StaleSite(f"{site.kind}: no matching cancelling pair")
    return _remove(words, signs, {x, y})


def _apply_omega3(raw, site):
    words, signs = raw
    lengths = [len(w) for w in words]
    if len(site.strands) != 3 or not all(_pair_ok(p, lengths) for p in site.strands):
        raise StaleSite(f"{site.kind}: strands are not adjacent slot pairs")
    variant = _omega3_check(words, signs, *site.strands)
    if variant != site.kind.variant:
        raise StaleSite(f"{site.kind}: strands do not form this Omega-3 triangle")
    rows = [list(w) for w in words]
    for (c, i), (_, j) in site.strands:
        rows[c][i], rows[c][j] = rows[c][j], rows[c][i]
    lab = [[(code >> 1, code & 1) for code in w] for w in rows]
    return _finish(lab, dict(enumerate(signs)))


def _insert(words, signs, placements, new_signs):
    """Place new endpoints at final positions, old ones fill the rest.

    ``placements`` holds ``((c, p), (("new", k), is_tail))``; ``new_signs``
    maps ``("new", k)`` to the sign of new arrow ``k``.
    """
    seen = set()
    grow: dict[int, int] = {}
    flat = []
    for (c, p), ((_, k), tail) in placements:
        if not 0 <= c < len(words):
            raise StaleSite(f"component {c} out of range")
        if (c, p) in seen:
            raise StaleSite(f"slot ({c}, {p}) used twice")
        seen.add((c, p))
        grow[c] = grow.get(c, 0) + 1
        flat.append((c, p, k, tail))
    for c, p, _, _ in flat:
        if not 0 <= p < len(words[c]) + grow[c]:
            raise StaleSite(f"insertion position out of range on component {c}")
    signs_new = [new_signs[("new", k)] for k in range(len(new_signs))]
    out_words, out_signs, relabel = kernels.insert_arrows(words, signs, flat, signs_new)
    n_old = len(signs)
    index = {a: relabel[a] for a in range(n_old)}
    for k in range(len(signs_new)):
        index[("new", k)] = relabel[n_old + k]
    return (out_words, out_signs), index


def _check_result_pair(pair, c_len_after):
    (c, i), (c2, j) = pair
    if c != c2 or not 0 <= i < c_len_after or j != (i + 1) % c_len_after:
        raise StaleSite(f"strand {pair} is not an adjacent slot pair in the result")


def _apply_positive1(raw, site):
    words, signs = raw
    (pair,) = site.strands
    c = pair[0][0]
    if not 0 <= c < len(words):
        raise StaleSite(f"component {c} out of range")
    _check_result_pair(pair, len(words[c]) + 2)
    sign, tail_first = OMEGA1_SHAPE[site.kind.variant]
    new = ("new", 0)
    placements = [(pair[0], (new, 1 if tail_first else 0)), (pair[1], (new, 0 if tail_first else 1))]
    return _insert(words, signs, placements, {new: sign})


def _apply_positive2(raw, site):
    words, signs = raw
    over, under = site.strands
    co, cu = over[0][0], under[0][0]
    if not (0 <= co < len(words) and 0 <= cu < len(words)):
        raise StaleSite("component out of range")
    grow = {co: 2}
    grow[cu] = grow.get(cu, 0) + 2
    _check_result_pair(over, len(words[co]) + grow[co])
    _check_result_pair(under, len(words[cu]) + grow[cu])
    parallel, first = OMEGA2_SHAPE[site.kind.variant]
    x, y = ("new", 0), ("new", 1)
    heads = (x, y) if parallel else (y, x)
    placements = [
        (over[0], (x, 1)),
        (over[1], (y, 1)),
        (under[0], (heads[0], 0)),
        (under[1], (heads[1], 0)),
    ]
    return _insert(words, signs, placements, {x: first, y: -first})


def apply_raw_tracked(raw: Raw, site: MoveSite) -> tuple[Raw, dict]:
    """Apply ``site``; also return the map from old arrow ids / new labels to new ids."""
    fam, pol = site.kind.family, site.kind.polarity
    if fam == 3:
        return _apply_omega3(raw, site)
    if pol < 0:
        return (_apply_negative1 if fam == 1 else _apply_negative2)(raw, site)
    return (_apply_positive1 if fam == 1 else _apply_positive2)(raw, site)


def apply_raw(raw: Raw, site: MoveSite) -> Raw:
    return apply_raw_tracked(raw, site)[0]


def apply(d: GaussDiagram, site: MoveSite) -> GaussDiagram:
    """Rewrite ``d`` by ``site``; raises :class:`StaleSite` if it does not fit."""
    return GaussDiagram.from_codes(*apply_raw(d.raw, site))


def inverse(site: MoveSite, after: GaussDiagram) -> MoveSite:
    """Site on ``after`` undoing ``site`` (same strands, opposite polarity)."""
    inv = MoveSite(MoveKind(site.kind.family, site.kind.variant, -site.kind.polarity), site.strands, site.signs)
    if inv.kind.polarity >= 0:
        return inv
    # negative inverse must be present on the diagram it will act on
    try:
        apply_raw(after.raw, inv)
    except StaleSite as exc:  # pragma: no cover - bookkeeping defect
        raise RuntimeError(f"inverse of {site.kind} does not fit: {exc}") from exc
    return inv


# -- Omega-3 decompositions --------------------------------------------------------


@dataclass
class Decomposition:
    """A move sequence equivalent to one Omega-3 move.

    ``levels`` records, outermost first, ``(variant, positive Omega-2 site,
    negative Omega-2 site)`` for each conjugation step.  ``exact`` is False
    when the composite matches the direct move only after rotating base
    points (see :func:`decompose_via_table2`).
    """

    sites: list[MoveSite]
    levels: list[tuple[str, MoveSite, MoveSite]] = field(default_factory=list)
    exact: bool = True


def _rotation_key(raw: Raw):
    from .kernels import canonical_key_bytes

    return canonical_key_bytes(raw[0], raw[1], False)


def _decompose(raw: Raw, site: MoveSite, exact: bool = True) -> tuple[Decomposition, Raw]:
    """Decomposition of ``site`` and the diagram it actually ends on."""
    v = site.kind.variant
    target = apply_raw(raw, site)
    if v == "a":
        return Decomposition([site], exact=exact), target
    pos_v, mid_v, neg_v = TABLE2[v]
    old = _triangle_arrows(raw, site)
    near = _triangle_slots(site)
    goal = target if exact else _rotation_key(target)
    # the row's Omega-2 pair, or the same pair performed from the other side
    for first, last in ((pos_v, neg_v), (neg_v, pos_v)):
        found = _conjugate(raw, site, old, near, goal, exact, first, mid_v, last)
        if found is not None:
            return found
    raise DecompositionError(f"no conjugation found for {site.kind} at {site.strands}")


def _triangle_slots(site: MoveSite) -> dict[int, set[int]]:
    out: dict[int, set[int]] = {}
    for pair in site.strands:
        for c, i in pair:
            out.setdefault(c, set()).add(i)
    return out


def _near(pos: MoveSite, lengths, near) -> bool:
    """Both inserted strands sit in gaps touching a triangle endpoint."""
    new_at: dict[int, list[int]] = {}
    for (c, p), (_, q) in pos.strands:
        new_at.setdefault(c, []).extend((p, q))
    for (c, p), (_, q) in pos.strands:
        L = lengths[c]
        slots = near.get(c)
        if not slots or not L:
            return False
        if q == 0:
            g = 0
        else:
            g = p - sum(1 for x in new_at[c] if x < p)
        if (g - 1) % L not in slots and g % L not in slots:
            return False
    return True


def _conjugate(raw, site, old, near, goal, exact, pos_v, mid_v, neg_v):
    pos_kind = MoveKind(2, pos_v, 1)
    lengths = [len(w) for w in raw[0]]
    for pos in positive_omega2_sites(raw):
        if pos.kind != pos_kind or not _near(pos, lengths, near):
            continue
        raw1, index = apply_raw_tracked(raw, pos)
        kept = {index[a] for a in old}
        fresh = {index[("new", 0)], index[("new", 1)]}
        for mid in omega3_sites(raw1, kept | fresh):
            tri = set(_triangle_arrows(raw1, mid))
            if mid.kind.variant != mid_v or len(tri & fresh) != 1:
                continue
            try:
                inner, raw2 = _decompose(raw1, mid, exact)
            except DecompositionError:
                continue
            for neg in negative_omega2_sites(raw2):
                if neg.kind.variant != neg_v:
                    continue
                out = apply_raw(raw2, neg)
                if (out == goal) if exact else (_rotation_key(out) == goal):
                    dec = Decomposition(
                        [pos] + inner.sites + [neg],
                        [(site.kind.variant, pos, neg)] + inner.levels,
                        exact,
                    )
                    return dec, out
    return None


def _triangle_arrows(raw: Raw, site: MoveSite) -> tuple[int, int, int]:
    words, _ = raw
    t_pair, m_pair, _ = site.strands
    (tc, ti), (_, tj) = t_pair
    (mc, mi), (_, mj) = m_pair
    m0, m1 = words[mc][mi], words[mc][mj]
    mh, mt = (m0, m1) if not m0 & 1 else (m1, m0)
    a = mh >> 1
    tset = {words[tc][ti] >> 1, words[tc][tj] >> 1}
    (b,) = tset - {a}
    return a, b, mt >> 1


def crosses_base_point(site: MoveSite) -> bool:
    """True when a side of the site's triangle runs over a base point."""
    return any(j == 0 and i != 0 for (_, i), (_, j) in site.strands)


def decompose_via_table2(d: GaussDiagram, site: MoveSite) -> Decomposition:
    """Rewrite an Omega-3 b..h move as Omega-2 conjugations of Omega-3a.

    Each step follows :data:`TABLE2`: add a crossing pair, perform the
    inner Omega-3, remove a crossing pair, recursing until the inner move is
    Omega-3a.  Applied to ``d`` the sequence gives exactly ``apply(d, site)``.

    When a side of the triangle passes over a base point, no conjugation
    can keep the base point on the same arc; the sequence then reproduces
    ``apply(d, site)`` up to rotating base points and the result has
    ``exact=False``.
    """
    if site.kind.family != 3 or site.kind.variant == "a":
        raise ValueError("decompose_via_table2 expects an Omega-3 b..h site")
    apply_raw(d.raw, site)  # stale check
    try:
        return _decompose(d.raw, site)[0]
    except DecompositionError:
        if not crosses_base_point(site):
            raise
    return _decompose(d.raw, site, exact=False)[0]


def replay(d: GaussDiagram, sites: Sequence[MoveSite]) -> list[GaussDiagram]:
    """All diagrams along a move sequence, starting with ``d``."""
    out = [d]
    raw = d.raw
    for s in sites:
        raw = apply_raw(raw, s)
        out.append(GaussDiagram.from_codes(*raw))
    return out
