"""Bounded search for the fewest crossing-removing inter-component Omega-2 moves.

States are diagrams up to rotation of base points and reordering of
components.  Every enumerated move is an edge; an edge costs 1 when it is a
negative Omega-2 between different components and 0 otherwise.  States with
more than ``max_crossings`` crossings are never generated, so the answer is
exact *within that bound* only.

Two expansion orders are available:

``potential="none"`` (default)
    plain 0-1 uniform-cost search.  Relies on nothing but the move
    enumeration, but must exhaust every zero-cost state first, which limits
    it to about six crossings.
``potential="T"``
    A* with ``h = max(0, T(target) - T(state))``.  Cost-1 moves raise T by
    exactly one and no other move raises it, so ``h`` never overestimates
    and is consistent; the first time the target is popped its cost is
    optimal.  That argument rests on the Delta-T law, which
    :func:`gausslink.verify.check_T_behavior` checks on a corpus.  The
    search also re-checks it on every edge it generates and reports the
    number of violations; a nonzero count voids the certificate.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from .diagram import GaussDiagram
from .kernels import canonical_key_bytes, linking_counts
from .moves import ALL_KINDS, MoveSite, apply_raw, enumerate_sites_raw

FOUND = "found"
BUDGET = "inconclusive-budget"
BOUND = "inconclusive-bound"


@dataclass
class SearchResult:
    status: str
    min_negative_omega2: int | None
    witness: list[MoveSite] = field(default_factory=list)
    states_explored: int = 0
    states_seen: int = 0
    potential_violations: int = 0

    @property
    def reachable(self) -> bool:
        return self.status == FOUND

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "reachable": self.reachable,
            "min_negative_omega2": self.min_negative_omega2,
            "witness": [s.to_json() for s in self.witness],
            "states_explored": self.states_explored,
            "states_seen": self.states_seen,
            "potential_violations": self.potential_violations,
        }


def _key(raw) -> bytes:
    return canonical_key_bytes(raw[0], raw[1], True)


def _T(raw) -> int:
    lk01, lk10, c01, c10 = linking_counts(*raw)
    return (lk01 ** 2 - c01 + lk10 ** 2 - c10) // 2


def edge_cost(site: MoveSite) -> int:
    return 1 if site.inter_component and site.kind.polarity < 0 else 0


def min_negative_omega2(
    source: GaussDiagram,
    target: GaussDiagram,
    max_crossings: int = 8,
    max_states: int = 200_000,
    potential: str = "none",
) -> SearchResult:
    """Fewest negative inter-component Omega-2 moves from ``source`` to ``target``.

    Returns ``status="found"`` with a replayable witness, or an
    inconclusive status when the state budget runs out
    (``"inconclusive-budget"``) or the bounded graph holds no path
    (``"inconclusive-bound"``: a path may still exist through larger
    diagrams).
    """
    if source.n_components != target.n_components:
        raise ValueError("source and target must have the same number of components")
    if max(source.n_crossings, target.n_crossings) > max_crossings:
        raise ValueError("source and target must fit under max_crossings")
    if potential not in ("T", "none"):
        raise ValueError("potential must be 'T' or 'none'")
    use_h = potential == "T" and source.n_components == 2
    goal = _key(target.raw)
    t_goal = _T(target.raw) if use_h else 0

    start = source.raw
    t_of = {}  # T per state, only tracked under the potential
    k0 = _key(start)
    # best[key] = cost so far; parent[key] = (parent key, site, representative)
    best: dict[bytes, int] = {k0: 0}
    parent: dict[bytes, tuple] = {k0: (None, None, start)}
    done: set[bytes] = set()
    tie = itertools.count()
    # priority: (f, -g, crossings, order)
    if use_h:
        t_of[k0] = _T(start)
    heap = [(max(0, t_goal - t_of[k0]) if use_h else 0, 0, len(start[1]), next(tie), k0)]
    explored = violations = 0
    while heap:
        f, neg_g, _, _, key = heapq.heappop(heap)
        g = -neg_g
        if key in done or best.get(key, g) < g:
            continue
        if key == goal:
            return SearchResult(FOUND, g, _witness(parent, key), explored, len(best), violations)
        done.add(key)
        explored += 1
        if explored > max_states:
            return SearchResult(BUDGET, None, [], explored - 1, len(best), violations)
        raw = parent[key][2]
        for site in enumerate_sites_raw(raw, ALL_KINDS, max_crossings):
            nxt = apply_raw(raw, site)
            nk = _key(nxt)
            cost = edge_cost(site)
            h = 0
            if use_h:
                t = t_of.get(nk)
                if t is None:
                    t = t_of[nk] = _T(nxt)
                if t - t_of[key] > cost:
                    violations += 1
                h = max(0, t_goal - t)
            if nk in done:
                continue
            ng = g + cost
            if ng < best.get(nk, ng + 1):
                best[nk] = ng
                parent[nk] = (key, site, nxt)
                heapq.heappush(heap, (ng + h, -ng, len(nxt[1]), next(tie), nk))
    return SearchResult(BOUND, None, [], explored, len(best), violations)


def _witness(parent, key) -> list[MoveSite]:
    """Sites along the parent chain.

    A state's stored representative is exactly the diagram its parent's
    representative becomes under the stored site, and representatives
    never change after expansion, so the chain replays verbatim from the
    source.
    """
    chain = []
    while parent[key][0] is not None:
        pkey, site, _ = parent[key]
        chain.append(site)
        key = pkey
    chain.reverse()
    return chain
