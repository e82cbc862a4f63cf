"""Closed-form linking invariants of 2-component diagrams.

Counting pairs of inter-component arrows directly gives

    S = lk01 * lk10
    T = (lk01**2 - c01 + lk10**2 - c10) / 2

where ``lk_ij`` is the signed and ``c_ij`` the raw number of arrows from
circle i to circle j.  :mod:`gausslink.pairing` computes the same numbers by
subset enumeration; tests hold the two against each other.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import NamedTuple

from .diagram import GaussDiagram


class LinkingCounts(NamedTuple):
    lk01: int
    lk10: int
    c01: int
    c10: int


def _need_two(G: GaussDiagram, what: str) -> None:
    if G.n_components != 2:
        raise ValueError(f"{what} needs a 2-component diagram, got {G.n_components}")


def linking_numbers(G: GaussDiagram) -> LinkingCounts:
    _need_two(G, "linking_numbers")
    lk01 = lk10 = c01 = c10 = 0
    for a in G.arrows:
        t, h = a.tail.component, a.head.component
        if t == 0 and h == 1:
            lk01 += a.sign
            c01 += 1
        elif t == 1 and h == 0:
            lk10 += a.sign
            c10 += 1
    return LinkingCounts(lk01, lk10, c01, c10)


def multiple_linking_S(G: GaussDiagram) -> int:
    lk = linking_numbers(G)
    return lk.lk01 * lk.lk10


def multiple_linking_T(G: GaussDiagram) -> int:
    lk = linking_numbers(G)
    return (lk.lk01 ** 2 - lk.c01 + lk.lk10 ** 2 - lk.c10) // 2


def rii_lower_bound(source: GaussDiagram, target: GaussDiagram | None = None) -> int:
    """Lower bound on inter-component Omega-2 moves between two diagrams.

    A crossing-removing inter-component Omega-2 raises T by exactly one,
    its inverse lowers it by one, and every other move leaves T alone, so
    any sequence from ``source`` to ``target`` contains at least
    ``|T(target) - T(source)|`` such moves of either polarity.  When T
    rises, all of them can be taken to be crossing-removing ones.
    ``target`` defaults to the crossingless diagram (T = 0).
    """
    t_to = 0 if target is None else multiple_linking_T(target)
    return abs(t_to - multiple_linking_T(source))


@dataclass(frozen=True)
class InvariantReport:
    lk01: int | None
    lk10: int | None
    S: int | None
    T: int | None
    crossings: int
    components: int
    rii_lower_bound: int | None

    def as_dict(self) -> dict:
        return asdict(self)


def report(G: GaussDiagram, target: GaussDiagram | None = None) -> InvariantReport:
    """All invariants at once.

    The linking fields are ``None`` when ``G`` does not have exactly two
    components.
    """
    if G.n_components != 2:
        return InvariantReport(None, None, None, None, G.n_crossings, G.n_components, None)
    lk = linking_numbers(G)
    T = (lk.lk01 ** 2 - lk.c01 + lk.lk10 ** 2 - lk.c10) // 2
    return InvariantReport(
        lk01=lk.lk01,
        lk10=lk.lk10,
        S=lk.lk01 * lk.lk10,
        T=T,
        crossings=G.n_crossings,
        components=G.n_components,
        rii_lower_bound=rii_lower_bound(G, target),
    )
