"""Generators for the named two-component diagram families.

All generators are deterministic: the same parameters always give the same
diagram, slot for slot.
"""
from __future__ import annotations

from .diagram import GaussDiagram
from .moves import MoveKind, MoveSite, apply, positive_omega2_sites

FAMILIES = ("torus", "torus-prime", "dn", "L", "K")


def _check(name, value, low=0):
    if not isinstance(value, int) or value < low:
        raise ValueError(f"{name} must be an integer >= {low}, got {value!r}")


def gen_torus(n: int) -> GaussDiagram:
    """Standard (2, 2n) torus link: 2n positive crossings, alternating directions."""
    _check("n", n)
    c0, c1, signs = [], [], {}
    for i in range(1, 2 * n + 1):
        forward = i % 2 == 1  # odd arrows run circle 0 -> circle 1
        c0.append((i, forward))
        c1.append((i, not forward))
        signs[i] = 1
    return GaussDiagram.from_words([c0, c1], signs)


def first_inter_omega2(d: GaussDiagram) -> MoveSite:
    return next(positive_omega2_sites(d.raw, inter_only=True))


def gen_torus_prime(n: int) -> GaussDiagram:
    """Torus link with one extra crossing-adding Omega-2 between the circles."""
    d = gen_torus(n)
    return apply(d, first_inter_omega2(d))


def gen_Dn(n: int) -> GaussDiagram:
    """Two unlinked circles pushed across each other n times (nested Omega-2c).

    Circle 0 reads ``x1 .. xn yn .. y1`` and circle 1 ``y1 .. yn xn .. x1``,
    every arrow going from circle 0 to circle 1, ``x`` positive, ``y``
    negative.
    """
    _check("n", n)
    d = GaussDiagram.empty(2)
    kind = MoveKind(2, "c", 1)
    for k in range(1, n + 1):
        site = MoveSite(kind, (((0, k - 1), (0, k)), ((1, k - 1), (1, k))), (1, -1))
        d = apply(d, site)
    return d


def gen_L(m: int, n: int) -> GaussDiagram:
    """Virtual family with ``<S> = n(n - m)``.

    The 2n positive arrows of the torus layout come first on both circles,
    followed by a block of m negative arrows from circle 1 to circle 0.
    """
    _check("n", n, 1)
    _check("m", m)
    d = gen_torus(n)
    # torus words number arrows 0..2n-1 in slot order on both circles
    c0 = [(c >> 1, bool(c & 1)) for c in d.words[0]]
    c1 = [(c >> 1, bool(c & 1)) for c in d.words[1]]
    signs = dict(enumerate(d.signs))
    for j in range(m):
        label = ("neg", j)
        c0.append((label, False))
        c1.append((label, True))
        signs[label] = -1
    return GaussDiagram.from_words([c0, c1], signs)


def gen_K(m: int, n: int) -> GaussDiagram:
    """Closure of a 2-strand braid with 2n positive then 2m negative crossings.

    ``<T> = (n - m)^2 - (n + m)``.
    """
    _check("n", n)
    _check("m", m)
    c0, c1, signs = [], [], {}
    for i in range(1, 2 * n + 1):
        forward = i % 2 == 1
        c0.append((("p", i), forward))
        c1.append((("p", i), not forward))
        signs[("p", i)] = 1
    for j in range(1, 2 * m + 1):
        forward = j % 2 == 0
        c0.append((("n", j), forward))
        c1.append((("n", j), not forward))
        signs[("n", j)] = -1
    return GaussDiagram.from_words([c0, c1], signs)


def generate(family: str, *params: int) -> GaussDiagram:
    """Dispatch by family name; ``L`` and ``K`` take ``(m, n)``, others ``(n,)``."""
    fam = family.lower().replace("_", "-")
    one = {"torus": gen_torus, "torus-prime": gen_torus_prime, "dn": gen_Dn}
    if fam in one:
        if len(params) != 1:
            raise ValueError(f"{family} takes one parameter n")
        return one[fam](*params)
    if fam in ("l", "k"):
        if len(params) != 2:
            raise ValueError(f"{family} takes two parameters m n")
        return (gen_L if fam == "l" else gen_K)(*params)
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
