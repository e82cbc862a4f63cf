"""Gauss diagrams as immutable values.

A diagram is a list of ordered, based circles (components) carrying signed
arrows.  Each arrow runs from its tail (the over-passage) to its head (the
under-passage); the sign is the crossing writhe.  Slot 0 of every component
is its base point.

Internally most algorithms work on the *word* form: one tuple per component
whose entries are ``2 * arrow + is_tail``.  Diagrams built by this package
always number their arrows in order of first appearance along the words, so
two diagrams are based-exact isomorphic exactly when they compare equal.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence


class Mode(str, enum.Enum):
    """Equivalence used when comparing diagrams or matching patterns."""

    BASED = "based-exact"
    ROTATE = "rotate-basepoints"
    ROTATE_PERMUTE = "rotate-and-permute-components"


class InvalidDiagram(ValueError):
    """Raised when a diagram violates the slot-coverage rules."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True, order=True)
class Endpoint:
    component: int
    position: int


@dataclass(frozen=True)
class Arrow:
    tail: Endpoint
    head: Endpoint
    sign: int


Words = tuple  # tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class GaussDiagram:
    lengths: tuple[int, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(self.lengths))
        object.__setattr__(self, "arrows", tuple(self.arrows))

    # -- construction -------------------------------------------------------

    @classmethod
    def empty(cls, components: int = 2) -> "GaussDiagram":
        return cls((0,) * components, ())

    @classmethod
    def from_words(
        cls,
        words: Iterable[Iterable[tuple[Hashable, bool]]],
        signs: Mapping[Hashable, int],
    ) -> "GaussDiagram":
        """Build a diagram from labelled words.

        Each word lists ``(label, is_tail)`` pairs in slot order.  Labels are
        arbitrary hashables; arrows are renumbered by first appearance.
        """
        index: dict[Hashable, int] = {}
        codes = []
        for word in words:
            row = []
            for label, is_tail in word:
                if label not in index:
                    index[label] = len(index)
                row.append(2 * index[label] + (1 if is_tail else 0))
            codes.append(tuple(row))
        new_signs = [0] * len(index)
        for label, i in index.items():
            new_signs[i] = signs[label]
        return cls.from_codes(tuple(codes), tuple(new_signs))

    @classmethod
    def from_codes(cls, words: Words, signs: Sequence[int]) -> "GaussDiagram":
        """Build from already-normalised word codes (see module docstring)."""
        tails: list = [None] * len(signs)
        heads: list = [None] * len(signs)
        for c, word in enumerate(words):
            for p, code in enumerate(word):
                if code & 1:
                    tails[code >> 1] = Endpoint(c, p)
                else:
                    heads[code >> 1] = Endpoint(c, p)
        arrows = tuple(Arrow(t, h, s) for t, h, s in zip(tails, heads, signs))
        d = cls(tuple(len(w) for w in words), arrows)
        d.__dict__["words"] = tuple(tuple(w) for w in words)
        return d

    # -- derived views --------------------------------------------------------

    @cached_property
    def words(self) -> Words:
        errors = validate(self)
        if errors:
            raise InvalidDiagram(errors)
        rows = [[0] * n for n in self.lengths]
        for i, a in enumerate(self.arrows):
            rows[a.tail.component][a.tail.position] = 2 * i + 1
            rows[a.head.component][a.head.position] = 2 * i
        return tuple(tuple(r) for r in rows)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(a.sign for a in self.arrows)

    @property
    def raw(self) -> tuple[Words, tuple[int, ...]]:
        return self.words, self.signs

    @property
    def n_components(self) -> int:
        return len(self.lengths)

    @property
    def n_crossings(self) -> int:
        return len(self.arrows)

    def normalized(self) -> "GaussDiagram":
        """Same diagram with arrows renumbered by first appearance."""
        return GaussDiagram.from_words(
            [[(code >> 1, bool(code & 1)) for code in w] for w in self.words],
            dict(enumerate(self.signs)),
        )

    def __repr__(self) -> str:
        from .codec import serialize

        return f"GaussDiagram({serialize(self)!r})"


def validate(d: GaussDiagram, *, classical: bool = False) -> list[str]:
    """Return every violated well-formedness rule (empty list when valid).

    With ``classical=True`` odd component lengths are also reported; virtual
    diagrams (e.g. one inter-component arrow) legitimately have them.
    """
    errors = []
    for c, n in enumerate(d.lengths):
        if not isinstance(n, int) or n < 0:
            errors.append(f"component {c}: length must be a nonnegative integer")
        elif classical and n % 2:
            errors.append(f"component {c}: odd component length {n}")
    if errors:
        return errors
    if sum(d.lengths) != 2 * len(d.arrows):
        errors.append(
            f"slot count {sum(d.lengths)} does not equal twice the arrow count "
            f"({2 * len(d.arrows)})"
        )
    seen: dict[Endpoint, int] = {}
    for i, a in enumerate(d.arrows):
        if a.sign not in (1, -1):
            errors.append(f"arrow {i}: sign must be +1 or -1")
        if a.tail == a.head:
            errors.append(f"arrow {i}: tail and head share a slot")
        for end in (a.tail, a.head):
            if not 0 <= end.component < len(d.lengths):
                errors.append(f"arrow {i}: component {end.component} out of range")
            elif not 0 <= end.position < d.lengths[end.component]:
                errors.append(
                    f"arrow {i}: position {end.position} out of range on "
                    f"component {end.component}"
                )
            elif end in seen and seen[end] != i:
                errors.append(
                    f"slot ({end.component}, {end.position}) covered by arrows "
                    f"{seen[end]} and {i}"
                )
            else:
                seen[end] = i
    return errors


# -- symmetry transforms ----------------------------------------------------


def rotate_words(words: Words, shifts: Sequence[int]) -> Words:
    """New slot ``i`` of component ``c`` is old slot ``i + shifts[c]``."""
    out = []
    for w, r in zip(words, shifts):
        r = r % len(w) if w else 0
        out.append(w[r:] + w[:r])
    return tuple(out)


def normalize_codes(words: Words, signs: Sequence[int]) -> tuple[Words, tuple[int, ...]]:
    index: dict[int, int] = {}
    out = []
    for w in words:
        row = []
        for code in w:
            a = code >> 1
            if a not in index:
                index[a] = len(index)
            row.append(2 * index[a] + (code & 1))
        out.append(tuple(row))
    new_signs = [0] * len(index)
    for a, i in index.items():
        new_signs[i] = signs[a]
    return tuple(out), tuple(new_signs)


def transform(d: GaussDiagram, shifts: Sequence[int], perm: Sequence[int] | None = None) -> GaussDiagram:
    """Rotate base points by ``shifts`` then reorder components by ``perm``.

    ``perm[j]`` names the old component that becomes component ``j``.
    """
    words = rotate_words(d.words, shifts)
    if perm is not None:
        words = tuple(words[p] for p in perm)
    return GaussDiagram.from_codes(*normalize_codes(words, d.signs))


def _shift_vectors(lengths: Sequence[int]):
    return itertools.product(*[range(max(n, 1)) for n in lengths])


def _perms(k: int, mode: Mode):
    if mode is Mode.ROTATE_PERMUTE:
        return itertools.permutations(range(k))
    return [tuple(range(k))]


def isomorphic(a: GaussDiagram, b: GaussDiagram, mode: Mode = Mode.BASED) -> bool:
    """Brute-force search for a symmetry of ``mode`` carrying ``a`` onto ``b``.

    Deliberately independent of :func:`canonical_form`; tests use each to
    check the other.
    """
    mode = Mode(mode)
    if a.n_components != b.n_components or a.n_crossings != b.n_crossings:
        return False
    if sorted(a.lengths) != sorted(b.lengths):
        return False
    target = normalize_codes(b.words, b.signs)
    shifts = [(0,) * a.n_components] if mode is Mode.BASED else list(_shift_vectors(a.lengths))
    for perm in _perms(a.n_components, mode):
        if tuple(a.lengths[p] for p in perm) != b.lengths:
            continue
        for s in shifts:
            words = rotate_words(a.words, s)
            words = tuple(words[p] for p in perm)
            if normalize_codes(words, a.signs) == target:
                return True
    return False


# -- canonical forms ----------------------------------------------------------


def _encode_component(word, signs, labels: dict[int, int]):
    """Encode one rotated word given labels fixed by earlier components.

    Returns the code tuple and the extended label map.
    """
    labels = dict(labels)
    out = []
    for code in word:
        a = code >> 1
        if a not in labels:
            labels[a] = len(labels)
        out.append(4 * labels[a] + 2 * (code & 1) + (signs[a] < 0))
    return tuple(out), labels


def canonical_search(words: Words, signs: Sequence[int], mode: Mode):
    """Lexicographically least encoding over the symmetries of ``mode``.

    Returns ``(key, shifts, perm)``.  The key starts with the component
    lengths, then lists every slot as ``4*label + 2*is_tail + negative``
    with labels assigned by first appearance.  Components are minimised one
    at a time; ties branch.
    """
    mode = Mode(mode)
    k = len(words)
    lengths = [len(w) for w in words]
    best = None
    for perm in _perms(k, mode):
        plen = tuple(lengths[p] for p in perm)
        if best is not None and plen > best[0][:k]:
            continue
        # partial states: (encoded prefix, labels, shifts chosen so far)
        states = [((), {}, [])]
        for p in perm:
            w = words[p]
            rots = [0] if mode is Mode.BASED or not w else range(len(w))
            cand = []
            for prefix, labels, shifts in states:
                for r in rots:
                    enc, lab = _encode_component(w[r:] + w[:r], signs, labels)
                    cand.append((prefix + enc, lab, shifts + [r]))
            low = min(c[0] for c in cand)
            states = [c for c in cand if c[0] == low]
        key = plen + states[0][0]
        if best is None or key < best[0]:
            shifts = [0] * k
            for p, r in zip(perm, states[0][2]):
                shifts[p] = r
            best = (key, tuple(shifts), perm)
    return best


def canonical_key(d: GaussDiagram, mode: Mode = Mode.ROTATE_PERMUTE) -> tuple[int, ...]:
    return canonical_search(d.words, d.signs, mode)[0]


def canonical_form(d: GaussDiagram, mode: Mode = Mode.ROTATE_PERMUTE) -> GaussDiagram:
    """Distinguished representative of the class of ``d`` under ``mode``."""
    _, shifts, perm = canonical_search(d.words, d.signs, mode)
    return transform(d, shifts, perm)
