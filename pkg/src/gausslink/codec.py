"""Gauss-code text format and JSON reports.

Grammar (whitespace between tokens is ignored)::

    diagram   := component ("/" component)*
    component := token*
    token     := ("O" | "U") label sign
    label     := positive integer
    sign      := "+" | "-"

Token ``i`` of component ``c`` is slot ``(c, i)``.  A label's ``O`` token is
the arrow tail, its ``U`` token the head.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .diagram import GaussDiagram

_TOKEN = re.compile(r"([OU])(\d+)([+-])")
_PATTERN_TOKEN = re.compile(r"([OU])(\d+)([+-]?)")
_SPACE = re.compile(r"\s+")


class GaussCodeError(ValueError):
    """Malformed Gauss code; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int | None = None):
        self.message = message
        self.offset = offset
        where = f" at byte {offset}" if offset is not None else ""
        super().__init__(message + where)


@dataclass(frozen=True)
class Token:
    over: bool
    label: int
    sign: int | None
    offset: int


def tokenize(text: str, *, signs_required: bool = True) -> list[list[Token]]:
    """Split Gauss code into components of tokens, checking only the syntax."""
    if not text.strip():
        raise GaussCodeError("empty input", 0)
    token_re = _TOKEN if signs_required else _PATTERN_TOKEN
    data = text.encode("utf-8")
    components: list[list[Token]] = [[]]
    pos = 0
    # byte offsets: walk the encoded text, the grammar itself is ASCII
    s = data.decode("ascii", errors="replace")
    while pos < len(s):
        m = _SPACE.match(s, pos)
        if m:
            pos = m.end()
            continue
        if s[pos] == "/":
            components.append([])
            pos += 1
            continue
        m = token_re.match(s, pos)
        if not m or int(m.group(2)) == 0:
            end = pos + 1
            while end < len(s) and not s[end].isspace() and s[end] not in "/OU":
                end += 1
            raise GaussCodeError(f"malformed token {s[pos:end]!r}", pos)
        sign = {"+": 1, "-": -1, "": None}[m.group(3)]
        components[-1].append(Token(m.group(1) == "O", int(m.group(2)), sign, pos))
        pos = m.end()
    return components


def _check_labels(components: list[list[Token]]) -> None:
    seen: dict[int, list[Token]] = {}
    for comp in components:
        for tok in comp:
            seen.setdefault(tok.label, []).append(tok)
    for label, toks in seen.items():
        if len(toks) != 2:
            raise GaussCodeError(
                f"label {label} appears {len(toks)} time(s), expected 2", toks[-1].offset
            )
        overs = sum(t.over for t in toks)
        if overs != 1:
            kind = "O" if overs == 2 else "U"
            raise GaussCodeError(f"label {label} has two {kind} tokens", toks[1].offset)
        if toks[0].sign != toks[1].sign:
            raise GaussCodeError(f"sign mismatch for label {label}", toks[1].offset)


def parse(text: str) -> GaussDiagram:
    """Parse Gauss code into a diagram (arrows numbered in slot order)."""
    components = tokenize(text)
    _check_labels(components)
    signs = {t.label: t.sign for comp in components for t in comp}
    words = [[(t.label, t.over) for t in comp] for comp in components]
    return GaussDiagram.from_words(words, signs)


def serialize(d: GaussDiagram) -> str:
    """Gauss code for ``d`` with labels ``1, 2, ...`` in slot order."""
    d = d.normalized()
    signs = d.signs
    parts = []
    for word in d.words:
        parts.append(
            "".join(
                f"{'O' if code & 1 else 'U'}{(code >> 1) + 1}{'+' if signs[code >> 1] > 0 else '-'}"
                for code in word
            )
        )
    return "/".join(parts)


REPORT_KEYS = ("lk12", "lk21", "S", "T", "crossings", "components", "rii_lower_bound")


def report_json(report) -> str:
    """Flat JSON object for an :class:`~gausslink.invariants.InvariantReport`."""
    values = {
        "lk12": report.lk01,
        "lk21": report.lk10,
        "S": report.S,
        "T": report.T,
        "crossings": report.crossings,
        "components": report.components,
        "rii_lower_bound": report.rii_lower_bound,
    }
    return json.dumps({k: values[k] for k in REPORT_KEYS})
