"""Pure-Python kernels.  ``_ckernels.pyx`` mirrors these function for function."""
from __future__ import annotations

from itertools import combinations

from .diagram import Mode, canonical_search

__all__ = ["bracket_count", "canonical_key_bytes", "insert_arrows", "linking_counts", "subset_key"]


def subset_key(points, ncomp: int, k: int) -> tuple[int, int]:
    """Encode the induced subdiagram of one arrow subset.

    ``points`` holds ``(component, position, local_arrow, is_tail)`` for the
    ``2k`` endpoints.  Returns ``(key, sign_slot_labels)`` where the second
    item maps relabelled arrows back to local arrow ids (bit-packed by the
    caller).  The key is a base ``2k+1`` integer: per component its endpoint
    count followed by ``2*label + is_tail`` for each endpoint, labels by
    first appearance.
    """
    base = 2 * k + 1
    pts = sorted(points)
    counts = [0] * ncomp
    for c, _, _, _ in pts:
        counts[c] += 1
    label = {}
    order = []
    key = 0
    i = 0
    for c in range(ncomp):
        key = key * base + counts[c]
        for _ in range(counts[c]):
            _, _, a, tail = pts[i]
            i += 1
            if a not in label:
                label[a] = len(label)
                order.append(a)
            key = key * base + 2 * label[a] + tail
    return key, order


def bracket_count(ends, signs, k: int, ncomp: int, table: dict) -> int:
    """Signed count of ``k``-subsets whose induced key/sign pattern is accepted.

    ``ends[i] = (tail_comp, tail_pos, head_comp, head_pos)``.  ``table`` maps
    subset keys to a bitmask over sign patterns: bit ``s`` is set when the
    pattern whose bit ``j`` marks relabelled arrow ``j`` as negative matches.
    """
    total = 0
    m = len(ends)
    if k > m:
        return 0
    if k == 0:
        mask = table.get(subset_key([], ncomp, 0)[0], 0)
        return 1 if mask & 1 else 0
    for subset in combinations(range(m), k):
        pts = []
        for j, a in enumerate(subset):
            tc, tp, hc, hp = ends[a]
            pts.append((tc, tp, j, 1))
            pts.append((hc, hp, j, 0))
        key, order = subset_key(pts, ncomp, k)
        mask = table.get(key)
        if not mask:
            continue
        bits = 0
        prod = 1
        for lab, j in enumerate(order):
            s = signs[subset[j]]
            prod *= s
            if s < 0:
                bits |= 1 << lab
        if (mask >> bits) & 1:
            total += prod
    return total


def canonical_key_bytes(words, signs, permute: bool) -> bytes:
    """Canonical key under rotation (and permutation) as bytes.

    Callers guarantee fewer than 64 arrows and components shorter than 256.
    """
    mode = Mode.ROTATE_PERMUTE if permute else Mode.ROTATE
    return bytes(canonical_search(words, signs, mode)[0])


def insert_arrows(words, signs, placements, new_signs):
    """Splice new arrows into word form and renumber by first appearance.

    ``placements`` lists ``(component, final_position, k, is_tail)`` for new
    arrow ``k``; old endpoints fill the remaining slots in order.  Returns
    ``(words, signs, relabel)`` where ``relabel[a]`` is the new id of old
    arrow ``a`` and ``relabel[len(signs) + k]`` that of new arrow ``k``.
    The caller has checked that positions are distinct and in range.
    """
    n_old = len(signs)
    adds = {}
    for c, p, k, tail in placements:
        adds.setdefault(c, {})[p] = 2 * (n_old + k) + tail
    total = n_old + len(new_signs)
    relabel = [-1] * total
    nxt = 0
    out = []
    for c, w in enumerate(words):
        extra = adds.get(c)
        if extra:
            row = []
            it = iter(w)
            for p in range(len(w) + len(extra)):
                row.append(extra[p] if p in extra else next(it))
        else:
            row = w
        new_row = []
        for code in row:
            a = code >> 1
            if relabel[a] < 0:
                relabel[a] = nxt
                nxt += 1
            new_row.append(2 * relabel[a] + (code & 1))
        out.append(tuple(new_row))
    all_signs = list(signs) + list(new_signs)
    new_signs_out = [0] * total
    for a in range(total):
        new_signs_out[relabel[a]] = all_signs[a]
    return tuple(out), tuple(new_signs_out), tuple(relabel)


def linking_counts(words, signs):
    """``(lk01, lk10, c01, c10)`` of a 2-component word form."""
    tail_comp = [0] * len(signs)
    for c, w in enumerate(words):
        for code in w:
            if code & 1:
                tail_comp[code >> 1] = c
    lk01 = lk10 = c01 = c10 = 0
    for c, w in enumerate(words):
        for code in w:
            if not code & 1:
                a = code >> 1
                t = tail_comp[a]
                if t == 0 and c == 1:
                    lk01 += signs[a]
                    c01 += 1
                elif t == 1 and c == 0:
                    lk10 += signs[a]
                    c10 += 1
    return lk01, lk10, c01, c10
