# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the functions in ``_pykernels``.

Same signatures, same results; the pure-Python module is the reference.
"""
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, free

import itertools

cdef int MAXK = 6


def bracket_count(ends, signs, int k, int ncomp, dict table):
    cdef int m = len(ends)
    if k > m:
        return 0
    if k == 0 or k > MAXK or ncomp > 16:
        from ._pykernels import bracket_count as slow
        return slow(ends, signs, k, ncomp, table)
    cdef int64_t base = 2 * k + 1
    # every key must fit: base ** (ncomp + 2k) < 2**63
    cdef double bound = 1.0
    cdef int t
    for t in range(ncomp + 2 * k):
        bound *= base
    if bound >= 9.0e18:
        from ._pykernels import bracket_count as slow
        return slow(ends, signs, k, ncomp, table)

    items = sorted(table.items())
    cdef int nkeys = len(items)
    cdef int64_t *keys = <int64_t *> malloc((nkeys + 1) * sizeof(int64_t))
    cdef uint64_t *masks = <uint64_t *> malloc((nkeys + 1) * sizeof(uint64_t))
    cdef int *tc = <int *> malloc(m * sizeof(int))
    cdef int *tp = <int *> malloc(m * sizeof(int))
    cdef int *hc = <int *> malloc(m * sizeof(int))
    cdef int *hp = <int *> malloc(m * sizeof(int))
    cdef int *sg = <int *> malloc(m * sizeof(int))
    cdef int i, j, a, lo, hi, mid, n2 = 2 * k
    cdef int idx[7]
    cdef int pc[14]
    cdef int pp[14]
    cdef int pa[14]
    cdef int pt[14]
    cdef int lab[7]
    cdef int counts[16]
    cdef int x0, x1, x2, x3, nl, c
    cdef int64_t key
    cdef uint64_t mask
    cdef unsigned int bits
    cdef long prod
    cdef long long total = 0
    try:
        for i in range(nkeys):
            keys[i] = items[i][0]
            masks[i] = items[i][1]
        for i in range(m):
            e = ends[i]
            tc[i] = e[0]
            tp[i] = e[1]
            hc[i] = e[2]
            hp[i] = e[3]
            sg[i] = signs[i]
        for i in range(k):
            idx[i] = i
        while True:
            # gather endpoints
            for j in range(k):
                a = idx[j]
                pc[2 * j] = tc[a]
                pp[2 * j] = tp[a]
                pa[2 * j] = j
                pt[2 * j] = 1
                pc[2 * j + 1] = hc[a]
                pp[2 * j + 1] = hp[a]
                pa[2 * j + 1] = j
                pt[2 * j + 1] = 0
            # insertion sort by (component, position)
            for i in range(1, n2):
                x0 = pc[i]; x1 = pp[i]; x2 = pa[i]; x3 = pt[i]
                j = i - 1
                while j >= 0 and (pc[j] > x0 or (pc[j] == x0 and pp[j] > x1)):
                    pc[j + 1] = pc[j]; pp[j + 1] = pp[j]; pa[j + 1] = pa[j]; pt[j + 1] = pt[j]
                    j -= 1
                pc[j + 1] = x0; pp[j + 1] = x1; pa[j + 1] = x2; pt[j + 1] = x3
            for c in range(ncomp):
                counts[c] = 0
            for i in range(n2):
                counts[pc[i]] += 1
            for j in range(k):
                lab[j] = -1
            nl = 0
            key = 0
            bits = 0
            prod = 1
            i = 0
            for c in range(ncomp):
                key = key * base + counts[c]
                for t in range(counts[c]):
                    a = pa[i]
                    if lab[a] < 0:
                        lab[a] = nl
                        if sg[idx[a]] < 0:
                            bits |= (1u << nl)
                            prod = -prod
                        nl += 1
                    key = key * base + 2 * lab[a] + pt[i]
                    i += 1
            lo = 0
            hi = nkeys
            while lo < hi:
                mid = (lo + hi) >> 1
                if keys[mid] < key:
                    lo = mid + 1
                else:
                    hi = mid
            if lo < nkeys and keys[lo] == key:
                mask = masks[lo]
                if (mask >> bits) & 1:
                    total += prod
            # next combination
            i = k - 1
            while i >= 0 and idx[i] == m - k + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for j in range(i + 1, k):
                idx[j] = idx[j - 1] + 1
    finally:
        free(keys); free(masks); free(tc); free(tp); free(hc); free(hp); free(sg)
    return int(total)


cdef int _encode(int *word, int n, int rot, int *signs, int *labels, int *next_label,
                 unsigned char *out):
    cdef int i, code, a
    for i in range(n):
        code = word[(i + rot) % n]
        a = code >> 1
        if labels[a] < 0:
            labels[a] = next_label[0]
            next_label[0] += 1
        out[i] = <unsigned char> (4 * labels[a] + 2 * (code & 1) + (1 if signs[a] < 0 else 0))
    return 0


cdef int _cmp(unsigned char *x, unsigned char *y, int n):
    cdef int i
    for i in range(n):
        if x[i] != y[i]:
            return -1 if x[i] < y[i] else 1
    return 0


def canonical_key_bytes(words, signs, bint permute):
    cdef int k = len(words)
    if k > 2:
        from ._pykernels import canonical_key_bytes as slow
        return slow(words, signs, permute)
    cdef int na = len(signs)
    cdef int total = 0
    cdef int L[2]
    cdef int c, i, r0, r1, p, q, nl, nl0, cmpv
    for c in range(k):
        L[c] = len(words[c])
        total += L[c]
    cdef int *w0 = <int *> malloc((L[0] + 1) * sizeof(int)) if k > 0 else NULL
    cdef int *w1 = <int *> malloc((L[1] + 1) * sizeof(int)) if k > 1 else NULL
    cdef int *sg = <int *> malloc((na + 1) * sizeof(int))
    cdef int *lab = <int *> malloc((na + 1) * sizeof(int))
    cdef int *lab0 = <int *> malloc((na + 1) * sizeof(int))
    cdef unsigned char *best = <unsigned char *> malloc(total + 3)
    cdef unsigned char *cur = <unsigned char *> malloc(total + 3)
    cdef unsigned char *seg0 = <unsigned char *> malloc(total + 3)
    cdef int have_best = 0
    cdef int have_seg = 0
    cdef int *wp
    cdef int *wq
    cdef int Lp, Lq
    try:
        for i in range(na):
            sg[i] = signs[i]
        if k > 0:
            for i in range(L[0]):
                w0[i] = words[0][i]
        if k > 1:
            for i in range(L[1]):
                w1[i] = words[1][i]
        if k == 0:
            return b""
        if k == 1:
            for r0 in range(max(L[0], 1)):
                for i in range(na):
                    lab[i] = -1
                nl = 0
                cur[0] = L[0]
                _encode(w0, L[0], r0, sg, lab, &nl, cur + 1)
                if not have_best or _cmp(cur, best, total + 1) < 0:
                    for i in range(total + 1):
                        best[i] = cur[i]
                    have_best = 1
            return bytes(best[:total + 1])
        for p in range(2):
            if p == 1 and not permute:
                break
            q = 1 - p
            wp = w0 if p == 0 else w1
            wq = w1 if p == 0 else w0
            Lp = L[p]
            Lq = L[q]
            cur[0] = Lp
            cur[1] = Lq
            if have_best and (cur[0] > best[0] or (cur[0] == best[0] and cur[1] > best[1])):
                continue
            # minimal first component
            have_seg = 0
            for r0 in range(max(Lp, 1)):
                for i in range(na):
                    lab[i] = -1
                nl = 0
                _encode(wp, Lp, r0, sg, lab, &nl, cur + 2)
                if not have_seg or _cmp(cur + 2, seg0, Lp) < 0:
                    for i in range(Lp):
                        seg0[i] = cur[2 + i]
                    have_seg = 1
            for r0 in range(max(Lp, 1)):
                for i in range(na):
                    lab0[i] = -1
                nl0 = 0
                _encode(wp, Lp, r0, sg, lab0, &nl0, cur + 2)
                if _cmp(cur + 2, seg0, Lp) != 0:
                    continue
                for r1 in range(max(Lq, 1)):
                    for i in range(na):
                        lab[i] = lab0[i]
                    nl = nl0
                    _encode(wq, Lq, r1, sg, lab, &nl, cur + 2 + Lp)
                    if not have_best or _cmp(cur, best, total + 2) < 0:
                        for i in range(total + 2):
                            best[i] = cur[i]
                        have_best = 1
        return bytes(best[:total + 2])
    finally:
        if w0 != NULL:
            free(w0)
        if w1 != NULL:
            free(w1)
        free(sg); free(lab); free(lab0); free(best); free(cur); free(seg0)


def insert_arrows(words, signs, placements, new_signs):
    cdef int n_old = len(signs)
    cdef int n_new = len(new_signs)
    cdef int total = n_old + n_new
    cdef int k = len(words)
    cdef int c, p, i, nxt = 0, a, code, L, extra, src
    cdef int *relabel = <int *> malloc((total + 1) * sizeof(int))
    cdef int *row = NULL
    cdef int *slot = NULL
    cdef int cap = 0
    out = []
    try:
        for i in range(total):
            relabel[i] = -1
        # bucket placements by component
        per = {}
        for pl in placements:
            per.setdefault(pl[0], []).append(pl)
        for c in range(k):
            w = words[c]
            L = len(w)
            adds = per.get(c)
            extra = len(adds) if adds else 0
            if L + extra > cap:
                free(row)
                free(slot)
                cap = L + extra + 8
                row = <int *> malloc(cap * sizeof(int))
                slot = <int *> malloc(cap * sizeof(int))
            for p in range(L + extra):
                slot[p] = -1
            if adds:
                for pl in adds:
                    slot[<int> pl[1]] = 2 * (n_old + <int> pl[2]) + (1 if pl[3] else 0)
            src = 0
            for p in range(L + extra):
                if slot[p] >= 0:
                    row[p] = slot[p]
                else:
                    row[p] = w[src]
                    src += 1
            new_row = []
            for p in range(L + extra):
                code = row[p]
                a = code >> 1
                if relabel[a] < 0:
                    relabel[a] = nxt
                    nxt += 1
                new_row.append(2 * relabel[a] + (code & 1))
            out.append(tuple(new_row))
        all_signs = list(signs) + list(new_signs)
        signs_out = [0] * total
        rel = []
        for a in range(total):
            signs_out[relabel[a]] = all_signs[a]
            rel.append(relabel[a])
        return tuple(out), tuple(signs_out), tuple(rel)
    finally:
        free(relabel)
        free(row)
        free(slot)


def linking_counts(words, signs):
    cdef int n = len(signs)
    cdef int *tail_comp = <int *> malloc((n + 1) * sizeof(int))
    cdef int *sg = <int *> malloc((n + 1) * sizeof(int))
    cdef int c, a, t, code
    cdef long lk01 = 0, lk10 = 0, c01 = 0, c10 = 0
    try:
        for a in range(n):
            sg[a] = signs[a]
        for c in range(len(words)):
            for code in words[c]:
                if code & 1:
                    tail_comp[code >> 1] = c
        for c in range(len(words)):
            for code in words[c]:
                if not code & 1:
                    a = code >> 1
                    t = tail_comp[a]
                    if t == 0 and c == 1:
                        lk01 += sg[a]
                        c01 += 1
                    elif t == 1 and c == 0:
                        lk10 += sg[a]
                        c10 += 1
        return lk01, lk10, c01, c10
    finally:
        free(tail_comp)
        free(sg)
