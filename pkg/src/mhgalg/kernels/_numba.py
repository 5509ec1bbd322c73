"""numba-compiled kernels; same contracts and outputs as the numpy path."""

from __future__ import annotations

import numpy as np
from numba import njit

_BIG = np.iinfo(np.int64).max


@njit(cache=True)
def _row_less(S, a, b):
    for t in range(S.shape[1]):
        if S[a, t] < S[b, t]:
            return True
        if S[a, t] > S[b, t]:
            return False
    return False


@njit(cache=True)
def _row_equal(S, a, b):
    for t in range(S.shape[1]):
        if S[a, t] != S[b, t]:
            return False
    return True


@njit(cache=True)
def refine_colors(D):
    n = D.shape[0]
    col = np.zeros(n, dtype=np.int64)
    if n == 0:
        return col
    dmax = 0
    for i in range(n):
        for j in range(n):
            if D[i, j] > dmax:
                dmax = D[i, j]
    k = 1
    while True:
        w = 1 + (dmax + 1) * k
        S = np.zeros((n, w), dtype=np.int64)
        for v in range(n):
            S[v, 0] = col[v]
            for u in range(n):
                if u != v:
                    S[v, 1 + D[v, u] * k + col[u]] += 1
        order = np.arange(n)
        for a in range(1, n):
            x = order[a]
            b = a - 1
            while b >= 0 and _row_less(S, x, order[b]):
                order[b + 1] = order[b]
                b -= 1
            order[b + 1] = x
        new = np.zeros(n, dtype=np.int64)
        rank = 0
        for a in range(1, n):
            if not _row_equal(S, order[a], order[a - 1]):
                rank += 1
            new[order[a]] = rank
        if rank + 1 == k:
            return col
        col = new
        k = rank + 1


@njit(cache=True)
def canonical_perm(D):
    n = D.shape[0]
    if n <= 1:
        return np.arange(n)
    colors = refine_colors(D)
    pos_class = np.sort(colors)
    m = n * (n - 1) // 2
    best = np.full(m, _BIG, dtype=np.int64)
    best_perm = np.arange(n)
    cur = np.zeros(m, dtype=np.int64)
    perm = np.zeros(n, dtype=np.int64)
    used = np.zeros(n, dtype=np.bool_)
    nxt = np.zeros(n + 1, dtype=np.int64)
    less = np.zeros(n + 1, dtype=np.bool_)
    j = 0
    while j >= 0:
        if j == n:
            if less[n]:
                best[:] = cur
                best_perm[:] = perm
                less[:] = False
            j -= 1
            used[perm[j]] = False
            continue
        v = nxt[j]
        while v < n and (used[v] or colors[v] != pos_class[j]):
            v += 1
        if v == n:
            j -= 1
            if j >= 0:
                used[perm[j]] = False
            continue
        nxt[j] = v + 1
        off = j * (j - 1) // 2
        lt = less[j]
        ok = True
        for i in range(j):
            val = D[perm[i], v]
            cur[off + i] = val
            if not lt:
                if val < best[off + i]:
                    lt = True
                elif val > best[off + i]:
                    ok = False
                    break
        if not ok:
            continue
        perm[j] = v
        used[v] = True
        less[j + 1] = lt
        nxt[j + 1] = 0
        j += 1
    return best_perm


@njit(cache=True)
def canonical_entries(D):
    n = D.shape[0]
    perm = canonical_perm(D)
    out = np.empty(n * (n - 1) // 2, dtype=np.int64)
    t = 0
    for j in range(1, n):
        for i in range(j):
            out[t] = D[perm[i], perm[j]]
            t += 1
    return out


@njit(cache=True)
def _scan_rows(D, allowed, delta, out, fill):
    n = D.shape[0]
    row = np.zeros(n, dtype=np.int64)
    count = 0
    if n == 0:
        return 1
    j = 0
    row[0] = 0
    while j >= 0:
        row[j] += 1
        if row[j] > delta:
            row[j] = 0
            j -= 1
            continue
        ok = True
        for i in range(j):
            if not allowed[D[i, j], row[i], row[j]]:
                ok = False
                break
        if not ok:
            continue
        if j == n - 1:
            if fill:
                out[count, :] = row
            count += 1
        else:
            j += 1
            row[j] = 0
    return count


@njit(cache=True)
def extension_rows(D, allowed, delta):
    n = D.shape[0]
    dummy = np.zeros((0, n), dtype=np.int64)
    k = _scan_rows(D, allowed, delta, dummy, False)
    out = np.zeros((k, n), dtype=np.int64)
    if n > 0:
        _scan_rows(D, allowed, delta, out, True)
    return out


@njit(cache=True)
def canon_batch(D, rows):
    n = D.shape[0]
    m = (n + 1) * n // 2
    out = np.empty((rows.shape[0], m), dtype=np.int64)
    E = np.zeros((n + 1, n + 1), dtype=np.int64)
    E[:n, :n] = D
    for r in range(rows.shape[0]):
        for i in range(n):
            E[n, i] = rows[r, i]
            E[i, n] = rows[r, i]
        out[r, :] = canonical_entries(E)
    return out
