"""Pure-numpy kernels. Reference path, also used when numba is disabled."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def colmajor_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Row/column indices of the strict upper triangle in column-major order."""
    ii = [i for j in range(1, n) for i in range(j)]
    jj = [j for j in range(1, n) for i in range(j)]
    return np.asarray(ii, dtype=np.int64), np.asarray(jj, dtype=np.int64)


def refine_colors(D: np.ndarray) -> np.ndarray:
    n = D.shape[0]
    col = np.zeros(n, dtype=np.int64)
    if n == 0:
        return col
    dmax = int(D.max())
    rows, cols = np.nonzero(~np.eye(n, dtype=bool))
    k = 1
    while True:
        cnt = np.zeros((n, dmax + 1, k), dtype=np.int64)
        np.add.at(cnt, (rows, D[rows, cols], col[cols]), 1)
        sig = np.hstack([col[:, None], cnt.reshape(n, -1)])
        uniq, inv = np.unique(sig, axis=0, return_inverse=True)
        inv = inv.reshape(-1).astype(np.int64)
        if len(uniq) == k:
            return col
        col, k = inv, len(uniq)


def canonical_perm(D: np.ndarray) -> np.ndarray:
    n = D.shape[0]
    if n <= 1:
        return np.arange(n, dtype=np.int64)
    colors = refine_colors(D)
    classes = [np.flatnonzero(colors == c) for c in range(int(colors.max()) + 1)]
    blocks = [np.array(list(itertools.permutations(cls)), dtype=np.int64) for cls in classes]
    perms = blocks[0]
    for b in blocks[1:]:
        perms = np.hstack([np.repeat(perms, len(b), axis=0), np.tile(b, (len(perms), 1))])
    ii, jj = colmajor_index(n)
    strings = D[perms[:, ii], perms[:, jj]]
    best = np.lexsort(strings.T[::-1])[0]
    return perms[best]


def canonical_entries(D: np.ndarray) -> np.ndarray:
    perm = canonical_perm(D)
    ii, jj = colmajor_index(D.shape[0])
    return D[perm[ii], perm[jj]]


def extension_rows(D: np.ndarray, allowed: np.ndarray, delta: int) -> np.ndarray:
    """All distance rows r in [1, delta]^n to a new point keeping every new triangle allowed."""
    n = D.shape[0]
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = (np.indices((delta,) * n).reshape(n, -1).T + 1).astype(np.int64)
    keep = np.ones(len(grid), dtype=bool)
    for j in range(n):
        for i in range(j):
            keep &= allowed[D[i, j], grid[:, i], grid[:, j]]
    return grid[keep]


def extend(D: np.ndarray, row: np.ndarray) -> np.ndarray:
    n = D.shape[0]
    E = np.zeros((n + 1, n + 1), dtype=np.int64)
    E[:n, :n] = D
    E[n, :n] = row
    E[:n, n] = row
    return E


def canon_batch(D: np.ndarray, rows: np.ndarray) -> np.ndarray:
    n = D.shape[0]
    m = (n + 1) * n // 2
    out = np.empty((len(rows), m), dtype=np.int64)
    for r in range(len(rows)):
        out[r] = canonical_entries(extend(D, rows[r]))
    return out
