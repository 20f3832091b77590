"""Vectorised numpy implementations of the hot kernels.

Used when the compiled ``_ckernels`` extension is unavailable, and as the
reference the compiled path is checked against.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .tables import AMBIENT_SIZE, IDENTITY_CODE, dense_index

BACKEND = "python"


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a, b = np.broadcast_arrays(a, b)
    out = np.zeros(a.shape, dtype=np.int64)
    for i in range(7):
        pb = (b >> (7 + 3 * i)) & 7
        pa = (a >> (7 + 3 * pb)) & 7
        sign = ((b >> i) ^ (a >> pb)) & 1
        out |= (pa << (7 + 3 * i)) | (sign << i)
    return out


def closure(gens: np.ndarray, limit: int) -> np.ndarray | None:
    gens = np.asarray(gens, dtype=np.int64)
    seen = np.zeros(AMBIENT_SIZE, dtype=bool)
    start = np.array([IDENTITY_CODE], dtype=np.int64)
    seen[dense_index(start)] = True
    frontier = start
    found = [start]
    total = 1
    while frontier.size:
        cand = np.concatenate([compose(frontier, g) for g in gens])
        idx = dense_index(cand)
        idx, first = np.unique(idx, return_index=True)
        fresh = ~seen[idx]
        seen[idx[fresh]] = True
        frontier = cand[first[fresh]]
        total += frontier.size
        if total > limit:
            return None
        found.append(frontier)
    return np.sort(np.concatenate(found))


def components(n: int, targets: np.ndarray) -> np.ndarray:
    """Orbit labels of the maps ``i -> targets[k, i]`` on ``range(n)``."""
    targets = np.asarray(targets, dtype=np.int64).reshape(-1, n)
    rows = np.tile(np.arange(n, dtype=np.int64), targets.shape[0])
    cols = targets.ravel()
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels.astype(np.int64)
