"""Lookup tables shared by both kernel backends."""

from __future__ import annotations

import itertools

import numpy as np

from .signedperm import IDENTITY_CODE, pack  # noqa: F401  (re-exported)

PERM_COUNT = 5040
AMBIENT_SIZE = PERM_COUNT << 7

# packed 21-bit permutation field -> rank in 0..5039, -1 for non-permutations
PERM_RANK = np.full(1 << 21, -1, dtype=np.int32)
for _rank, _p in enumerate(itertools.permutations(range(7))):
    PERM_RANK[pack(_p) >> 7] = _rank
del _rank, _p


def dense_index(codes: np.ndarray) -> np.ndarray:
    """Map packed codes onto 0..645119 (rank of permutation * 128 + signs)."""
    codes = np.asarray(codes, dtype=np.int64)
    return PERM_RANK[codes >> 7].astype(np.int64) * 128 + (codes & 127)
