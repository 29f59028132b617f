"""
gf2.py

Dense linear algebra over GF(2) on numpy uint8 arrays.

Everything here works on 0/1 matrices and returns fresh arrays; inputs are
never modified in place. Pivot choice is always "first available column /
row", so results are deterministic for a fixed basis order.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np


def as_gf2(M) -> np.ndarray:
    return (np.asarray(M) & 1).astype(np.uint8, copy=True)


def rref(M) -> Tuple[np.ndarray, List[int]]:
    """Row-reduced echelon form and pivot columns."""
    A = as_gf2(M)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {A.shape}")
    m, n = A.shape
    pivots: List[int] = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        rows = np.where(A[r:, c] == 1)[0]
        if rows.size == 0:
            continue
        p = r + int(rows[0])
        if p != r:
            A[[r, p], :] = A[[p, r], :]
        ones = np.where(A[:, c] == 1)[0]
        ones = ones[ones != r]
        if ones.size:
            A[ones, :] ^= A[r, :]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M) -> int:
    A = as_gf2(M)
    if A.size == 0:
        return 0
    return len(rref(A)[1])


def pivot_columns(M) -> List[int]:
    """Indices of the greedily independent columns, scanned left to right."""
    A = as_gf2(M)
    if A.size == 0:
        return []
    return rref(A)[1]


def nullspace(M) -> np.ndarray:
    """
    Basis of {x : M x = 0}, one row per basis vector.

    Each vector has exactly one free column set to 1, and vectors are
    listed by increasing free column.
    """
    A = as_gf2(M)
    m, n = A.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    if m == 0:
        return np.eye(n, dtype=np.uint8)
    R, piv = rref(A)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.uint8)
    for k, f in enumerate(free):
        out[k, f] = 1
        for r, pc in enumerate(piv):
            if R[r, f]:
                out[k, pc] = 1
    return out


def inverse(M) -> np.ndarray:
    A = as_gf2(M)
    n, n2 = A.shape
    if n != n2:
        raise ValueError(f"cannot invert a {n}x{n2} matrix")
    aug = np.concatenate([A, np.eye(n, dtype=np.uint8)], axis=1)
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular over GF(2)")
    return R[:, n:].copy()


def in_span(v, vectors: np.ndarray) -> bool:
    """Is v a GF(2) combination of the rows of `vectors`?"""
    v = as_gf2(v).reshape(1, -1)
    if vectors.size == 0:
        return not bool(v.any())
    return rank(np.concatenate([vectors, v], axis=0)) == rank(vectors)
