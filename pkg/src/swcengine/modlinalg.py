"""Dense linear algebra over GF(l) for a word-sized prime l."""
from __future__ import annotations

import numpy as np


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        f = A[:, c].copy()
        f[r] = 0
        A = (A - np.outer(f, A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {x : M x = 0}."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    R, piv = rref(M, p)
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, pc in enumerate(piv):
            out[i, pc] = (-R[r, f]) % p
    return out


def det_batch(S: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p of a stack of square matrices."""
    A = np.array(S, dtype=np.int64) % p
    B, n, _ = A.shape
    det = np.ones(B, dtype=np.int64)
    alive = np.ones(B, dtype=bool)
    ar = np.arange(B)
    for c in range(n):
        col = A[:, c:, c] != 0
        has = col.any(axis=1)
        alive &= has
        piv = c + np.argmax(col, axis=1)
        swap = piv != c
        if swap.any():
            rows_c = A[ar, c].copy()
            A[ar, c] = A[ar, piv]
            A[ar, piv] = rows_c
            det = np.where(swap, (-det) % p, det)
        pv = A[:, c, c]
        det = det * pv % p
        inv = np.array([pow(int(v), -1, p) if v else 0 for v in pv], dtype=np.int64)
        factors = A[:, c + 1 :, c] * inv[:, None] % p
        A[:, c + 1 :, :] = (A[:, c + 1 :, :] - factors[:, :, None] * A[:, c : c + 1, :]) % p
    return np.where(alive, det, 0)


def inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, -1, p)
