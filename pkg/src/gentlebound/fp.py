"""Exact linear algebra over a prime field F_p on int64 numpy arrays.

All routines reduce their inputs mod ``p`` and return reduced arrays. ``p``
must be below 2**31 so that products fit in int64 before reduction.
"""
from __future__ import annotations

import numpy as np

__all__ = ["is_prime", "inv", "rref", "rank", "nullspace", "solve", "extend_basis", "matmul"]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def inv(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(int(x), p - 2, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0 or b.shape[0] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    return (a.astype(np.int64) @ b.astype(np.int64)) % p


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * inv(int(m[r, c]), p)) % p
        others = np.nonzero(m[:, c])[0]
        for i in others:
            if i != r:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of ``{x : a x = 0}``."""
    rows, cols = a.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-r[i, f]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """A solution ``x`` of ``a x = b``; raises ``ValueError`` if none exists."""
    rows, cols = a.shape
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    aug = np.concatenate([np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)], axis=1) % p
    r, pivots = rref(aug, p)
    if any(pc >= cols for pc in pivots):
        raise ValueError("inconsistent linear system")
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols:]
    return x % p


def extend_basis(span: np.ndarray, dim: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the column span of ``span`` to
    ``F_p^dim``, as the columns of the result."""
    if span.size == 0:
        span = np.zeros((dim, 0), dtype=np.int64)
    current = span % p
    r = rank(current, p) if current.shape[1] else 0
    picked = []
    for i in range(dim):
        if r == dim:
            break
        e = np.zeros((dim, 1), dtype=np.int64)
        e[i, 0] = 1
        cand = np.concatenate([current, e], axis=1)
        rc = rank(cand, p)
        if rc > r:
            current, r = cand, rc
            picked.append(i)
    out = np.zeros((dim, len(picked)), dtype=np.int64)
    for j, i in enumerate(picked):
        out[i, j] = 1
    return out
