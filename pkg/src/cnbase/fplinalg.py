"""Dense linear algebra over the prime field F_p, on numpy int64 arrays.

Matrices act on column vectors; all entries are reduced representatives in
[0, p).  Sizes here stay small (dimension <= 64), so plain Gaussian
elimination is used throughout.
"""

from __future__ import annotations

import numpy as np


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mat_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def mat_pow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    result = identity(a.shape[0])
    base = a % p
    while e:
        if e & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        e >>= 1
    return result


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of a mod p; returns (matrix, pivot columns)."""
    m = a.copy() % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = None
        for i in range(r, rows):
            if m[i, c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = m[r] * inv % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def kernel_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel {v : a v = 0}, rows of the returned array."""
    reduced, pivots = rref(a, p)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for idx, fc in enumerate(free):
        basis[idx, fc] = 1
        for r, pc in enumerate(pivots):
            basis[idx, pc] = (-reduced[r, fc]) % p
    return basis


def column_space_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Independent columns of a (as columns of the returned array)."""
    _, pivots = rref(a, p)
    return a[:, pivots] % p


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a x = b mod p, or None if inconsistent."""
    rows, cols = a.shape
    aug = np.concatenate([a % p, (b % p).reshape(rows, 1)], axis=1)
    reduced, pivots = rref(aug, p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = reduced[r, cols]
    return x


def mat_inv(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix mod p (raises on singular input)."""
    n = a.shape[0]
    aug = np.concatenate([a % p, identity(n)], axis=1)
    reduced, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return reduced[:, n:]
