"""Dense linear algebra over GF(p) with int64 numpy arrays (p < 2^31)."""
from __future__ import annotations

import numpy as np


def _inv(a: int, p: int) -> int:
    return pow(int(a), p - 2, p)


def rref(A, p: int, copy: bool = True):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    M = np.array(A, dtype=np.int64, copy=copy) % p
    if M.ndim != 2:
        raise ValueError("need a 2d array")
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = _inv(M[r, c], p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[nzr] = (M[nzr] - np.outer(col[nzr], M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A, p: int) -> np.ndarray:
    """Basis of {x : A x = 0} as the rows of the result."""
    A = np.asarray(A, dtype=np.int64)
    rows, cols = A.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref(A, p)
    free = [c for c in range(cols) if c not in set(piv)]
    N = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        N[i, f] = 1
        for r, pc in enumerate(piv):
            N[i, pc] = (-R[r, f]) % p
    return N


def solve(A, b, p: int):
    """One solution x of A x = b, or None if the system is inconsistent."""
    A = np.asarray(A, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    rows, cols = A.shape
    if rows == 0:
        return np.zeros(cols, dtype=np.int64)
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, piv = rref(aug, p)
    if piv and piv[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, pc in enumerate(piv):
        x[pc] = R[r, cols]
    return x


def inverse(A, p: int):
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("square matrix required")
    aug = np.concatenate([A % p, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref(aug, p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


def det_nonzero(A, p: int) -> bool:
    A = np.asarray(A)
    return A.shape[0] == A.shape[1] and rank(A, p) == A.shape[0]


def matmul(A, B, p: int):
    """Product mod p, safe against int64 overflow for any sizes."""
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    # split B into 15-bit halves so partial sums stay below 2^63
    lo = B & 0x7FFF
    hi = B >> 15
    k = A.shape[1]
    if k * (p - 1) * 0x7FFF < 2**62:
        r1 = (A @ lo) % p
        r2 = (A @ hi) % p
        return (r1 + (r2 * (1 << 15)) % p) % p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    step = max(1, 2**62 // ((p - 1) * 0x7FFF))
    for s in range(0, k, step):
        a = A[:, s:s + step]
        out = (out + (a @ lo[s:s + step]) % p + ((a @ hi[s:s + step]) % p) * (1 << 15)) % p
    return out


def row_space_basis(A, p: int):
    R, piv = rref(A, p)
    return R[:len(piv)]
