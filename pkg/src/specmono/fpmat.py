"""Dense linear algebra over GF(p) for small odd primes.

Matrices are numpy int64 arrays with entries reduced into [0, p).  The dimensions
in play here are tiny, so plain Gauss-Jordan with modular inverses is plenty.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def fp_array(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def fp_identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def fp_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64)) % p


def fp_rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    r = fp_array(a, p).copy()
    nrows, ncols = r.shape
    pivots = []
    ri = 0
    for c in range(ncols):
        pr = None
        for rr in range(ri, nrows):
            if r[rr, c]:
                pr = rr
                break
        if pr is None:
            continue
        if pr != ri:
            r[[ri, pr]] = r[[pr, ri]]
        inv = pow(int(r[ri, c]), p - 2, p)
        r[ri] = (r[ri] * inv) % p
        for rr in range(nrows):
            if rr != ri and r[rr, c]:
                r[rr] = (r[rr] - r[rr, c] * r[ri]) % p
        pivots.append(c)
        ri += 1
        if ri == nrows:
            break
    return r, pivots


def fp_rank(a: np.ndarray, p: int) -> int:
    return len(fp_rref(a, p)[1])


def fp_nullspace(a: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of {x : a @ x == 0 (mod p)}, one vector per free column."""
    r, pivots = fp_rref(a, p)
    ncols = r.shape[1]
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for row, c in enumerate(pivots):
            v[c] = (-r[row, f]) % p
        basis.append(v)
    return basis


def fp_inv(a: np.ndarray, p: int) -> np.ndarray:
    a = fp_array(a, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    aug = np.concatenate([a, fp_identity(n)], axis=1)
    r, pivots = fp_rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return r[:, n:]


def fp_det(a: np.ndarray, p: int) -> int:
    """Determinant mod p by elimination (a is not modified)."""
    m = fp_array(a, p).copy()
    n = m.shape[0]
    det = 1
    for c in range(n):
        pr = None
        for rr in range(c, n):
            if m[rr, c]:
                pr = rr
                break
        if pr is None:
            return 0
        if pr != c:
            m[[c, pr]] = m[[pr, c]]
            det = (-det) % p
        det = (det * int(m[c, c])) % p
        inv = pow(int(m[c, c]), p - 2, p)
        for rr in range(c + 1, n):
            if m[rr, c]:
                m[rr] = (m[rr] - m[rr, c] * inv % p * m[c]) % p
    return det % p


def fp_fixed_space(generators: Sequence[np.ndarray], p: int) -> list[np.ndarray]:
    """Basis of the joint fixed subspace {x : m @ x == x for all generators}."""
    gens = [fp_array(m, p) for m in generators]
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].shape[0]
    for m in gens:
        if m.shape != (n, n):
            raise ValueError("generators must be square and of equal size")
    stacked = np.concatenate([(m - fp_identity(n)) % p for m in gens], axis=0)
    return fp_nullspace(stacked, p)
