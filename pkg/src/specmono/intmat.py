"""Exact linear algebra over the integers.

Matrices are numpy arrays with ``dtype=object`` holding Python ints, so every
operation is arbitrary precision; there is no overflow path.  Pivoting rules are
deterministic (minimal absolute value, lowest index on ties) so all results are
byte-for-byte reproducible.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np


def intmat(rows: Sequence[Sequence[int]]) -> np.ndarray:
    """Exact integer matrix (object dtype) from nested sequences."""
    a = np.array([[int(x) for x in row] for row in rows], dtype=object)
    if a.ndim != 2:
        raise ValueError("matrix must be rectangular")
    return a


def int_zeros(nrows: int, ncols: int) -> np.ndarray:
    return np.zeros((nrows, ncols), dtype=object)


def int_eye(n: int) -> np.ndarray:
    m = int_zeros(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def is_alternating(g: np.ndarray) -> bool:
    """True if g is square, skew-symmetric and has zero diagonal."""
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        return False
    n = g.shape[0]
    for i in range(n):
        if g[i, i] != 0:
            return False
        for j in range(i + 1, n):
            if g[i, j] != -g[j, i]:
                return False
    return True


def _min_abs_pivot(d: np.ndarray, t: int):
    """Lowest-index entry of minimal nonzero absolute value in d[t:, t:]."""
    m, n = d.shape
    best = None
    for r in range(t, m):
        for c in range(t, n):
            v = d[r, c]
            if v != 0 and (best is None or abs(v) < best[0]):
                best = (abs(v), r, c)
    return None if best is None else (best[1], best[2])


def smith_normal_form(mat: np.ndarray, transforms: bool = False):
    """Smith normal form by elementary row/column reduction.

    Returns D, or (D, U, V) with U @ mat @ V == D when transforms is requested.
    Diagonal entries are nonnegative and satisfy d_i | d_{i+1}.
    """
    d = np.array(mat, dtype=object, copy=True)
    if d.ndim != 2:
        raise ValueError("matrix must be 2-dimensional")
    m, n = d.shape
    u = int_eye(m) if transforms else None
    v = int_eye(n) if transforms else None
    t = 0
    while t < min(m, n):
        loc = _min_abs_pivot(d, t)
        if loc is None:
            break
        r, c = loc
        if r != t:
            d[[t, r]] = d[[r, t]]
            if transforms:
                u[[t, r]] = u[[r, t]]
        if c != t:
            d[:, [t, c]] = d[:, [c, t]]
            if transforms:
                v[:, [t, c]] = v[:, [c, t]]
        dirty = False
        for r in range(t + 1, m):
            if d[r, t] != 0:
                q = d[r, t] // d[t, t]
                d[r, :] = d[r, :] - q * d[t, :]
                if transforms:
                    u[r, :] = u[r, :] - q * u[t, :]
                if d[r, t] != 0:
                    dirty = True
        for c in range(t + 1, n):
            if d[t, c] != 0:
                q = d[t, c] // d[t, t]
                d[:, c] = d[:, c] - q * d[:, t]
                if transforms:
                    v[:, c] = v[:, c] - q * v[:, t]
                if d[t, c] != 0:
                    dirty = True
        if dirty:
            continue
        # pivot must divide the rest of the submatrix before we advance
        fixed = False
        for r in range(t + 1, m):
            for c in range(t + 1, n):
                if d[r, c] % d[t, t] != 0:
                    d[t, :] = d[t, :] + d[r, :]
                    if transforms:
                        u[t, :] = u[t, :] + u[r, :]
                    fixed = True
                    break
            if fixed:
                break
        if not fixed:
            t += 1
    for i in range(min(m, n)):
        if d[i, i] < 0:
            d[i, :] = -d[i, :]
            if transforms:
                u[i, :] = -u[i, :]
    if transforms:
        return d, u, v
    return d


def smith_invariants(mat: np.ndarray) -> tuple[int, ...]:
    """Nonzero invariant factors of mat, in divisibility order d_1 | d_2 | ..."""
    d = smith_normal_form(mat)
    out = []
    for i in range(min(d.shape)):
        if d[i, i] != 0:
            out.append(int(d[i, i]))
    return tuple(out)


def alternating_type(g: np.ndarray) -> tuple[tuple[int, ...], int]:
    """Elementary divisors (each once) and corank of an alternating form.

    The Smith invariants of an alternating matrix occur in equal pairs
    (d_1, d_1, d_2, d_2, ...); this returns ((d_1, d_2, ...), corank).
    """
    if not is_alternating(g):
        raise ValueError("matrix is not alternating")
    inv = smith_invariants(g)
    if len(inv) % 2 != 0:
        raise ValueError("alternating form has odd rank")
    for a, b in zip(inv[0::2], inv[1::2]):
        if a != b:
            raise ValueError("Smith invariants of alternating form not paired")
    return inv[0::2], g.shape[0] - len(inv)


def congruence_kernel(mat: np.ndarray, modulus: int) -> list[np.ndarray]:
    """Generators of the subgroup {x : mat @ x == 0 (mod modulus)} of Z^ncols."""
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    d, _, v = smith_normal_form(mat, transforms=True)
    m, n = d.shape
    gens = []
    for i in range(n):
        di = int(d[i, i]) if i < min(m, n) else 0
        mult = modulus // math.gcd(di, modulus)
        gens.append(v[:, i] * mult)
    return gens


def format_matrix_text(mat: np.ndarray) -> str:
    """Serialize: first line "rows cols", then row-major whitespace integers."""
    m, n = mat.shape
    lines = [f"{m} {n}"]
    for r in range(m):
        lines.append(" ".join(str(int(x)) for x in mat[r, :]))
    return "\n".join(lines) + "\n"


def parse_matrix_text(text: str) -> np.ndarray:
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("matrix text needs a 'rows cols' header")
    m, n = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != m * n:
        raise ValueError(f"expected {m * n} entries, got {len(body)}")
    a = int_zeros(m, n)
    for i, tok in enumerate(body):
        a[i // n, i % n] = int(tok)
    return a
