"""Exterior powers over GF(p) and Z: invariant forms and fixed subspaces.

Degree-k components are coordinatized by strictly increasing k-subsets of basis
indices in colexicographic order; wedge signs come from sorted-merge inversion
parity.  The canonical symplectic invariants

    alpha_{2m} = sum_{i_1 < ... < i_m} (e_{i_1} ^ f_{i_1}) ^ ... ^ (e_{i_m} ^ f_{i_m})

span the transvection-fixed part in even degree; the corresponding invariant for
an arbitrary nondegenerate alternating Gram matrix is the bivector of its inverse.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fpmat import fp_array, fp_identity, fp_inv, fp_nullspace, is_prime
from .lattice import SpectralLatticeSystem


def ksubsets_colex(n: int, k: int) -> list[tuple[int, ...]]:
    """All strictly increasing k-subsets of range(n), colexicographically."""
    return sorted(itertools.combinations(range(n), k), key=lambda s: s[::-1])


def merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, tuple[int, ...] | None]:
    """(sign, merged) for the wedge of two increasing index tuples; sign 0 on overlap."""
    if set(a) & set(b):
        return 0, None
    inversions = sum(1 for x in a for y in b if x > y)
    merged = tuple(sorted(a + b))
    return (-1) ** inversions, merged


@dataclass(frozen=True)
class ExteriorVector:
    """Element of the degree-k exterior power of an n-dimensional space.

    Coefficients are indexed by ksubsets_colex(dim, degree); modulus None means
    integer coefficients.
    """
    dim: int
    degree: int
    coeffs: tuple[int, ...]
    modulus: int | None = None

    def __post_init__(self):
        if len(self.coeffs) != math.comb(self.dim, self.degree):
            raise ValueError("coefficient count must be C(dim, degree)")

    def as_dict(self) -> dict[tuple[int, ...], int]:
        subs = ksubsets_colex(self.dim, self.degree)
        return {s: c for s, c in zip(subs, self.coeffs) if c}


def from_dict(dim: int, degree: int, d: dict[tuple[int, ...], int],
              modulus: int | None = None) -> ExteriorVector:
    subs = ksubsets_colex(dim, degree)
    coeffs = []
    for s in subs:
        c = int(d.get(s, 0))
        coeffs.append(c % modulus if modulus else c)
    return ExteriorVector(dim, degree, tuple(coeffs), modulus)


def wedge(x: ExteriorVector, y: ExteriorVector) -> ExteriorVector:
    if x.dim != y.dim or x.modulus != y.modulus:
        raise ValueError("operands live in different exterior algebras")
    out: dict[tuple[int, ...], int] = {}
    for sa, ca in x.as_dict().items():
        for sb, cb in y.as_dict().items():
            sign, merged = merge_sign(sa, sb)
            if sign:
                out[merged] = out.get(merged, 0) + sign * ca * cb
    return from_dict(x.dim, x.degree + y.degree, out, x.modulus)


def omega(v: int, modulus: int | None = None) -> ExteriorVector:
    """The standard symplectic 2-form sum_i e_i ^ f_i on basis e_1,f_1,...,e_v,f_v."""
    return from_dict(2 * v, 2, {(2 * i, 2 * i + 1): 1 for i in range(v)}, modulus)


def alpha_form(v: int, m: int, modulus: int | None = None) -> ExteriorVector:
    """alpha_{2m}: the sum over m-subsets of the hyperbolic planes, coefficients 1."""
    if not 0 <= m <= v:
        raise ValueError("need 0 <= m <= v")
    d: dict[tuple[int, ...], int] = {}
    for subset in itertools.combinations(range(v), m):
        idx = tuple(sorted(itertools.chain.from_iterable((2 * i, 2 * i + 1) for i in subset)))
        d[idx] = 1
    return from_dict(2 * v, 2 * m, d, modulus)


def omega_power_identity(v: int, m: int) -> bool:
    """Check omega^m == m! * alpha_{2m} in the integral exterior algebra."""
    om = omega(v)
    power = from_dict(2 * v, 0, {(): 1})
    for _ in range(m):
        power = wedge(power, om)
    target = alpha_form(v, m)
    scaled = tuple(math.factorial(m) * c for c in target.coeffs)
    return power.coeffs == scaled


def _det_mod(a: np.ndarray, p: int) -> int:
    m = a.copy() % p
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


def exterior_action(mat: np.ndarray, k: int, p: int) -> np.ndarray:
    """Matrix of the induced action on the degree-k component over GF(p).

    Entry (I, J) is the minor det(mat[I, J]); multiplicative in mat.
    """
    mat = fp_array(mat, p)
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise ValueError("matrix must be square")
    subs = ksubsets_colex(n, k)
    size = len(subs)
    out = np.zeros((size, size), dtype=np.int64)
    for jj, colset in enumerate(subs):
        cols = mat[:, colset]
        for ii, rowset in enumerate(subs):
            out[ii, jj] = _det_mod(cols[rowset, :], p) if k else 1
    return out


def symplectic_transvection_fp(a: np.ndarray, gram: np.ndarray, p: int) -> np.ndarray:
    """T_a = I + a (a^T G) over GF(p)."""
    a = fp_array(a, p)
    gram = fp_array(gram, p)
    n = gram.shape[0]
    return (fp_identity(n) + np.outer(a, (a @ gram) % p)) % p


def standard_symplectic_gram(v: int) -> np.ndarray:
    g = np.zeros((2 * v, 2 * v), dtype=np.int64)
    for i in range(v):
        g[2 * i, 2 * i + 1] = 1
        g[2 * i + 1, 2 * i] = -1
    return g


def _fixed_space_of_actions(actions: Sequence[np.ndarray], size: int, p: int) -> list[np.ndarray]:
    if size == 0:
        return []
    stacked = np.concatenate([(w - np.eye(size, dtype=np.int64)) % p for w in actions], axis=0)
    return fp_nullspace(stacked, p)


def invariant_subspace(p: int, v: int, k: int, cap: int = 100_000) -> list[np.ndarray]:
    """Fixed subspace of the degree-k power under every symplectic transvection
    of the standard 2v-dimensional symplectic space over GF(p).

    Transvections generate the symplectic group, so this is the full invariant
    subspace: one-dimensional (spanned by a multiple of alpha_k) for even
    k <= 2v, zero otherwise.
    """
    if not is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    if p ** (2 * v) > cap:
        raise ValueError(f"p^(2v) = {p ** (2 * v)} exceeds cap {cap}")
    if k == 0:
        return [np.array([1], dtype=np.int64)]
    n = 2 * v
    if k > n:
        return []
    gram = standard_symplectic_gram(v) % p
    size = math.comb(n, k)
    actions = []
    for idx in range(1, p ** n):
        a = np.array([(idx // p ** i) % p for i in range(n)], dtype=np.int64)
        actions.append(exterior_action(symplectic_transvection_fp(a, gram, p), k, p))
    return _fixed_space_of_actions(actions, size, p)


def monodromy_invariant_subspace(sys: SpectralLatticeSystem, p: int, k: int,
                                 entry_cap: int = 2_000_000) -> list[np.ndarray]:
    """Fixed subspace of the degree-k power of the kernel lattice mod p under the
    transvections of the standard generator set.

    Requires an odd prime p not dividing n (the form is then nondegenerate mod p).
    Expected: dimension 1 in even degree with generator proportional to the
    (k/2)-th power of the Gram bivector, dimension 0 in odd degree.
    """
    if not is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    if sys.params.n % p == 0:
        raise ValueError("p must not divide n")
    mu = sys.lattice_p.rank
    if k == 0:
        return [np.array([1], dtype=np.int64)]
    if k > mu:
        return []
    size = math.comb(mu, k)
    if size * size * len(sys.sp_generators) > entry_cap:
        raise ValueError("exterior power too large for the configured cap")
    gram = fp_array([[int(x) for x in row] for row in sys.lattice_p.gram], p)
    actions = []
    for gen in sys.sp_generators:
        a = fp_array([int(x) for x in gen], p)
        actions.append(exterior_action(symplectic_transvection_fp(a, gram, p), k, p))
    return _fixed_space_of_actions(actions, size, p)


def gram_bivector(gram_int: np.ndarray, p: int) -> ExteriorVector:
    """The invariant bivector of a nondegenerate alternating Gram matrix mod p:
    the upper triangle of the inverse Gram matrix."""
    g = fp_array([[int(x) for x in row] for row in gram_int], p)
    binv = fp_inv(g, p)
    n = g.shape[0]
    d = {(i, j): int(binv[i, j]) % p for i in range(n) for j in range(i + 1, n)}
    return from_dict(n, 2, d, p)


def bivector_power(biv: ExteriorVector, m: int) -> ExteriorVector:
    power = from_dict(biv.dim, 0, {(): 1}, biv.modulus)
    for _ in range(m):
        power = wedge(power, biv)
    return power


def is_proportional(x: Sequence[int], y: Sequence[int], p: int) -> bool:
    """True when x and y span the same line over GF(p) (both nonzero)."""
    x = [int(v) % p for v in x]
    y = [int(v) % p for v in y]
    if len(x) != len(y) or not any(x) or not any(y):
        return False
    i = next(i for i, v in enumerate(x) if v)
    if not y[i]:
        return False
    c = (y[i] * pow(x[i], p - 2, p)) % p
    return all((c * xv - yv) % p == 0 for xv, yv in zip(x, y))
