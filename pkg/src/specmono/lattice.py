"""Integral homology lattices of cyclic branched covers.

Parameters (n, l, g) describe a degree-n cyclic cover S of a genus-g surface,
branched at k = n*l points, with deck transformation t of order n.  Four lattices
with alternating Gram matrices are built:

* ``lattice_s0``: the block of H^1(S) supported over a disc containing all branch
  points.  It is spanned by classes t^j*c_i (1 <= i <= k-1, 0 <= j <= n-2), where
  c_i comes from the pair of branch points (i, i+1), modulo the n-1 independent
  relations t^j*D = 0 with

      D = c_1 + (1+t)*c_2 + (1+t+t^2)*c_3 + ...

  (coefficient of c_i is 1 + t + ... + t^((i-1) mod n); exponents cycle since
  t^n = 1).  The classes t^j*c_1 are eliminated, because the coefficient of c_1
  in D is the unit, leaving the basis {t^j*c_i : 2 <= i <= k-1, 0 <= j <= n-2} of
  rank (n-1)(k-2).
* ``lattice_p1``: the kernel of the sheet-averaging map on the complementary
  block, with basis {(1-t)t^j*a_u, (1-t)t^j*b_u : 0 <= j <= n-2, 1 <= u <= g} for
  a symplectic basis a_u, b_u of the base surface.  Per u the Gram matrix is the
  A_{n-1} Cartan matrix coupled to the 2x2 symplectic matrix.
* ``lattice_p``: orthogonal direct sum of the two blocks above; this equals the
  kernel of the pushforward to the base and carries the monodromy action.
* ``lattice_s``: all of H^1(S); lattice_s0 plus the free block with basis
  {t^j*a_u, t^j*b_u : 0 <= j <= n-1} on which distinct powers of t are orthogonal.

Fixed basis orderings (so Gram matrices and JSON exports are reproducible):
lattice_s0 by (i, j) lexicographic; lattice_p1 and the t^j*a/b block by
(u, a-before-b, j).  Wherever 1 + t + ... + t^(n-1) acts as zero, t^(n-1) is
rewritten as -(1 + t + ... + t^(n-2)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .intmat import alternating_type, int_eye, int_zeros, is_alternating
from .gf2 import F2Matrix, F2Span, f2_solve, vec_from_coords


@dataclass(frozen=True)
class SpectralParams:
    """Cover parameters: rank n >= 2, twist degree l >= 1, base genus g >= 2."""

    n: int
    l: int
    g: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.l < 1:
            raise ValueError("l must be >= 1")
        if self.g < 2:
            raise ValueError("g must be >= 2")

    @property
    def k(self) -> int:
        """Number of branch points."""
        return self.n * self.l

    @property
    def canonical(self) -> bool:
        """Twist degree equals 2g - 2."""
        return self.l == 2 * self.g - 2

    @property
    def hypothesis_ok(self) -> bool:
        """True when l > 2g - 2 or l == 2g - 2 (the canonical case)."""
        return self.l >= 2 * self.g - 2


@dataclass(frozen=True)
class PolarizedLattice:
    rank: int
    gram: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        if not is_alternating(self.gram):
            raise ValueError("Gram matrix must be alternating")
        if self.gram.shape[0] != self.rank or len(self.labels) != self.rank:
            raise ValueError("rank, Gram size and label count must agree")


@dataclass(frozen=True)
class SpectralLatticeSystem:
    params: SpectralParams
    lattice_s0: PolarizedLattice
    lattice_p1: PolarizedLattice
    lattice_p: PolarizedLattice
    lattice_s: PolarizedLattice
    t_on_p: np.ndarray
    t_on_s: np.ndarray
    pushforward: np.ndarray       # lattice_s -> base (rows a_1, b_1, ..., a_g, b_g)
    pullback: np.ndarray          # base -> lattice_s
    embed_p_in_s: np.ndarray      # lattice_p coordinates -> lattice_s coordinates
    sp_generators: tuple[np.ndarray, ...]
    boundary: tuple[tuple[int, ...], ...]


def pair_c(i: int, a: int, j: int, b: int, n: int, k: int | None = None) -> int:
    """Intersection number <t^a c_i, t^b c_j> in {-1, 0, 1}.

    Closed form, with d = (b - a) mod n: equal indices pair +1 at d=1 and -1 at
    d=n-1; j = i+1 pairs +1 at d=0 and -1 at d=1; j = i-1 is the transpose case.
    The two contributions are added so that n = 2 (where d=1 and d=n-1 coincide)
    comes out right.  Antisymmetric and t-invariant by construction.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if i < 1 or j < 1:
        raise IndexError("cycle indices start at 1")
    if k is not None and (i > k - 1 or j > k - 1):
        raise IndexError("cycle index out of range")
    d = (b - a) % n
    if i == j:
        return (1 if d == 1 else 0) - (1 if d == n - 1 else 0)
    if j == i + 1:
        return (1 if d == 0 else 0) - (1 if d == 1 else 0)
    if j == i - 1:
        return (1 if d == n - 1 else 0) - (1 if d == 0 else 0)
    return 0


def boundary_relation(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Coefficients (P_1, ..., P_{k-1}) of the boundary relation sum P_i c_i = 0.

    P_i = 1 + t + ... + t^((i-1) mod n), returned as length-n coefficient tuples
    over t^0..t^(n-1).
    """
    if n < 2 or k < 2:
        raise ValueError("need n >= 2 and k >= 2")
    out = []
    for i in range(1, k):
        top = (i - 1) % n
        out.append(tuple(1 if s <= top else 0 for s in range(n)))
    return tuple(out)


def boundary_pairs_to_zero(n: int, k: int) -> bool:
    """Check <D, t^b c_j> == 0 for all j, b by formal expansion through pair_c."""
    coeffs = boundary_relation(n, k)
    for j in range(1, k):
        for b in range(n):
            total = 0
            for i in range(1, k):
                for s in range(n):
                    if coeffs[i - 1][s]:
                        total += pair_c(i, s, j, b, n)
            if total != 0:
                return False
    return True


def prym_rank(n: int, l: int, g: int) -> int:
    """Rank of lattice_p: (n-1)(nl + 2g - 2)."""
    return (n - 1) * (n * l + 2 * g - 2)


def expected_polarization(n: int, l: int, g: int) -> tuple[tuple[int, ...], int]:
    """Predicted divisor list for lattice_p: 1 repeated
    (n-2)(g-1) + n(n-1)l/2 - 1 times, then n repeated g times; corank 0."""
    ones = (n - 2) * (g - 1) + n * (n - 1) * l // 2 - 1
    return (1,) * ones + (n,) * g, 0


def _s0_rank(n: int, k: int) -> int:
    return (n - 1) * (k - 2)


def _s0_index(i: int, j: int, n: int) -> int:
    return (i - 2) * (n - 1) + j


def _add_reduced(vec: np.ndarray, i: int, a: int, coeff: int, n: int) -> None:
    """Add coeff * t^a c_i (i >= 2) to a lattice_s0 coordinate vector."""
    base = (i - 2) * (n - 1)
    if a <= n - 2:
        vec[base + a] += coeff
    else:  # a == n-1: rewrite via 1 + t + ... + t^(n-1) = 0
        for j in range(n - 1):
            vec[base + j] -= coeff


def _c1_vectors(n: int, k: int) -> list[np.ndarray]:
    """lattice_s0 coordinates of t^j c_1 for j = 0..n-2 (boundary elimination)."""
    r0 = _s0_rank(n, k)
    coeffs = boundary_relation(n, k)
    out = []
    for j in range(n - 1):
        v = int_zeros(r0, 1)[:, 0]
        for i in range(2, k):
            for s in range(n):
                if coeffs[i - 1][s]:
                    _add_reduced(v, i, (j + s) % n, -1, n)
        out.append(v)
    return out


def cycle_class(sys: SpectralLatticeSystem, i: int, a: int) -> np.ndarray:
    """lattice_p coordinates of t^a c_i (any a; c_1 goes through the elimination)."""
    n, k = sys.params.n, sys.params.k
    if not 1 <= i <= k - 1:
        raise IndexError("cycle index out of range")
    a %= n
    rp = sys.lattice_p.rank
    v = int_zeros(rp, 1)[:, 0]
    if i >= 2:
        _add_reduced(v, i, a, 1, n)
        return v
    c1 = _c1_vectors(n, k)
    r0 = _s0_rank(n, k)
    if a <= n - 2:
        v[:r0] = c1[a]
    else:
        total = -sum(c1)
        v[:r0] = total
    return v


def loop_class(sys: SpectralLatticeSystem, u: int, which: str, j: int) -> np.ndarray:
    """lattice_p coordinates of (1-t)t^j a_u (which='a') or (1-t)t^j b_u."""
    n, g = sys.params.n, sys.params.g
    if not (1 <= u <= g) or which not in ("a", "b") or not (0 <= j <= n - 2):
        raise IndexError("loop class index out of range")
    rp = sys.lattice_p.rank
    r0 = _s0_rank(n, sys.params.k)
    v = int_zeros(rp, 1)[:, 0]
    x = 0 if which == "a" else 1
    v[r0 + (u - 1) * 2 * (n - 1) + x * (n - 1) + j] = 1
    return v


def _block_diag(*blocks: np.ndarray) -> np.ndarray:
    rtot = sum(b.shape[0] for b in blocks)
    ctot = sum(b.shape[1] for b in blocks)
    out = int_zeros(rtot, ctot)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def _cartan_a(m: int) -> np.ndarray:
    """Cartan matrix of the A_m path (m x m)."""
    c = int_zeros(m, m)
    for i in range(m):
        c[i, i] = 2
        if i + 1 < m:
            c[i, i + 1] = -1
            c[i + 1, i] = -1
    return c


def _companion(n: int) -> np.ndarray:
    """Action of t on a rank n-1 block where 1 + t + ... + t^(n-1) = 0."""
    nb = n - 1
    m = int_zeros(nb, nb)
    for j in range(nb - 1):
        m[j + 1, j] = 1
    for i in range(nb):
        m[i, nb - 1] = -1
    return m


def _cyclic_shift(n: int) -> np.ndarray:
    m = int_zeros(n, n)
    for j in range(n):
        m[(j + 1) % n, j] = 1
    return m


def build_system(params: SpectralParams) -> SpectralLatticeSystem:
    """Construct all four lattices with t-actions, projection maps and the
    standard transvection generator set."""
    n, l, g = params.n, params.l, params.g
    k = params.k
    nb = n - 1

    # lattice_s0
    r0 = _s0_rank(n, k)
    gram0 = int_zeros(r0, r0)
    labels0 = []
    for i in range(2, k):
        for j in range(nb):
            labels0.append(f"t^{j}*c_{i}")
    for i in range(2, k):
        for j in range(nb):
            for i2 in range(2, k):
                for j2 in range(nb):
                    gram0[_s0_index(i, j, n), _s0_index(i2, j2, n)] = pair_c(i, j, i2, j2, n)
    lattice_s0 = PolarizedLattice(r0, gram0, tuple(labels0))

    # lattice_p1: per u the block [[0, C], [-C, 0]] with C the A_{n-1} Cartan matrix
    r1 = 2 * g * nb
    cart = _cartan_a(nb)
    blk1 = _block_diag(int_zeros(nb, nb), int_zeros(nb, nb))
    blk1[:nb, nb:] = cart
    blk1[nb:, :nb] = -cart
    gram1 = _block_diag(*([blk1] * g))
    labels1 = []
    for u in range(1, g + 1):
        for x in ("a", "b"):
            for j in range(nb):
                labels1.append(f"(1-t)t^{j}*{x}_{u}")
    lattice_p1 = PolarizedLattice(r1, gram1, tuple(labels1))

    # lattice_p = lattice_s0 perp lattice_p1
    gram_p = _block_diag(gram0, gram1)
    lattice_p = PolarizedLattice(r0 + r1, gram_p, tuple(labels0) + tuple(labels1))

    # lattice_s: adds the block {t^j a_u, t^j b_u} with <t^j x, t^m y> = delta_jm <x,y>
    rs1 = 2 * g * n
    blk_s1 = int_zeros(2 * n, 2 * n)
    for j in range(n):
        blk_s1[j, n + j] = 1
        blk_s1[n + j, j] = -1
    gram_s1 = _block_diag(*([blk_s1] * g))
    labels_s1 = []
    for u in range(1, g + 1):
        for x in ("a", "b"):
            for j in range(n):
                labels_s1.append(f"t^{j}*{x}_{u}")
    gram_s = _block_diag(gram0, gram_s1)
    lattice_s = PolarizedLattice(r0 + rs1, gram_s, tuple(labels0) + tuple(labels_s1))

    # t-actions
    comp = _companion(n)
    t_on_p = _block_diag(*([comp] * (k - 2 + 2 * g)))
    shift = _cyclic_shift(n)
    t_on_s = _block_diag(*([comp] * (k - 2)), *([shift] * (2 * g)))

    # pushforward / pullback; base basis ordered a_1, b_1, ..., a_g, b_g
    rs = r0 + rs1
    push = int_zeros(2 * g, rs)
    pull = int_zeros(rs, 2 * g)
    for u in range(g):
        for x in range(2):
            base_row = 2 * u + x
            for j in range(n):
                col = r0 + u * 2 * n + x * n + j
                push[base_row, col] = 1
                pull[col, base_row] = 1

    # embedding of lattice_p into lattice_s
    embed = int_zeros(rs, r0 + r1)
    embed[:r0, :r0] = int_eye(r0)
    for u in range(g):
        for x in range(2):
            for j in range(nb):
                col = r0 + u * 2 * nb + x * nb + j
                row = r0 + u * 2 * n + x * n
                embed[row + j, col] = 1
                embed[row + j + 1, col] = -1

    # transvection generators: the (n-1)(k-1) classes t^j c_i followed by the
    # 2g(n-1) classes t^j (c_1 + (1-t)a_u), t^j (c_1 + (1-t)b_u)
    c1v = _c1_vectors(n, k)
    gens: list[np.ndarray] = []
    rp = r0 + r1
    for i in range(1, k):
        for j in range(nb):
            v = int_zeros(rp, 1)[:, 0]
            if i == 1:
                v[:r0] = c1v[j]
            else:
                _add_reduced(v, i, j, 1, n)
            gens.append(v)
    for x in range(2):
        for u in range(g):
            for j in range(nb):
                v = int_zeros(rp, 1)[:, 0]
                v[:r0] = c1v[j]
                v[r0 + u * 2 * nb + x * nb + j] += 1
                gens.append(v)

    return SpectralLatticeSystem(
        params=params,
        lattice_s0=lattice_s0,
        lattice_p1=lattice_p1,
        lattice_p=lattice_p,
        lattice_s=lattice_s,
        t_on_p=t_on_p,
        t_on_s=t_on_s,
        pushforward=push,
        pullback=pull,
        embed_p_in_s=embed,
        sp_generators=tuple(gens),
        boundary=boundary_relation(n, k),
    )


def polarization_type(sys: SpectralLatticeSystem) -> tuple[tuple[int, ...], int]:
    """Elementary divisors and corank of the lattice_p Gram matrix."""
    return alternating_type(sys.lattice_p.gram)


def gram_mod2(lattice: PolarizedLattice) -> F2Matrix:
    return F2Matrix.from_dense([[int(x) % 2 for x in row] for row in lattice.gram])


def sp_generators_mod2(sys: SpectralLatticeSystem) -> list[int]:
    return [vec_from_coords([int(x) % 2 for x in gen]) for gen in sys.sp_generators]


def pullback_classes_mod2(sys: SpectralLatticeSystem) -> list[int] | None:
    """Mod-2 images of the pulled-back base classes inside lattice_p.

    For n even each pullback of a base class lies in lattice_p mod 2; the vectors
    returned are their lattice_p coordinates.  Returns None when n is odd (the
    pullback block then meets lattice_p trivially mod 2).
    """
    n = sys.params.n
    if n % 2:
        return None
    rs = sys.lattice_s.rank
    embed_rows = [vec_from_coords([int(x) % 2 for x in sys.embed_p_in_s[r, :]])
                  for r in range(rs)]
    embed_t = F2Matrix.from_rows(embed_rows, sys.lattice_p.rank)
    out = []
    for col in range(2 * sys.params.g):
        target = vec_from_coords([int(x) % 2 for x in sys.pullback[:, col]])
        sol = f2_solve(embed_t, target)
        if sol is None:
            raise AssertionError("pullback class not in lattice_p mod 2")
        out.append(sol)
    return out


@dataclass(frozen=True)
class Mod2RadicalReport:
    n: int
    radical_dim: int
    expected_dim: int
    radical_is_pullback_image: bool | None
    splitting_orthogonal: bool | None

    @property
    def ok(self) -> bool:
        return (self.radical_dim == self.expected_dim
                and self.radical_is_pullback_image in (None, True)
                and self.splitting_orthogonal in (None, True))


def mod2_nullspace_check(sys: SpectralLatticeSystem) -> Mod2RadicalReport:
    """Radical of the lattice_p form mod 2.

    n even: the radical has dimension 2g and equals the span of the mod-2
    pullback classes.  n odd: the radical is trivial and lattice_s mod 2 splits
    orthogonally into lattice_p plus the pullback block.
    """
    n, g = sys.params.n, sys.params.g
    form = gram_mod2(sys.lattice_p)
    from .gf2 import f2_nullspace
    radical = f2_nullspace(form)
    if n % 2 == 0:
        pulls = pullback_classes_mod2(sys)
        span = F2Span(radical)
        matches = (len(radical) == F2Span(pulls).rank
                   and all(span.contains(v) for v in pulls))
        return Mod2RadicalReport(n, len(radical), 2 * g, matches, None)
    # n odd: pullback block is orthogonal to lattice_p and complements it mod 2
    rs = sys.lattice_s.rank
    gram_s = sys.lattice_s.gram
    embed_cols = [vec_from_coords([int(sys.embed_p_in_s[r, c]) % 2 for r in range(rs)])
                  for c in range(sys.lattice_p.rank)]
    pull_cols = [vec_from_coords([int(sys.pullback[r, c]) % 2 for r in range(rs)])
                 for c in range(2 * g)]
    gs2 = F2Matrix.from_dense([[int(x) % 2 for x in row] for row in gram_s])
    from .gf2 import form_pairing
    orth = all(form_pairing(gs2, pc, ec) == 0 for pc in pull_cols for ec in embed_cols)
    direct = F2Span(embed_cols + pull_cols).rank == rs
    return Mod2RadicalReport(n, len(radical), 0, None, orth and direct)


def system_to_json_dict(sys: SpectralLatticeSystem) -> dict:
    """JSON-ready description: params, labels, Gram/t matrices, generators,
    boundary coefficients."""
    def mat(m: np.ndarray) -> list[list[int]]:
        return [[int(x) for x in row] for row in m]

    def vec(v: np.ndarray) -> list[int]:
        return [int(x) for x in v]

    return {
        "params": {"n": sys.params.n, "l": sys.params.l, "g": sys.params.g,
                   "k": sys.params.k, "hypothesis_ok": sys.params.hypothesis_ok,
                   "canonical": sys.params.canonical},
        "basis_labels": {
            "lattice_s0": list(sys.lattice_s0.labels),
            "lattice_p1": list(sys.lattice_p1.labels),
            "lattice_p": list(sys.lattice_p.labels),
            "lattice_s": list(sys.lattice_s.labels),
        },
        "gram": {
            "lattice_s0": mat(sys.lattice_s0.gram),
            "lattice_p1": mat(sys.lattice_p1.gram),
            "lattice_p": mat(sys.lattice_p.gram),
            "lattice_s": mat(sys.lattice_s.gram),
        },
        "t_on_p": mat(sys.t_on_p),
        "t_on_s": mat(sys.t_on_s),
        "pushforward": mat(sys.pushforward),
        "pullback": mat(sys.pullback),
        "embed_p_in_s": mat(sys.embed_p_in_s),
        "sp_generators": [vec(v) for v in sys.sp_generators],
        "boundary": [list(c) for c in sys.boundary],
    }
