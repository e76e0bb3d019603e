"""Quadratic refinements of alternating GF(2) forms.

A quadratic function q for a form <,> satisfies q(x+y) = q(x) + q(y) + <x,y>.
It is determined by its values on a basis through

    q(sum x_i b_i) = sum x_i q(b_i) + sum_{i<j} x_i x_j <b_i, b_j>.

Stored as the basis-value bit vector plus the form; evaluation, the Arf
invariant, exhaustive zero counts and the affine solver for transvection
invariant quadratics all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf2 import F2Matrix, bits, f2_solve, f2_symplectic_basis, parity, row_apply

UNDEFINED = "undefined"
ABSENT = "absent"


def pair_part(rows: Sequence[int], x: int) -> int:
    """sum_{i<j} x_i x_j G_ij for the form with rows ``rows``."""
    total = 0
    for i in bits(x):
        above = x & ~((1 << (i + 1)) - 1)
        total ^= parity(rows[i] & above)
    return total


@dataclass(frozen=True)
class F2Quadratic:
    dim: int
    form: F2Matrix
    values: int  # bit i = q(basis vector i)

    def __post_init__(self):
        if self.form.nrows != self.dim or self.form.ncols != self.dim:
            raise ValueError("form size must match dim")
        if not self.form.is_alternating():
            raise ValueError("form must be alternating")
        if self.values < 0 or self.values >> self.dim:
            raise ValueError("basis values outside dimension")

    def __call__(self, x: int) -> int:
        return parity(self.values & x) ^ pair_part(self.form.rows, x)

    def pairing(self, x: int, y: int) -> int:
        return parity(row_apply(self.form.rows, x) & y)


def q_from_basis_values(form: F2Matrix, values: int | Sequence[int]) -> F2Quadratic:
    """The unique quadratic function with the given basis values over ``form``."""
    if not isinstance(values, int):
        vals = list(values)
        if len(vals) != form.nrows:
            raise ValueError("value count must match dimension")
        values = sum((int(v) & 1) << i for i, v in enumerate(vals))
    return F2Quadratic(form.nrows, form, values)


def arf(q: F2Quadratic) -> int | str:
    """Arf invariant: sum q(e_i) q(f_i) over a symplectic basis of V/radical.

    UNDEFINED when q does not vanish on the radical (q restricted there is
    linear, so vanishing on a radical basis suffices).
    """
    pairs, radical = f2_symplectic_basis(q.form)
    for z in radical:
        if q(z):
            return UNDEFINED
    total = 0
    for e, f in pairs:
        total ^= q(e) & q(f)
    return total


def iter_values(q: F2Quadratic):
    """Yield (x, q(x)) over all 2^dim vectors, by Gray-code updates."""
    rows = q.form.rows
    x = 0
    val = 0
    yield 0, 0
    for t in range(1, 1 << q.dim):
        b = (t & -t).bit_length() - 1
        val ^= ((q.values >> b) & 1) ^ parity(rows[b] & x)
        x ^= 1 << b
        yield x, val


def count_zeros(q: F2Quadratic, cap: int = 24) -> int:
    """Exhaustive |{x : q(x) = 0}|; dimension capped (2^dim enumeration)."""
    if q.dim > cap:
        raise ValueError(f"dimension {q.dim} exceeds enumeration cap {cap}")
    return sum(1 for _, v in iter_values(q) if v == 0)


def ones_set(q: F2Quadratic, cap: int = 24) -> set[int]:
    """The level set {x : q(x) = 1}."""
    if q.dim > cap:
        raise ValueError(f"dimension {q.dim} exceeds enumeration cap {cap}")
    return {x for x, v in iter_values(q) if v == 1}


def solve_invariant_quadratic(form: F2Matrix, vectors: Iterable[int]) -> F2Quadratic | None:
    """A quadratic function with q(s) = 1 for every s, or None if infeasible.

    Each s imposes one affine constraint on the basis values; any solution is
    invariant under every transvection T_s.  When the constraint vectors span,
    the solution is unique.
    """
    vecs = list(vectors)
    if not vecs:
        raise ValueError("need at least one constraint vector")
    n = form.nrows
    rhs = 0
    for r, s in enumerate(vecs):
        rhs |= (1 ^ pair_part(form.rows, s)) << r
    sol = f2_solve(F2Matrix.from_rows(vecs, n), rhs)
    if sol is None:
        return None
    return F2Quadratic(n, form, sol)


def predicted_arf(n: int, l: int) -> int | str:
    """Closed-form Arf invariant of the invariant quadratic on the kernel lattice.

    n = 2m+1 odd: (m(m-1)/2) * l mod 2.  n = 2m, l even: m*(l/2) mod 2.
    n even with l odd: ABSENT (no invariant quadratic exists).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if n % 2:
        m = (n - 1) // 2
        return (m * (m - 1) // 2 * l) % 2
    if l % 2:
        return ABSENT
    m = n // 2
    return (m * (l // 2)) % 2


def transvect(form: F2Matrix, s: int, x: int) -> int:
    """T_s(x) = x + <s, x> s over GF(2)."""
    return x ^ (s if parity(row_apply(form.rows, s) & x) else 0)
