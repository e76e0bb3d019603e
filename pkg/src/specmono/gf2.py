"""GF(2) linear algebra on bit-packed vectors.

Vectors are Python ints used as bit sets (bit i = coordinate i), matrices keep one
int per row, so word-level XOR does all the work and the dimension is unbounded.
Pivots are always the lowest available index, which makes every routine here
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence


def parity(x: int) -> int:
    return x.bit_count() & 1


def bits(x: int) -> Iterator[int]:
    """Indices of the set bits of x, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def vec_from_coords(coords: Sequence[int]) -> int:
    return sum((int(c) & 1) << i for i, c in enumerate(coords))


def vec_to_coords(x: int, ncols: int) -> list[int]:
    return [(x >> i) & 1 for i in range(ncols)]


@dataclass(frozen=True)
class F2Matrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        mask = (1 << self.ncols) - 1
        for r in self.rows:
            if r < 0 or r & ~mask:
                raise ValueError("row has bits outside [0, ncols)")

    @classmethod
    def from_rows(cls, rows: Sequence[int], ncols: int) -> "F2Matrix":
        rows = tuple(int(r) for r in rows)
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]]) -> "F2Matrix":
        rows = tuple(vec_from_coords(row) for row in dense)
        ncols = len(dense[0]) if len(dense) else 0
        return cls(len(rows), ncols, rows)

    def get(self, r: int, c: int) -> int:
        return (self.rows[r] >> c) & 1

    def to_dense(self) -> list[list[int]]:
        return [vec_to_coords(r, self.ncols) for r in self.rows]

    def is_alternating(self) -> bool:
        """Symmetric with zero diagonal (= alternating over GF(2))."""
        if self.nrows != self.ncols:
            return False
        for i in range(self.nrows):
            if self.get(i, i):
                return False
            for j in range(i + 1, self.ncols):
                if self.get(i, j) != self.get(j, i):
                    return False
        return True


def row_apply(rows: Sequence[int], x: int) -> int:
    """XOR of rows[i] over the set bits i of x (i.e. the product x @ rows)."""
    out = 0
    for i in bits(x):
        out ^= rows[i]
    return out


def form_pairing(form: F2Matrix, x: int, y: int) -> int:
    """<x, y> for the bilinear form with Gram matrix ``form``."""
    return parity(row_apply(form.rows, x) & y)


def f2_rref(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form: (rows by ascending pivot, pivot columns)."""
    piv: dict[int, int] = {}
    for row in rows:
        cur = int(row)
        while cur:
            c = (cur & -cur).bit_length() - 1
            if c in piv:
                cur ^= piv[c]
            else:
                piv[c] = cur
                break
    cols = sorted(piv)
    for c in reversed(cols):
        red = piv[c]
        for c2 in cols:
            if c2 > c and (red >> c2) & 1:
                red ^= piv[c2]
        piv[c] = red
    return [piv[c] for c in cols], cols


def f2_rank(rows: Sequence[int], ncols: int) -> int:
    return len(f2_rref(rows, ncols)[1])


def f2_solve(a: F2Matrix, b: int) -> int | None:
    """Any solution x of a @ x = b, or None.

    b packs the right-hand side with bit r = entry r.  Free variables are set to
    zero, so the solution with the lowest-index pivots is returned.
    """
    n = a.ncols
    aug = [a.rows[r] | (((b >> r) & 1) << n) for r in range(a.nrows)]
    red, cols = f2_rref(aug, n + 1)
    x = 0
    for row, c in zip(red, cols):
        if c == n:
            return None
        if (row >> n) & 1:
            x |= 1 << c
    return x


def f2_nullspace(a: F2Matrix) -> list[int]:
    """Basis of {x : a @ x = 0}, one vector per free column, ascending."""
    red, cols = f2_rref(a.rows, a.ncols)
    pivots = set(cols)
    basis = []
    for f in range(a.ncols):
        if f in pivots:
            continue
        v = 1 << f
        for row, c in zip(red, cols):
            if (row >> f) & 1:
                v |= 1 << c
        basis.append(v)
    return basis


class F2Span:
    """Incrementally maintained row space with membership queries."""

    def __init__(self, vectors: Sequence[int] = ()):
        self._piv: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def add(self, v: int) -> bool:
        """Insert v; True iff the rank grew."""
        cur = int(v)
        while cur:
            c = (cur & -cur).bit_length() - 1
            if c in self._piv:
                cur ^= self._piv[c]
            else:
                self._piv[c] = cur
                return True
        return False

    def contains(self, v: int) -> bool:
        cur = int(v)
        while cur:
            c = (cur & -cur).bit_length() - 1
            if c not in self._piv:
                return False
            cur ^= self._piv[c]
        return True

    @property
    def rank(self) -> int:
        return len(self._piv)

    def enumerate(self) -> list[int]:
        """All 2^rank elements of the span (rank must be small)."""
        if self.rank > 20:
            raise ValueError("span too large to enumerate")
        out = [0]
        for row in self._piv.values():
            out += [x ^ row for x in out]
        return sorted(out)


def f2_symplectic_basis(g: F2Matrix) -> tuple[list[tuple[int, int]], list[int]]:
    """Hyperbolic pairs (e_i, f_i) and a radical basis for an alternating form.

    Gram reduction: repeatedly pick the lowest-index pair of current vectors with
    pairing 1, then correct the remaining vectors to be orthogonal to the pair.
    The output satisfies <e_i, f_j> = delta_ij, all other pairings zero.
    """
    if not g.is_alternating():
        raise ValueError("form must be symmetric with zero diagonal")
    n = g.nrows

    def pair(x: int, y: int) -> int:
        return parity(row_apply(g.rows, x) & y)

    remaining = [1 << i for i in range(n)]
    pairs: list[tuple[int, int]] = []
    while True:
        found = None
        for a in range(len(remaining)):
            for b in range(a + 1, len(remaining)):
                if pair(remaining[a], remaining[b]):
                    found = (a, b)
                    break
            if found:
                break
        if found is None:
            return pairs, remaining
        a, b = found
        e, f = remaining[a], remaining[b]
        pairs.append((e, f))
        rest = []
        for idx, w in enumerate(remaining):
            if idx in (a, b):
                continue
            w2 = w
            if pair(w, f):
                w2 ^= e
            if pair(w, e):
                w2 ^= f
            rest.append(w2)
        remaining = rest
