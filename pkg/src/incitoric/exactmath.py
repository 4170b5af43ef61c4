"""Exact integer linear algebra over arbitrary-precision integers.

Dense matrices only; desk-scale instances never need sparsity.  The module
provides the column-style Hermite normal form with its unimodular
transform, Smith invariant factors, saturated integer kernels, exact ranks
over Q and over prime fields, Bareiss determinants, lattice membership
certificates and gcds of maximal minors.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd, isqrt
from typing import Iterable, Optional, Sequence

from .errors import BadParameters, CompositeModulus, DimensionMismatch

# the exact LP lives in its own file but belongs to this module's surface
from .lp import (  # noqa: F401
    LinearConstraint,
    LpResult,
    RationalLpProblem,
    lp_feasible,
    verify_farkas,
)


@dataclass(frozen=True)
class IntMatrix:
    """Dense matrix over Python ints, stored as a tuple of row tuples."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise BadParameters("negative matrix dimensions")
        if len(self.entries) != self.rows:
            raise DimensionMismatch("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged matrix rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def mat_mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch("matrix product shape mismatch")
        ot = other.transpose().entries
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot) for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, data)

    def mat_vec(self, v: Sequence[int]) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatch("matrix-vector shape mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.entries)

    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [str(x) for row in self.entries for x in row],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "IntMatrix":
        rows, cols = int(d["rows"]), int(d["cols"])
        flat = [int(s) for s in d["entries"]]
        if len(flat) != rows * cols:
            raise DimensionMismatch("entry count does not match rows*cols")
        data = tuple(tuple(flat[i * cols : (i + 1) * cols]) for i in range(rows))
        return cls(rows, cols, data)

    def __str__(self):
        return "\n".join(" ".join(f"{x:4d}" for x in row) for row in self.entries)


@dataclass(frozen=True)
class HnfResult:
    """Column Hermite normal form ``h`` with unimodular ``u``, ``m @ u == h``."""

    h: IntMatrix
    u: IntMatrix
    pivots: tuple  # (row, col) staircase positions


@dataclass(frozen=True)
class LatticeBasis:
    """Z-linearly independent integer vectors spanning a lattice."""

    ambient_dim: int
    vectors: tuple

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise DimensionMismatch("basis vector of wrong length")

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def combination(self, coeffs: Sequence[int]) -> tuple:
        if len(coeffs) != len(self.vectors):
            raise DimensionMismatch("coefficient count does not match rank")
        out = [0] * self.ambient_dim
        for c, v in zip(coeffs, self.vectors):
            if c:
                for i, x in enumerate(v):
                    out[i] += c * x
        return tuple(out)


def hnf(m: IntMatrix) -> HnfResult:
    """Column-style Hermite normal form.

    Returns ``h`` in lower staircase form with positive pivots, entries to
    the left of each pivot reduced into [0, pivot), zero columns at the
    right, and a unimodular ``u`` with ``m @ u == h``.  Deterministic for
    fixed input.
    """
    r, c = m.rows, m.cols
    h = [list(row) for row in m.entries]
    u = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def col_sub(j, k, q):
        # column j -= q * column k
        if q == 0:
            return
        for i in range(r):
            h[i][j] -= q * h[i][k]
        for i in range(c):
            u[i][j] -= q * u[i][k]

    def col_swap(j, k):
        for i in range(r):
            h[i][j], h[i][k] = h[i][k], h[i][j]
        for i in range(c):
            u[i][j], u[i][k] = u[i][k], u[i][j]

    def col_neg(j):
        for i in range(r):
            h[i][j] = -h[i][j]
        for i in range(c):
            u[i][j] = -u[i][j]

    pivots = []
    pc = 0
    for i in range(r):
        if pc == c:
            break
        nz = [j for j in range(pc, c) if h[i][j] != 0]
        if not nz:
            continue
        while len(nz) > 1:
            j0 = min(nz, key=lambda j: abs(h[i][j]))
            if h[i][j0] < 0:
                col_neg(j0)
            p = h[i][j0]
            for j in nz:
                if j != j0:
                    col_sub(j, j0, h[i][j] // p)
            nz = [j for j in range(pc, c) if h[i][j] != 0]
        j0 = nz[0]
        if j0 != pc:
            col_swap(j0, pc)
        if h[i][pc] < 0:
            col_neg(pc)
        p = h[i][pc]
        for j in range(pc):
            col_sub(j, pc, h[i][j] // p)
        pivots.append((i, pc))
        pc += 1

    return HnfResult(
        IntMatrix.from_rows(h) if r else IntMatrix.zeros(0, c),
        IntMatrix.from_rows(u),
        tuple(pivots),
    )


def determinant(m: IntMatrix) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank_q(m: IntMatrix) -> int:
    """Rank over the rationals (fraction-free elimination)."""
    a = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    rank = 0
    prev = 1
    for col in range(cols):
        piv = None
        for i in range(rank, rows):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pivot = a[rank][col]
        for i in range(rank + 1, rows):
            if any(a[i][j] for j in range(col, cols)):
                for j in range(col + 1, cols):
                    a[i][j] = (pivot * a[i][j] - a[i][col] * a[rank][j]) // prev
                a[i][col] = 0
        prev = pivot
        rank += 1
        if rank == rows:
            break
    return rank


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def rank_mod_p(m: IntMatrix, p: int) -> int:
    """Rank over the field with ``p`` elements."""
    if not is_prime(p):
        raise CompositeModulus(f"{p} is not prime")
    a = [[x % p for x in row] for row in m.entries]
    rows, cols = m.rows, m.cols
    rank = 0
    for col in range(cols):
        piv = None
        for i in range(rank, rows):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], p - 2, p)
        a[rank] = [(x * inv) % p for x in a[rank]]
        for i in range(rows):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def kernel_basis(m: IntMatrix) -> LatticeBasis:
    """Basis of the full integer kernel ker_Z(m).

    Computed from the column HNF: the transform columns matching zero HNF
    columns span the kernel, and because the transform is unimodular the
    resulting lattice is saturated (every integer kernel vector is an
    integer combination of the basis).
    """
    res = hnf(m)
    rank = len(res.pivots)
    vecs = tuple(res.u.column(j) for j in range(rank, m.cols))
    return LatticeBasis(m.cols, vecs)


def invariant_factors(m: IntMatrix) -> tuple:
    """Nonzero Smith invariant factors d1 | d2 | ... of ``m``."""
    a = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    factors = []
    top = 0
    left = 0
    while top < rows and left < cols:
        piv = None
        for i in range(top, rows):
            for j in range(left, cols):
                if a[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        a[top], a[i0] = a[i0], a[top]
        for row in a:
            row[left], row[j0] = row[j0], row[left]
        while True:
            for i in range(top + 1, rows):
                while a[i][left] != 0:
                    q = a[top][left] // a[i][left] if a[i][left] != 0 else 0
                    a[top], a[i] = a[i], [x - q * y for x, y in zip(a[top], a[i])]
            if all(a[i][left] == 0 for i in range(top + 1, rows)):
                for j in range(left + 1, cols):
                    while a[top][j] != 0:
                        q = a[top][left] // a[top][j]
                        for row in a:
                            row[left], row[j] = row[j], row[left] - q * row[j]
                if all(a[top][j] == 0 for j in range(left + 1, cols)):
                    break
        factors.append(abs(a[top][left]))
        top += 1
        left += 1
    # enforce divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(factors) - 1):
            a_, b_ = factors[i], factors[i + 1]
            if b_ % a_ != 0:
                g = gcd(a_, b_)
                factors[i], factors[i + 1] = g, a_ * b_ // g
                changed = True
    return tuple(factors)


def lattice_is_saturated(basis: LatticeBasis) -> bool:
    """True iff the lattice is its own saturation inside Z^ambient.

    A rank-r sublattice is saturated exactly when the Smith invariant
    factors of its basis matrix are all 1.
    """
    if not basis.vectors:
        return True
    m = IntMatrix.from_rows(basis.vectors)
    return all(f == 1 for f in invariant_factors(m))


def lattice_member(basis: LatticeBasis, v: Sequence[int]) -> Optional[tuple]:
    """Integer coefficients expressing ``v`` in the basis, or None.

    The certificate recomputes to ``v`` exactly; callers may re-verify via
    ``basis.combination``.
    """
    if len(v) != basis.ambient_dim:
        raise DimensionMismatch("vector length does not match ambient dimension")
    v = tuple(int(x) for x in v)
    if not basis.vectors:
        return () if all(x == 0 for x in v) else None
    cols = IntMatrix.from_rows(basis.vectors).transpose()
    res = hnf(cols)
    rank = len(res.pivots)
    if rank != len(basis.vectors):
        raise BadParameters("basis vectors are not Z-linearly independent")
    rem = list(v)
    y = [0] * rank
    for idx, (pi, pj) in enumerate(res.pivots):
        p = res.h.entries[pi][pj]
        if rem[pi] % p != 0:
            return None
        y[pj] = rem[pi] // p
        if y[pj]:
            for i in range(basis.ambient_dim):
                rem[i] -= y[pj] * res.h.entries[i][pj]
    if any(rem):
        return None
    coeffs = tuple(
        sum(res.u.entries[i][j] * y[j] for j in range(rank)) for i in range(len(basis.vectors))
    )
    assert basis.combination(coeffs) == v
    return coeffs


def lattices_equal(a: LatticeBasis, b: LatticeBasis) -> bool:
    """Mutual-inclusion test: every generator of each lies in the other."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    return all(lattice_member(b, v) is not None for v in a.vectors) and all(
        lattice_member(a, v) is not None for v in b.vectors
    )


def lattice_from_generators(ambient_dim: int, generators: Iterable[Sequence[int]]) -> LatticeBasis:
    """HNF-reduce a (possibly dependent) generating set to a basis."""
    gens = [tuple(int(x) for x in g) for g in generators]
    for g in gens:
        if len(g) != ambient_dim:
            raise DimensionMismatch("generator of wrong length")
    if not gens:
        return LatticeBasis(ambient_dim, ())
    cols = IntMatrix.from_rows(gens).transpose()
    res = hnf(cols)
    rank = len(res.pivots)
    return LatticeBasis(ambient_dim, tuple(res.h.column(j) for j in range(rank)))


@dataclass(frozen=True)
class MinorScan:
    """Result of a (possibly budget-limited) maximal-minor gcd scan."""

    gcd: int
    complete: bool
    minors_evaluated: int
    nonzero_minors: int


def gcd_maximal_minors(m: IntMatrix, size: int, budget: int) -> MinorScan:
    """Gcd of all nonzero size x size minors, or of a budgeted prefix.

    Row and column subsets are enumerated in colex order, so a partial
    scan is deterministic.  Early exit once the running gcd reaches 1 (no
    further minor can change it); the result is then still marked
    complete.
    """
    if size > min(m.rows, m.cols):
        raise BadParameters("minor size exceeds matrix dimensions")
    total = comb(m.rows, size) * comb(m.cols, size)
    g = 0
    seen = 0
    nonzero = 0
    row_sets = _colex_combinations(m.rows, size)
    for rset in row_sets:
        sub_rows = [m.entries[i] for i in rset]
        for cset in _colex_combinations(m.cols, size):
            if seen >= budget:
                return MinorScan(g, False, seen, nonzero)
            seen += 1
            sub = IntMatrix.from_rows([[row[j] for j in cset] for row in sub_rows])
            d = determinant(sub)
            if d:
                nonzero += 1
                g = gcd(g, abs(d))
                if g == 1:
                    return MinorScan(1, True, seen, nonzero)
    return MinorScan(g, seen == total or g == 1, seen, nonzero)


def _colex_combinations(n: int, k: int):
    # subsets of range(n) ordered by their reversed tuples
    return sorted(combinations(range(n), k), key=lambda s: tuple(reversed(s)))


def solve_rational(a_rows: Sequence[Sequence], b: Sequence) -> Optional[list]:
    """One exact solution of A x = b over Q, or None if inconsistent."""
    rows = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a_rows, b)]
    if len(rows) != len(b):
        raise DimensionMismatch("right-hand side length mismatch")
    ncols = len(rows[0]) - 1 if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][ncols]
    return x
