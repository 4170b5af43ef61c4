"""Subset-incidence matrices and incidence complexes.

The matrix for parameters (n, k, t) has one row per t-subset and one
column per k-subset of [1..n], both in colex order, with a 1 exactly when
the row subset is contained in the column subset.  Its columns span the
cone whose toric ideal the rest of the package studies.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from . import exactmath
from .combinat import subsets_colex
from .errors import BadParameters, DimensionTooSmall, NotPure
from .exactmath import IntMatrix


@dataclass(frozen=True)
class IncidenceMatrix:
    n: int
    k: int
    t: int
    matrix: IntMatrix
    row_labels: tuple  # t-subsets, colex order
    col_labels: tuple  # k-subsets, colex order


def build_matrix(n: int, k: int, t: int, *, allow_identity: bool = False) -> IncidenceMatrix:
    """Containment matrix of t-subsets inside k-subsets of [1..n].

    ``t == k`` gives the identity matrix and is almost always a caller
    error; it is rejected unless ``allow_identity`` is set.
    """
    if not (1 <= t <= k <= n):
        raise BadParameters(f"need 1 <= t < k <= n, got (n,k,t)=({n},{k},{t})")
    if t == k and not allow_identity:
        raise BadParameters("t == k yields the identity matrix; pass allow_identity=True")
    row_labels = tuple(subsets_colex(n, t))
    col_labels = tuple(subsets_colex(n, k))
    col_sets = [frozenset(c) for c in col_labels]
    rows = []
    for r in row_labels:
        rset = frozenset(r)
        rows.append(tuple(1 if rset <= cs else 0 for cs in col_sets))
    m = IntMatrix(len(row_labels), len(col_labels), tuple(rows))
    return IncidenceMatrix(n, k, t, m, row_labels, col_labels)


def kernel_rank(n: int, k: int, t: int) -> int:
    return max(0, comb(n, k) - comb(n, t))


@dataclass(frozen=True)
class LabeledComplex:
    """A simplicial complex whose vertices carry subset labels."""

    complex: object  # complexes.SimplicialComplex
    vertex_labels: tuple


def incidence_complex(delta, t: int, k: int) -> LabeledComplex:
    """Incidence complex of a pure complex: vertices are its t-dimensional
    faces, one facet per k-dimensional face (the set of t-faces it holds).
    """
    from .complexes import SimplicialComplex

    dims = {len(f) - 1 for f in delta.facets}
    if len(dims) != 1:
        raise NotPure("incidence complex needs a pure complex")
    dim = dims.pop()
    if not 0 <= t < k:
        raise BadParameters("need 0 <= t < k")
    if dim < k:
        raise DimensionTooSmall(f"complex dimension {dim} < k = {k}")

    t_faces = sorted(delta.faces_of_dim(t), key=lambda f: tuple(reversed(sorted(f))))
    index = {f: i + 1 for i, f in enumerate(t_faces)}
    facets = []
    for kf in sorted(delta.faces_of_dim(k), key=lambda f: tuple(reversed(sorted(f)))):
        members = frozenset(index[sub] for sub in _subfaces(kf, t))
        facets.append(members)
    cx = SimplicialComplex.from_facets(len(t_faces), facets)
    return LabeledComplex(cx, tuple(tuple(sorted(f)) for f in t_faces))


def _subfaces(face: frozenset, t: int):
    from itertools import combinations

    for sub in combinations(sorted(face), t + 1):
        yield frozenset(sub)


@dataclass(frozen=True)
class RankLawEntry:
    n: int
    k: int
    t: int
    rank_over_q: int
    expected_rank: int
    rank_law_ok: bool
    mod_p: tuple  # (p, matrix_rank, map_full_rank, predicted_full, ok) per prime


@dataclass(frozen=True)
class RankLawReport:
    entries: tuple
    all_ok: bool
    primes: tuple


def full_rank_prime_threshold(n: int, k: int, t: int) -> int:
    """Primes above this threshold keep the multiplication map full rank."""
    return min(k, n - t)


def check_rank_laws(n_max: int = 8, primes: Optional[tuple] = None) -> RankLawReport:
    """Verify the rank laws for all 1 <= t < k <= n <= n_max.

    Over Q the matrix rank must equal min(C(n,t), C(n,k)).  Over a prime
    field the object governed by the law is the multiplication map
    x -> x * (x_1+...+x_n)^(k-t) on the squarefree quotient, whose matrix
    is (k-t)! times the incidence matrix; it has full rank iff
    p > min(k, n-t).  For p <= k-t the factorial kills the map even when
    the bare 0/1 matrix keeps full rank mod p (e.g. (n,k,t)=(4,3,1),
    p=2), so both ranks are reported.
    """
    if primes is None:
        primes = (2, 3, 5, 7, 11, 13)
    entries = []
    ok_all = True
    for n in range(2, n_max + 1):
        for k in range(2, n + 1):
            for t in range(1, k):
                inc = build_matrix(n, k, t)
                full = min(comb(n, t), comb(n, k))
                rq = exactmath.rank_q(inc.matrix)
                law_q = rq == full
                per_p = []
                for p in primes:
                    rp = exactmath.rank_mod_p(inc.matrix, p)
                    factorial_vanishes = p <= k - t
                    map_full = (not factorial_vanishes) and rp == full
                    predicted = p > full_rank_prime_threshold(n, k, t)
                    ok = map_full == predicted
                    per_p.append((p, rp, map_full, predicted, ok))
                    ok_all = ok_all and ok
                ok_all = ok_all and law_q
                entries.append(
                    RankLawEntry(n, k, t, rq, full, law_q, tuple(per_p))
                )
    return RankLawReport(tuple(entries), ok_all, tuple(primes))
