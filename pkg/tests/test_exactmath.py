"""Exact linear algebra: normal forms, kernels, ranks, minors."""

import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from incitoric import exactmath as em
from incitoric.errors import CompositeModulus, DimensionMismatch
from incitoric.exactmath import IntMatrix
from incitoric.incidence import build_matrix


def small_matrices():
    return st.integers(1, 4).flatmap(
        lambda r: st.integers(1, 4).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            )
        )
    ).map(IntMatrix.from_rows)


def rank_fraction_oracle(m: IntMatrix) -> int:
    rows = [[Fraction(x) for x in row] for row in m.entries]
    rank = 0
    for col in range(m.cols):
        piv = next((i for i in range(rank, m.rows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col]
        rows[rank] = [x / inv for x in rows[rank]]
        for i in range(m.rows):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def det_permanent_oracle(m: IntMatrix) -> int:
    from itertools import permutations

    n = m.rows
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = [False] * n
        # sign from cycle count
        cycles = 0
        for i in range(n):
            if not seen[i]:
                cycles += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
        sign = -1 if (n - cycles) % 2 else 1
        prod = 1
        for i in range(n):
            prod *= m.entries[i][perm[i]]
        total += sign * prod
    return total


class TestHnf:
    def test_identity(self):
        m = IntMatrix.identity(3)
        res = em.hnf(m)
        assert res.h == m
        assert res.u == m

    def test_two_by_two_pivots(self):
        m = IntMatrix.from_rows([[2, 4], [0, 3]])
        res = em.hnf(m)
        assert [res.h.entries[i][j] for (i, j) in res.pivots] == [2, 3]
        assert abs(em.determinant(res.h)) == 6
        assert m.mat_mul(res.u) == res.h

    def test_incidence_432_rank_four(self):
        inc = build_matrix(4, 3, 2)
        res = em.hnf(inc.matrix)
        assert len(res.pivots) == 4

    @settings(max_examples=150, deadline=None)
    @given(small_matrices())
    def test_hnf_canonical_form(self, m):
        res = em.hnf(m)
        assert m.mat_mul(res.u) == res.h
        assert em.determinant(res.u) in (1, -1)
        # staircase: pivot rows strictly increase, pivots positive, all
        # entries above a pivot vanish, entries left of a pivot reduced
        prev_row = -1
        for (i, j) in res.pivots:
            assert i > prev_row
            prev_row = i
            p = res.h.entries[i][j]
            assert p > 0
            for i2 in range(i):
                assert res.h.entries[i2][j] == 0
            for j2 in range(j):
                assert 0 <= res.h.entries[i][j2] < p
        rank = len(res.pivots)
        for j in range(rank, m.cols):
            assert all(res.h.entries[i][j] == 0 for i in range(m.rows))


class TestKernel:
    def test_432_trivial(self):
        inc = build_matrix(4, 3, 2)
        assert em.kernel_basis(inc.matrix).rank == 0

    def test_632_rank_five(self):
        inc = build_matrix(6, 3, 2)
        kb = em.kernel_basis(inc.matrix)
        assert kb.rank == 5
        for v in kb.vectors:
            assert not any(inc.matrix.mat_vec(v))
        assert em.lattice_is_saturated(kb)

    def test_zero_matrix(self):
        kb = em.kernel_basis(IntMatrix.zeros(1, 3))
        assert kb.rank == 3

    @settings(max_examples=60, deadline=None)
    @given(small_matrices())
    def test_kernel_sound_and_saturated(self, m):
        kb = em.kernel_basis(m)
        for v in kb.vectors:
            assert not any(m.mat_vec(v))
        assert em.lattice_is_saturated(kb)

    def test_kernel_complete_against_box(self):
        rng = random.Random(5)
        for _ in range(40):
            rows = rng.randint(1, 3)
            cols = rng.randint(1, 4)
            m = IntMatrix.from_rows(
                [[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)]
            )
            kb = em.kernel_basis(m)
            for v in product(range(-3, 4), repeat=cols):
                if any(m.mat_vec(v)):
                    continue
                assert em.lattice_member(kb, v) is not None


class TestRanks:
    def test_632_over_q(self):
        inc = build_matrix(6, 3, 2)
        assert em.rank_q(inc.matrix) == 15

    def test_632_mod_primes(self):
        inc = build_matrix(6, 3, 2)
        assert em.rank_mod_p(inc.matrix, 5) == 15
        # frozen regression value for the singular prime
        assert em.rank_mod_p(inc.matrix, 2) == 10
        assert em.rank_mod_p(inc.matrix, 3) == 14

    def test_composite_modulus(self):
        with pytest.raises(CompositeModulus):
            em.rank_mod_p(IntMatrix.identity(2), 6)

    @settings(max_examples=120, deadline=None)
    @given(small_matrices())
    def test_rank_matches_fraction_oracle(self, m):
        assert em.rank_q(m) == rank_fraction_oracle(m)

    @settings(max_examples=80, deadline=None)
    @given(small_matrices())
    def test_rank_mod_p_at_most_rational(self, m):
        rq = em.rank_q(m)
        for p in (2, 3, 5, 7):
            assert em.rank_mod_p(m, p) <= rq

    def test_determinant_against_permutation_oracle(self):
        rng = random.Random(9)
        for _ in range(30):
            n = rng.randint(1, 4)
            m = IntMatrix.from_rows(
                [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            )
            assert em.determinant(m) == det_permanent_oracle(m)


class TestLatticeMember:
    def test_zero_vector(self):
        kb = em.kernel_basis(build_matrix(6, 3, 2).matrix)
        assert em.lattice_member(kb, (0,) * 20) == (0,) * 5

    def test_constructed_combination(self):
        basis = em.LatticeBasis(3, ((1, 0, 2), (0, 1, -1), (0, 0, 3)))
        v = basis.combination((1, 2, 0))
        assert em.lattice_member(basis, v) == (1, 2, 0)

    def test_triangle_generator_membership(self):
        inc = build_matrix(5, 3, 2)
        cols = em.lattice_from_generators(
            10, [inc.matrix.column(j) for j in range(inc.matrix.cols)]
        )
        c123 = inc.matrix.column(0)
        assert em.lattice_member(cols, c123) is not None

    def test_dimension_mismatch(self):
        basis = em.LatticeBasis(3, ((1, 0, 0),))
        with pytest.raises(DimensionMismatch):
            em.lattice_member(basis, (1, 0))

    def test_non_member(self):
        basis = em.LatticeBasis(2, ((2, 0),))
        assert em.lattice_member(basis, (1, 0)) is None
        assert em.lattice_member(basis, (0, 1)) is None


class TestMinors:
    def test_identity(self):
        scan = em.gcd_maximal_minors(IntMatrix.identity(3), 3, 10)
        assert scan.gcd == 1 and scan.complete

    def test_432_full_enumeration(self):
        inc = build_matrix(4, 3, 2)
        scan = em.gcd_maximal_minors(inc.matrix, 4, 100)
        # frozen after full enumeration of all C(6,4) minors
        assert scan == em.MinorScan(2, True, scan.minors_evaluated, 12)

    def test_budget_flag(self):
        inc = build_matrix(6, 3, 2)
        scan = em.gcd_maximal_minors(inc.matrix, 15, 50)
        assert not scan.complete
        assert scan.gcd % 6 == 0

    def test_632_divisibility_iff_rank_drop(self):
        # independent oracle: determinants mod p of every maximal column
        # subset, against the rank computation
        inc = build_matrix(6, 3, 2)
        m = inc.matrix
        from itertools import combinations

        def det_mod(rows, p):
            a = [row[:] for row in rows]
            n = len(a)
            det = 1
            for c in range(n):
                piv = next((i for i in range(c, n) if a[i][c] % p), None)
                if piv is None:
                    return 0
                if piv != c:
                    a[c], a[piv] = a[piv], a[c]
                    det = -det
                det = (det * a[c][c]) % p
                inv = pow(a[c][c], p - 2, p)
                for i in range(c + 1, n):
                    f = (a[i][c] * inv) % p
                    if f:
                        a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
            return det % p

        for p in (2, 3):
            assert em.rank_mod_p(m, p) < 15
            for cols in combinations(range(20), 15):
                rows = [[row[j] for j in cols] for row in m.entries]
                assert det_mod(rows, p) == 0
        # for p = 5 the rank is full, and a sampled gcd already rules out
        # divisibility of the full gcd
        assert em.rank_mod_p(m, 5) == 15
        scan = em.gcd_maximal_minors(m, 15, 2000)
        assert scan.gcd % 5 != 0
