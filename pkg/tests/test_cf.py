import random
from math import comb, gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cfzeta.cf import (
    CFExpansion,
    ab_coefficients,
    convergents,
    convergents_of_terms,
    e_factorization,
    e_matrix,
    expand,
    monomial_vector,
    n0_n1,
)
from cfzeta.matrix import IntMatrix, matprod
from cfzeta.qfield import gauss_step, surd_new
from corpus import CORPUS, random_surds
from strategies import cf_expansions, unit_surds

GOLDEN = surd_new(-1, 2, 5)
SILVER = surd_new(-1, 1, 2)
HALF_ROOT2 = surd_new(0, 2, 2)


class TestExpansion:
    @pytest.mark.parametrize(
        "x, pre, per",
        [(GOLDEN, (), (1,)), (SILVER, (), (2,)), (HALF_ROOT2, (1,), (2,))],
    )
    def test_examples(self, x, pre, per):
        cf = expand(x)
        assert (cf.preperiod, cf.period) == (pre, per)

    def test_canonicalisation(self):
        assert CFExpansion((), (1, 1)) == CFExpansion((), (1,))
        assert CFExpansion((1, 2), (1, 2)) == CFExpansion((), (1, 2))
        assert CFExpansion((3, 2), (1, 2)) == CFExpansion((3,), (2, 1))
        assert CFExpansion((), (1, 1)).ell == 1

    @pytest.mark.parametrize("bad", [((), ()), ((0,), (1,)), ((), (2, -1))])
    def test_rejects_invalid(self, bad):
        with pytest.raises(ValueError):
            CFExpansion(*bad)

    def test_str(self):
        assert str(CFExpansion((1,), (2,))) == "[1;(2)]"
        assert str(CFExpansion((), (1, 2))) == "[;(1,2)]"

    @given(cf_expansions(max_len=6, max_q=30))
    def test_round_trip_through_surd(self, cf):
        assert expand(cf.to_surd()) == cf

    @given(unit_surds())
    def test_orbit_reproduces_x(self, x):
        cf = expand(x)
        y = x
        for n in range(1, cf.k + 2 * cf.ell + 1):
            a, y = gauss_step(y)
            assert a == cf.term(n)
        assert cf.to_surd() == x

    @given(cf_expansions())
    def test_minimality(self, cf):
        per = cf.period
        for d in range(1, cf.ell):
            if cf.ell % d == 0:
                assert per[:d] * (cf.ell // d) != per
        if cf.k:
            assert cf.preperiod[-1] != cf.period[-1]

    @given(cf_expansions(), st.integers(0, 12))
    def test_shift_matches_terms(self, cf, m):
        assert cf.shift(m).terms(20) == cf.terms(20, start=m + 1)


class TestConvergents:
    def test_fibonacci(self):
        conv = convergents(CFExpansion((), (1,)), 6)
        assert [p for p, _ in conv] == [0, 1, 1, 2, 3, 5]
        assert [q for _, q in conv] == [1, 1, 2, 3, 5, 8]

    def test_pell(self):
        conv = convergents(CFExpansion((), (2,)), 5)
        assert [p for p, _ in conv] == [0, 1, 2, 5, 12]
        assert [q for _, q in conv] == [1, 2, 5, 12, 29]

    def test_half_root_two(self):
        assert [q for _, q in convergents(CFExpansion((1,), (2,)), 5)] == [1, 1, 3, 7, 17]

    def test_needs_positive_count(self):
        with pytest.raises(ValueError):
            convergents(CFExpansion((), (1,)), 0)

    def test_coprime_and_determinant(self):
        for cf in CORPUS:
            conv = convergents(cf, 60)
            for n, (p, q) in enumerate(conv):
                assert gcd(p, q) == 1
                if n:
                    p0, q0 = conv[n - 1]
                    assert p * q0 - p0 * q == (-1) ** (n + 1)

    def test_from_terms(self):
        assert convergents_of_terms([1, 2, 3], 4) == [(0, 1), (1, 1), (2, 3), (7, 10)]


class TestEMatrix:
    def test_level_one(self):
        for a in range(1, 6):
            assert e_matrix(a, 1) == IntMatrix([[0, 1], [1, a]])

    def test_level_two(self):
        assert e_matrix(2, 2) == IntMatrix([[0, 0, 1], [0, 1, 2], [1, 4, 4]])

    @pytest.mark.parametrize("r", range(1, 7))
    def test_bottom_row(self, r):
        a = 3
        assert list(e_matrix(a, r).rows[-1]) == [comb(r, j) * a**j for j in range(r + 1)]

    @pytest.mark.parametrize("r", range(1, 8))
    def test_determinant(self, r):
        # the matrix is (r+1)x(r+1), so the reversal permutation has sign (-1)^(r(r+1)/2)
        for a in (1, 2, 7):
            assert e_matrix(a, r).det() == (-1) ** (r * (r + 1) // 2)

    def test_determinant_level_three_is_plus_one(self):
        assert all(e_matrix(a, 3).det() == 1 for a in range(1, 10))

    @pytest.mark.parametrize("r", range(1, 5))
    def test_transports_monomials(self, r):
        rng = random.Random(r)
        for _ in range(20):
            a, p, q = rng.randint(1, 9), rng.randint(0, 50), rng.randint(1, 50)
            assert e_matrix(a, r) @ monomial_vector(p, q, r) == monomial_vector(q, p + a * q, r)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            e_matrix(0, 1)
        with pytest.raises(ValueError):
            e_matrix(1, 0)


class TestFactorization:
    def test_level_one(self):
        R, U = e_factorization(5, 1)
        assert R == IntMatrix([[0, 1], [1, 0]])
        assert U == IntMatrix([[1, 5], [0, 1]])

    def test_level_two(self):
        assert e_factorization(2, 2)[1] == IntMatrix([[1, 4, 4], [0, 1, 2], [0, 0, 1]])

    @pytest.mark.parametrize("r", range(1, 7))
    def test_structure(self, r):
        for a in (1, 2, 5):
            R, U = e_factorization(a, r)
            assert R @ R == IntMatrix.identity(r + 1)
            assert R @ U == e_matrix(a, r)
            for i in range(r + 1):
                assert U[i, i] == 1
                assert all(U[i, j] == 0 for j in range(i))


class TestN0N1:
    def test_examples(self):
        assert n0_n1(CFExpansion((), (1,)), 1)[1] == IntMatrix([[0, 1], [1, 1]])
        assert n0_n1(CFExpansion((), (2,)), 1)[1] == IntMatrix([[0, 1], [1, 2]])
        N0, N1 = n0_n1(CFExpansion((1,), (2,)), 1)
        assert N0 @ N1 @ N0.inverse() == IntMatrix([[1, 1], [2, 1]])

    def test_unimodular(self):
        for cf in CORPUS:
            for r in (1, 2, 3):
                N0, N1 = n0_n1(cf, r)
                assert abs(N0.det()) == 1 and abs(N1.det()) == 1

    def test_products_of_e_matrices(self):
        rng = random.Random(7)
        for j in range(0, 12):
            prod = matprod([e_matrix(rng.randint(1, 9), 1) for _ in range(j)], 2)
            assert prod.det() == (-1) ** j


class TestABCoefficients:
    def test_m_zero(self):
        cf = CFExpansion((3,), (1, 4))
        for n in range(1, 10):
            c = ab_coefficients(cf, n, 0)
            assert (c.B_m, c.A_m) == (0, 1)
            assert (c.B_m1, c.A_m1) == (1, cf.term(n))

    def test_golden_m_one(self):
        c = ab_coefficients(CFExpansion((), (1,)), 5, 1)
        assert (c.B_m, c.B_m1, c.A_m, c.A_m1) == (1, 1, 1, 2)

    def test_index_range(self):
        cf = CFExpansion((), (1,))
        with pytest.raises(IndexError):
            ab_coefficients(cf, 3, 3)
        with pytest.raises(IndexError):
            ab_coefficients(cf, 3, -1)

    def test_expansion_against_convergents(self):
        for cf in CORPUS:
            conv = convergents(cf, 30)
            p = [c[0] for c in conv]
            q = [c[1] for c in conv]
            for n in range(2, 25):
                for m in range(0, n - 1):
                    c = ab_coefficients(cf, n, m)
                    for seq in (p, q):
                        assert seq[n] == c.A_m1 * seq[n - m - 1] + c.B_m1 * seq[n - m - 2]
                        assert seq[n - 1] == c.A_m * seq[n - m - 1] + c.B_m * seq[n - m - 2]

    def test_recurrence_in_m(self):
        for cf in CORPUS[:20]:
            for n in range(2, 15):
                for m in range(1, n):
                    prev, cur = ab_coefficients(cf, n, m - 1), ab_coefficients(cf, n, m)
                    a = cf.term(n - m)
                    assert cur.B_m == prev.A_m and cur.B_m1 == prev.A_m1
                    assert cur.A_m == prev.B_m + a * prev.A_m
                    assert cur.A_m1 == prev.B_m1 + a * prev.A_m1

    def test_periodic_in_n(self):
        for cf in CORPUS:
            for m in range(0, 4):
                for n in range(cf.k + m + 2, cf.k + m + 12):
                    assert ab_coefficients(cf, n, m) == ab_coefficients(cf, n + cf.ell, m)


class TestShiftIdentities:
    def test_one_step(self):
        for x in random_surds(100, seed=11):
            a, y = gauss_step(x)
            conv, hat = convergents(expand(x), 31), convergents(expand(y), 30)
            for n in range(1, 31):
                assert list(conv[n]) == e_matrix(a, 1) @ list(hat[n - 1])

    @pytest.mark.parametrize("r", range(1, 5))
    def test_symmetric_powers(self, r):
        for x in random_surds(20, seed=100 + r):
            cf = expand(x)
            conv = convergents(cf, 13)
            for m in range(0, 7):
                E = matprod([e_matrix(cf.term(i), r) for i in range(1, m + 1)], r + 1)
                hat = convergents(cf.shift(m), 13)
                for n in range(0, 13 - m):
                    assert monomial_vector(*conv[n + m], r) == E @ monomial_vector(*hat[n], r)
