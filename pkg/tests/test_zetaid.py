import json

import pytest

from cfzeta import zetaid
from cfzeta.cf import CFExpansion, convergents, e_matrix, n0_n1
from cfzeta.matrix import IntMatrix
from cfzeta.ratfun import Poly, PowerSeries, RationalFunction, Z, mat_trace, series_expand
from cfzeta.torus import fix_count, from_quadratic
from cfzeta.zetaid import (
    SingularVError,
    det_v,
    det_v_formula,
    main_identity_check,
    pair_series_decomposition_check,
    period_traces,
    trace_w_series,
    uvxy,
    w_direct,
    w_from_uvxy,
    zeta_side,
)
from corpus import CORPUS

z = RationalFunction(Z)
ONE, ZERO = RationalFunction(1), RationalFunction(0)
FIB_DEN = 1 - z - z * z
GOLDEN_CF = CFExpansion((), (1,))
SILVER_CF = CFExpansion((), (2,))
HALF_ROOT2_CF = CFExpansion((1,), (2,))
PERIOD_12 = CFExpansion((), (1, 2))


def _const(m: IntMatrix, power: int = 0):
    return [[RationalFunction(Poly.monomial(power, m[i, j])) for j in range(2)] for i in range(2)]


class TestUVXY:
    def test_golden(self):
        U, V, X, Y = uvxy(GOLDEN_CF)
        assert U == [[ONE, ZERO], [ZERO, ONE]]
        assert Y == [[ZERO, ZERO], [ZERO, ZERO]]
        assert V == _const(IntMatrix([[0, 1], [1, 1]]))
        assert X == [[z / FIB_DEN, 1 / FIB_DEN], [1 / FIB_DEN, (1 + z) / FIB_DEN]]

    def test_half_root_two(self):
        U, _, _, Y = uvxy(HALF_ROOT2_CF)
        E1 = IntMatrix([[0, 1], [1, 1]])
        assert U == _const(E1, 1)
        assert Y == _const(E1)

    def test_v_at_zero(self):
        for cf in CORPUS:
            V = uvxy(cf)[1]
            E = e_matrix(cf.term(cf.k + 1), 1)
            assert [[V[i][j].num[0] for j in range(2)] for i in range(2)] == E.tolist()

    def test_x_matches_convergents(self):
        for cf in CORPUS[:15]:
            X = uvxy(cf)[2]
            conv = convergents(cf, 42)
            for i in range(2):
                for j in range(2):
                    assert series_expand(X[i][j], 40).int_coeffs() == [conv[n + j][i] for n in range(41)]

    def test_rejects_small_order(self):
        with pytest.raises(ValueError):
            uvxy(PERIOD_12, 7)


class TestW:
    def test_golden(self):
        assert w_direct(GOLDEN_CF) == [[(1 - z) / FIB_DEN, z / FIB_DEN], [z / FIB_DEN, 1 / FIB_DEN]]

    def test_golden_trace_is_lucas(self):
        tr = mat_trace(w_direct(GOLDEN_CF))
        assert tr == (2 - z) / FIB_DEN
        assert series_expand(tr, 5).int_coeffs() == [2, 1, 3, 4, 7, 11]

    def test_silver_denominator(self):
        assert all(f.den == Poly([1, -2, -1]) for row in w_direct(SILVER_CF) for f in row if not f.is_zero())

    def test_matches_power_sum(self):
        for cf in CORPUS[:20]:
            N1, ell = n0_n1(cf, 1)[1], cf.ell
            sums = [[[0] * 41 for _ in range(2)] for _ in range(2)]
            power = IntMatrix.identity(2)
            for n in range(0, 40 // ell + 1):
                for i in range(2):
                    for j in range(2):
                        sums[i][j][n * ell] = power[i, j]
                power = power @ N1
            W = w_direct(cf)
            for i in range(2):
                for j in range(2):
                    assert series_expand(W[i][j], 40) == PowerSeries(sums[i][j], 40)

    @pytest.mark.parametrize("cf", [GOLDEN_CF, HALF_ROOT2_CF, PERIOD_12])
    def test_from_uvxy_examples(self, cf):
        assert w_from_uvxy(cf) == w_direct(cf)

    def test_from_uvxy_corpus(self):
        for cf in CORPUS:
            assert w_from_uvxy(cf) == w_direct(cf)

    def test_singular_v_is_reported(self, monkeypatch):
        monkeypatch.setattr(zetaid, "det_v", lambda cf: Poly())
        with pytest.raises(SingularVError) as info:
            w_from_uvxy(GOLDEN_CF)
        assert info.value.witness == Poly()


class TestDetV:
    def test_golden(self):
        assert det_v(GOLDEN_CF) == Poly([-1])
        assert det_v_formula(GOLDEN_CF) == Poly([-1])

    def test_period_12(self):
        assert det_v(PERIOD_12) == Poly([-1, -2, 1])
        assert det_v_formula(PERIOD_12) == det_v(PERIOD_12)

    def test_formula_on_corpus(self):
        for cf in CORPUS:
            dv = det_v(cf)
            assert dv == det_v_formula(cf)
            assert dv.degree <= 2 * cf.ell - 2
            assert not dv.is_zero()

    def test_leading_term_for_period_one(self):
        for a in range(1, 8):
            cf = CFExpansion((3,), (a,))
            (p0, q0), (p1, q1) = convergents(cf.shift(1), 2)
            assert det_v(cf) == Poly([p0 * q1 - p1 * q0])


class TestMainIdentity:
    def test_golden(self):
        rep = main_identity_check(GOLDEN_CF)
        assert rep.equal_exact and rep.witness is None
        assert rep.lhs == rep.rhs == (2 - z) / FIB_DEN

    def test_half_root_two(self):
        rep = main_identity_check(HALF_ROOT2_CF, 50)
        assert rep.equal_exact and rep.series_checked_to == 50

    def test_period_12(self):
        assert main_identity_check(PERIOD_12).equal_exact

    def test_corpus(self):
        for cf in CORPUS:
            assert main_identity_check(cf).equal_exact

    @pytest.mark.parametrize("period", [(1,), (1, 2), (1, 2, 3), (2, 1, 1, 3)])
    @pytest.mark.parametrize("pre", [(), (4,), (2, 5)])
    def test_parity_table(self, pre, period):
        cf = CFExpansion(pre, period)
        ell = cf.ell
        rep = main_identity_check(cf)
        assert rep.equal_exact
        # replacing (-z)^l by z^l in the correction only survives for even l
        v, w = RationalFunction(Poly.monomial(ell, (-1) ** ell)), RationalFunction(Poly.monomial(ell))
        naive = zeta_side(cf) - v / (1 - v) + w / (1 - w)
        assert (naive == rep.rhs) == (ell % 2 == 0)

    def test_json(self):
        js = main_identity_check(GOLDEN_CF).to_json()
        assert js["lhs_text"] == js["rhs_text"] == "(2 - z) / (1 - z - z^2)"
        assert json.loads(json.dumps(js)) == js

    def test_rejects_small_order(self):
        with pytest.raises(ValueError):
            main_identity_check(GOLDEN_CF, 9)


class TestTraces:
    def test_trace_series_support(self):
        for cf in CORPUS:
            coeffs = trace_w_series(cf, 40)
            traces = period_traces(cf, 40 // cf.ell)
            for n in range(1, 41):
                expected = traces[n // cf.ell - 1][0] if n % cf.ell == 0 else 0
                assert coeffs[n] == expected
            assert coeffs[0] == 2

    def test_literal_trace_bound_fails_for_golden(self):
        # tr N1 = 1 with det -1: the bound |tr| > 2 does not hold as stated
        assert period_traces(GOLDEN_CF, 1) == [(1, -1)]
        assert period_traces(SILVER_CF, 1) == [(2, -1)]

    def test_hyperbolic_trace_bound(self):
        for cf in CORPUS:
            for tr, det in period_traces(cf, 30):
                assert tr > (2 if det == 1 else 0)

    def test_fixed_point_bookkeeping(self):
        for cf in CORPUS:
            f = from_quadratic(cf)
            for n, (tr, det) in enumerate(period_traces(cf, 12), 1):
                assert tr == fix_count(f, n) + 1 + det


class TestPairSeries:
    def test_decomposition(self):
        for cf in CORPUS[:25]:
            for m in range(0, cf.k + cf.ell + 1):
                assert pair_series_decomposition_check(cf, m, 40)
