import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from cfzeta.ratfun import (
    Poly,
    PowerSeries,
    RationalFunction,
    Z,
    mat_mul,
    mat_rf_inverse,
    poly_adjugate_det,
    poly_gcd,
    series_exp,
    series_expand,
)

ONE = RationalFunction(1)
z = RationalFunction(Z)
FIB_DEN = 1 - z - z * z

small_ints = st.integers(-6, 6)
polys = st.lists(small_ints, min_size=1, max_size=5).map(Poly)


@st.composite
def rational_functions(draw, pole_free_at_zero: bool = True):
    num = draw(polys)
    den_coeffs = draw(st.lists(small_ints, min_size=1, max_size=4))
    if pole_free_at_zero:
        den_coeffs[0] = draw(st.integers(1, 5))
    den = Poly(den_coeffs)
    assume(not den.is_zero())
    return RationalFunction(num, den)


def _sym(p: Poly):
    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in p.coeffs])) or [0], x)


class TestArithmetic:
    def test_sum_of_geometric_series(self):
        assert 1 / (1 - z) + 1 / (1 + z) == RationalFunction(2, Poly([1, 0, -1]))

    def test_log_derivative(self):
        f = (1 - z) ** 2
        assert f.log_derivative() == RationalFunction(-2, Poly([1, -1]))

    def test_inverse(self):
        assert (z / FIB_DEN).inverse() == FIB_DEN / z

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(0).inverse()

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(1, 0)

    def test_canonical_form(self):
        f = RationalFunction(Poly([2, -2]), Poly([-4, 0, 4]))
        assert (f.num, f.den) == (Poly([Fraction(-1, 2)]), Poly([1, 1]))
        g = RationalFunction(Poly([Fraction(1, 2)]), Poly([Fraction(1, 3), Fraction(1, 3)]))
        assert g.den.is_integral() and g.den[0] > 0

    def test_rendering(self):
        assert str(FIB_DEN.inverse()) == "1 / (1 - z - z^2)"
        assert str((2 - z) / FIB_DEN) == "(2 - z) / (1 - z - z^2)"
        assert str(RationalFunction(Poly([0, 3]))) == "3 z"

    def test_json_round_trip(self):
        f = RationalFunction(Poly([Fraction(1, 2), 3]), Poly([1, -1, -1]))
        assert RationalFunction.from_json(f.to_json()) == f
        assert f.to_json()["num"] == [[1, 2], 3]

    @given(rational_functions(False))
    def test_canonicalisation_idempotent(self, f):
        g = RationalFunction(f.num, f.den)
        assert g == f and (g.num, g.den) == (f.num, f.den)
        assert poly_gcd(f.num, f.den).degree <= 0 or f.num.is_zero()

    @given(rational_functions(False), rational_functions(False))
    def test_field_laws(self, f, g):
        assert (f + g) - g == f
        if not g.is_zero():
            assert (f * g) / g == f
        assert (f + g).derivative() == f.derivative() + g.derivative()
        assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


class TestGcd:
    @given(polys, polys, polys)
    def test_against_sympy(self, a, b, c):
        assume(not (a * c).is_zero() or not (b * c).is_zero())
        ours = poly_gcd(a * c, b * c)
        ref = sympy.gcd(_sym(a * c), _sym(b * c))
        if ref.is_zero:
            assert ours.is_zero()
            return
        ref_prim = ref.primitive()[1]
        if ref_prim.LC() < 0:
            ref_prim = -ref_prim
        assert _sym(ours) == ref_prim


class TestSeries:
    def test_fibonacci(self):
        assert series_expand(FIB_DEN.inverse(), 5).int_coeffs() == [1, 1, 2, 3, 5, 8]

    def test_lucas(self):
        assert series_expand((2 - z) / FIB_DEN, 5).int_coeffs() == [2, 1, 3, 4, 7, 11]

    def test_half_root_two_denominators(self):
        assert series_expand((1 - z) / (1 - 2 * z - z * z), 4).int_coeffs() == [1, 1, 3, 7, 17]

    def test_pole_at_origin(self):
        with pytest.raises(ZeroDivisionError):
            series_expand(1 / z, 4)

    @given(rational_functions(), rational_functions(), st.integers(0, 20))
    def test_multiplicative(self, f, g, n):
        assert series_expand(f * g, n) == series_expand(f, n) * series_expand(g, n)

    @given(rational_functions(), rational_functions())
    def test_additive(self, f, g):
        assert series_expand(f + g, 15) == series_expand(f, 15) + series_expand(g, 15)

    @given(rational_functions())
    def test_log_derivative_matches_series_log(self, f):
        assume(f.num[0] != 0)
        c = f.num[0] / f.den[0]
        normalised = f / c
        via_rf = series_expand(f.log_derivative(), 29)
        via_series = series_expand(normalised, 30).log().derivative()
        assert via_rf == via_series

    def test_order_propagates_as_minimum(self):
        a = PowerSeries([1, 2, 3], 2)
        b = PowerSeries([1, 1, 1, 1, 1], 4)
        assert (a + b).order == 2 and (a * b).order == 2


class TestExp:
    def test_zero(self):
        assert series_exp(PowerSeries([0], 5)) == PowerSeries([1], 5)

    def test_geometric(self):
        minus_log = PowerSeries([0] + [Fraction(1, n) for n in range(1, 11)], 10)
        assert series_exp(minus_log).int_coeffs() == [1] * 11

    def test_cat_map_zeta(self):
        counts = [1, 5, 16, 45, 121, 320]
        s = PowerSeries([0] + [Fraction(c, n) for n, c in enumerate(counts, 1)], 6)
        assert series_exp(s) == series_expand((1 - z) ** 2 / (1 - 3 * z + z * z), 6)

    def test_nonzero_constant(self):
        with pytest.raises(ValueError):
            series_exp(PowerSeries([1, 1], 3))

    @given(rational_functions())
    def test_exp_inverts_log(self, f):
        assume(f.num[0] != 0)
        s = series_expand(f / (f.num[0] / f.den[0]), 12)
        assert series_exp(s.log()) == s


def _unimodular(seed: int, n: int):
    """Random unimodular polynomial matrix: product of elementary moves."""
    rng = random.Random(seed)
    M = [[Poly([int(i == j)]) for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.sample(range(n), 2)
        c = Poly([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))])
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    return M


class TestMatrices:
    def test_golden_resolvent(self):
        inv = mat_rf_inverse([[1, -z], [-z, 1 - z]])
        assert inv == [[(1 - z) / FIB_DEN, z / FIB_DEN], [z / FIB_DEN, 1 / FIB_DEN]]

    def test_identity(self):
        eye = [[ONE, RationalFunction(0)], [RationalFunction(0), ONE]]
        assert mat_rf_inverse(eye) == eye

    def test_silver_denominator(self):
        inv = mat_rf_inverse([[1, -z], [-z, 1 - 2 * z]])
        assert all(v.den == Poly([1, -2, -1]) for row in inv for v in row if not v.is_zero())

    def test_singular(self):
        with pytest.raises(ZeroDivisionError):
            mat_rf_inverse([[z, z], [1, 1]])

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("seed", range(8))
    def test_round_trip_unimodular(self, n, seed):
        M = _unimodular(seed, n)
        inv = mat_rf_inverse(M)
        prod = mat_mul([[RationalFunction(v) for v in row] for row in M], inv)
        assert prod == [[RationalFunction(int(i == j)) for j in range(n)] for i in range(n)]
        assert poly_adjugate_det(M)[1] in (Poly([1]), Poly([-1]))

    @pytest.mark.parametrize("seed", range(5))
    def test_adjugate_dimension_four_matches_sympy(self, seed):
        rng = random.Random(seed)
        M = [[Poly([rng.randint(-3, 3) for _ in range(3)]) for _ in range(4)] for _ in range(4)]
        _, det = poly_adjugate_det(M)
        ref = sympy.Matrix(4, 4, lambda i, j: _sym(M[i][j]).as_expr()).det()
        assert sympy.expand(_sym(det).as_expr() - ref) == 0
