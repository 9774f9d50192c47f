"""多項式演算のテスト"""
import random
from fractions import Fraction

import pytest

from src.algebra.poly import (
    ArithOp,
    Monomial,
    MPoly,
    Place,
    Q,
    Sign,
    expand_product_factor,
    poly_arith,
    series_truncate,
    specialize,
    w,
    x,
    y,
    z,
)
from src.utils.errors import NegativeExponentError, NonInvertibleSubstitutionError, PolynomialError


def v(var, power=1):
    return MPoly.var(var, power)


q = MPoly.q_power


def _random_poly(rng: random.Random) -> MPoly:
    variables = [x(1), x(2), y(1), w(1)]
    terms = {}
    for _ in range(rng.randint(0, 4)):
        exps = {var: rng.randint(0, 2) for var in rng.sample(variables, 2)}
        exps[Q] = rng.randint(-2, 2)
        terms[Monomial(exps)] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return MPoly(terms)


class TestMonomial:
    """Monomialのテスト"""

    def test_zero_exponents_are_dropped(self):
        """指数0の変数は保持しない"""
        m = Monomial({x(1): 0, y(1): 2})
        assert m.exps == ((y(1), 2),)

    def test_negative_q_exponent_allowed(self):
        """qだけは負の指数を許す"""
        m = Monomial({Q: -3})
        assert m.exponent(Q) == -3
        assert m.nonq_degree == 0

    def test_negative_exponent_rejected(self):
        """q以外の負の指数はエラー"""
        with pytest.raises(NegativeExponentError):
            Monomial({x(1): -1})

    def test_canonical_order(self):
        """q, X, Y, W, Z の順に並ぶ"""
        m = Monomial({z(1): 1, Q: 2, w(2): 1, x(3): 1, y(1): 1})
        assert [var.name for var in m.variables()] == ["q", "x3", "y1", "w2", "z1"]


class TestPolyArith:
    """poly_arithのテスト"""

    def test_additive_inverse(self):
        """(x1 + q) + (-q) = x1"""
        assert poly_arith(ArithOp.ADD, v(x(1)) + q(1), -q(1)) == v(x(1))

    def test_difference_of_squares(self):
        """(1 - q²x1)(1 + q²x1) = 1 - q⁴x1²"""
        a = 1 - q(2) * v(x(1))
        b = 1 + q(2) * v(x(1))
        assert poly_arith("mul", a, b) == 1 - q(4) * v(x(1), 2)

    def test_laurent_shift(self):
        """q⁻¹(q³ + q) = q² + 1"""
        assert poly_arith(ArithOp.MUL, q(-1), q(3) + q(1)) == q(2) + 1

    def test_negation(self):
        """neg は符号を反転する"""
        assert poly_arith(ArithOp.NEG, v(x(1)) - 2) == 2 - v(x(1))

    def test_scalar_mul_with_fraction(self):
        """有理数倍は厳密"""
        p = poly_arith(ArithOp.SCALAR_MUL, v(x(1)), Fraction(1, 3))
        assert p.coefficient({x(1): 1}) == Fraction(1, 3)

    def test_scalar_mul_rejects_non_constant(self):
        """scalar_mul の右辺が定数でなければエラー"""
        with pytest.raises(PolynomialError):
            poly_arith(ArithOp.SCALAR_MUL, v(x(1)), v(y(1)))

    def test_binary_op_requires_right_operand(self):
        """二項演算に右辺がなければエラー"""
        with pytest.raises(PolynomialError):
            poly_arith(ArithOp.ADD, v(x(1)))

    def test_no_zero_coefficients_stored(self):
        """打ち消し合った項は残らない"""
        p = (v(x(1)) + v(y(1))) - v(y(1))
        assert len(p) == 1

    def test_ring_axioms_on_random_triples(self):
        """結合法則・交換法則・分配法則"""
        rng = random.Random(20240611)
        for _ in range(300):
            a, b, c = (_random_poly(rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c


class TestSeriesTruncate:
    """series_truncateのテスト"""

    def test_drops_above_bound(self):
        """次数が上限を超える項を落とす"""
        p = 1 + v(x(1)) + v(x(1), 2)
        assert series_truncate(p, 1) == 1 + v(x(1))

    def test_keeps_term_at_bound_regardless_of_q(self):
        """qの次数は数えない"""
        p = q(5) * v(x(1)) * v(w(1))
        assert series_truncate(p, 2) == p

    def test_above_bound_is_zero(self):
        """全ての項が上限を超えれば0"""
        assert series_truncate(v(x(1)) * v(y(1)) * v(z(1)), 2).is_zero()

    def test_negative_bound_rejected(self):
        """負の上限はエラー"""
        with pytest.raises(PolynomialError):
            series_truncate(v(x(1)), -1)

    def test_truncation_commutes_with_product(self):
        """trunc(ab) = trunc(trunc(a)·trunc(b))"""
        rng = random.Random(7)
        for _ in range(100):
            a, b = _random_poly(rng), _random_poly(rng)
            for bound in range(4):
                lhs = series_truncate(a * b, bound)
                rhs = series_truncate(series_truncate(a, bound) * series_truncate(b, bound), bound)
                assert lhs == rhs


class TestExpandProductFactor:
    """expand_product_factorのテスト"""

    def test_geometric_series(self):
        """1/(1 - xw) = 1 + xw + x²w² (bound=2)"""
        p = expand_product_factor(Sign.MINUS, Place.DENOMINATOR, x(1), w(1), 1, 2)
        xw = v(x(1)) * v(w(1))
        assert p == 1 + xw + xw * xw

    def test_numerator_two_factors(self):
        """(1 + xy)(1 + q²xy) = 1 + (1+q²)xy + q²x²y²"""
        p = expand_product_factor("plus", "numerator", x(1), y(1), 2, 2)
        xy = v(x(1)) * v(y(1))
        assert p == 1 + (1 + q(2)) * xy + q(2) * xy * xy

    def test_denominator_inverts_numerator(self):
        """分母の展開と分子の積は打ち切ると1"""
        for n in (1, 2, 3):
            for bound in (0, 1, 3):
                num = expand_product_factor(Sign.MINUS, Place.NUMERATOR, x(1), z(1), n, bound)
                den = expand_product_factor(Sign.MINUS, Place.DENOMINATOR, x(1), z(1), n, bound)
                assert series_truncate(num * den, 2 * bound) == MPoly.one()

    def test_same_variable_rejected(self):
        """u = v はエラー"""
        with pytest.raises(PolynomialError):
            expand_product_factor(Sign.PLUS, Place.NUMERATOR, x(1), x(1), 1, 1)

    def test_negative_bound_rejected(self):
        """負の上限はエラー"""
        with pytest.raises(PolynomialError):
            expand_product_factor(Sign.PLUS, Place.NUMERATOR, x(1), y(1), 1, -1)


class TestSpecialize:
    """specializeのテスト"""

    def test_substitute_zero(self):
        """x1 → 0 で q²x1 は0"""
        assert specialize(q(2) * v(x(1)), {x(1): 0}).is_zero()

    def test_invert_q(self):
        """q → q⁻¹ で q² + q⁻² は不変"""
        p = q(2) + q(-2)
        assert specialize(p, {Q: q(-1)}) == p

    def test_simultaneous_swap(self):
        """x1 ↔ x2 は同時に代入される"""
        p = v(x(1), 2) * v(x(2))
        assert specialize(p, {x(1): v(x(2)), x(2): v(x(1))}) == v(x(2), 2) * v(x(1))

    def test_unassigned_variables_kept(self):
        """代入しない変数はそのまま"""
        p = v(x(1)) * v(y(1))
        assert specialize(p, {x(1): 3}) == 3 * v(y(1))

    def test_negative_power_needs_monomial(self):
        """q⁻¹ に単項式でない多項式は代入できない"""
        with pytest.raises(NonInvertibleSubstitutionError):
            specialize(q(-1), {Q: 1 + v(x(1))})


class TestSerialization:
    """JSON直列化のテスト"""

    def test_round_trip(self):
        """to_json → from_json で元に戻る"""
        p = Fraction(3, 4) * q(-1) * v(x(1)) - v(y(2), 3) + 5
        assert MPoly.from_json(p.to_json()) == p

    def test_canonical_json_is_order_independent(self):
        """項の追加順によらず同じバイト列"""
        a = v(x(1)) + v(y(1)) + q(2)
        b = q(2) + v(y(1)) + v(x(1))
        assert a.canonical_json() == b.canonical_json()

    def test_coefficient_as_fraction_string(self):
        """係数は "p/q" 形式"""
        p = MPoly.constant(Fraction(-2, 6))
        assert p.to_json() == [{"coeff": "-1/3", "exps": []}]

    def test_str(self):
        """表示は正準順"""
        assert str(v(x(1)) - q(1)) == "-q + x1"
