"""対称関数の補助計算とオラクルのテスト"""
from fractions import Fraction

import sympy as sp

from src.algebra.poly import MPoly, x
from src.algebra.symmetric import (
    a_k,
    complete_homogeneous_at,
    elementary_at,
    q_alphabet,
    q_evaluation_oracle,
    schur_bialternant,
    sympy_to_mpoly,
    z_lambda,
)

q = MPoly.q_power


def X(i: int) -> MPoly:
    return MPoly.var(x(i))


class TestZLambda:
    """z_lambdaのテスト"""

    def test_distinct_parts(self):
        """z_(3,2,1) = 6"""
        assert z_lambda((3, 2, 1)) == 6

    def test_repeated_parts(self):
        """z_(2,1,1) = 2·1²·2! = 4"""
        assert z_lambda((2, 1, 1)) == 4

    def test_empty(self):
        """z_∅ = 1"""
        assert z_lambda(()) == 1


class TestQEvaluation:
    """(1, q², ..., q^{2(n-1)}) での評価のテスト"""

    def test_a_k(self):
        """a_1 = 1 + q² (n=2)"""
        assert a_k(2, 1) == 1 + q(2)

    def test_alphabet(self):
        """n=3 の値の列"""
        assert q_alphabet(3) == [MPoly.one(), q(2), q(4)]

    def test_complete_homogeneous(self):
        """h_2(1, q²) = 1 + q² + q⁴"""
        assert complete_homogeneous_at(2, q_alphabet(2)) == 1 + q(2) + q(4)

    def test_elementary(self):
        """e_2(1, q²) = q²"""
        assert elementary_at(2, q_alphabet(2)) == q(2)

    def test_elementary_beyond_length(self):
        """e_3(1, q²) = 0"""
        assert elementary_at(3, q_alphabet(2)).is_zero()

    def test_oracle_dispatch(self):
        """種別 h / e で切り替わる"""
        assert q_evaluation_oracle("h", 1, 2) == 1 + q(2)
        assert q_evaluation_oracle("e", 2, 2) == q(2)
        assert q_evaluation_oracle("e", 0, 3) == MPoly.one()


class TestSchurBialternant:
    """schur_bialternantのテスト"""

    def test_single_row(self):
        """s_(2)(x1, x2) = x1² + x1x2 + x2²"""
        assert schur_bialternant((2,), [x(1), x(2)]) == X(1) * X(1) + X(1) * X(2) + X(2) * X(2)

    def test_single_column(self):
        """s_(1,1)(x1, x2) = x1x2"""
        assert schur_bialternant((1, 1), [x(1), x(2)]) == X(1) * X(2)

    def test_too_long(self):
        """ℓ(λ) > 変数の個数なら0"""
        assert schur_bialternant((1, 1, 1), [x(1), x(2)]).is_zero()

    def test_empty_partition(self):
        """s_∅ = 1"""
        assert schur_bialternant((), [x(1)]) == MPoly.one()


class TestSympyToMPoly:
    """sympy_to_mpolyのテスト"""

    def test_rational_coefficients(self):
        """有理数係数をそのまま保つ"""
        s = sp.Symbol("x1")
        p = sympy_to_mpoly(sp.Rational(1, 2) * s**2 - 3, [x(1)])
        assert p == (X(1) * X(1)).scale(Fraction(1, 2)) - 3

    def test_constant(self):
        """変数なしの定数"""
        assert sympy_to_mpoly(sp.Integer(7), []) == MPoly.constant(7)
