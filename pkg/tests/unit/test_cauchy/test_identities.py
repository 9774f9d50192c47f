"""Cauchy 型恒等式のテスト"""
import pytest

from src.algebra.poly import MPoly, w, x, y, z
from src.cauchy.identities import (
    CauchySpec,
    DualMode,
    cauchy_product,
    conjugate_order,
    conjugate_polynomial_identity,
    dual_llt_product,
    verify_cauchy,
    verify_dual_cauchy,
    verify_general_cauchy,
)
from src.combinatorics.shapes import Partition, SkewShape
from src.combinatorics.tableaux import AlphabetOrder, LetterKind
from src.utils.errors import ShapeError

q = MPoly.q_power
X, Y, W, Z = (MPoly.var(v(1)) for v in (x, y, w, z))


class TestCauchySpec:
    """CauchySpecのテスト"""

    def test_core_must_be_core(self):
        """δ が n-コアでなければエラー"""
        with pytest.raises(ShapeError):
            CauchySpec(n=2, core=Partition.of(2))

    def test_negative_degree(self):
        """打ち切り次数は0以上"""
        with pytest.raises(ValueError):
            CauchySpec(n=2, degree=-1)

    def test_orders(self):
        """W/Z の文字は W, Z 族の変数"""
        spec = CauchySpec(n=2, nw=1, nz=1)
        assert spec.wz_order().variables() == (w(1), z(1))
        assert spec.to_json()["D"] == 4


class TestCauchyProduct:
    """cauchy_productのテスト"""

    def test_degree_two(self):
        """n=2 の2次の項は (1+q²)(x-y)(w-z)"""
        product_side = cauchy_product(CauchySpec(n=2, degree=2))
        assert product_side == MPoly.one() + (MPoly.one() + q(2)) * (X - Y) * (W - Z)

    def test_dual_llt_product(self):
        """n=2 で (1+xy)(1+q²xy)"""
        assert dual_llt_product(CauchySpec(n=2)) == (MPoly.one() + X * Y) * (MPoly.one() + q(2) * X * Y)


class TestVerifyCauchy:
    """verify_cauchyのテスト"""

    def test_n2_degree_two(self):
        """n=2, D=2"""
        report = verify_cauchy(CauchySpec(n=2, degree=2))
        assert report.passed, report.to_json()
        assert set(report.terms) == {Partition(), Partition.of(2), Partition.of(1, 1)}

    def test_n1_schur_route(self):
        """n=1 はシューア多項式による独立計算とも一致する"""
        spec = CauchySpec(n=1, nx=2, ny=0, nw=2, nz=0, degree=4)
        assert verify_cauchy(spec, route="schur").passed
        assert verify_cauchy(spec).passed

    def test_schur_route_requires_n1(self):
        """route=schur は n=1 かつ Y, Z が空のときのみ"""
        with pytest.raises(ValueError):
            verify_cauchy(CauchySpec(n=2), route="schur")

    @pytest.mark.slow
    @pytest.mark.parametrize("core", [Partition(), Partition.of(1)])
    def test_n2_degree_four(self, core):
        """n=2, D=4 を2つのコアで"""
        assert verify_cauchy(CauchySpec(n=2, core=core, degree=4)).passed


class TestDualCauchy:
    """verify_dual_cauchyのテスト"""

    @pytest.mark.parametrize("n", [1, 2])
    def test_llt_single_variables(self, n):
        """1変数ずつなら ∏_t (1 + q^{2t}xy)"""
        report = verify_dual_cauchy(CauchySpec(n=n, nx=1, ny=1), DualMode.LLT)
        assert report.passed, report.to_json()

    @pytest.mark.slow
    def test_llt_two_variables(self):
        """n=2, X 2変数"""
        assert verify_dual_cauchy(CauchySpec(n=2, nx=2, ny=1), "llt").passed

    @pytest.mark.slow
    def test_super(self):
        """共役と q^{-1} を使う形"""
        assert verify_dual_cauchy(CauchySpec(n=2, degree=4), "super").passed


class TestGeneralCauchy:
    """verify_general_cauchyのテスト"""

    def test_empty_boundaries_reduce_to_cauchy(self):
        """μ = ν = ∅ なら通常の Cauchy 恒等式"""
        report = verify_general_cauchy(Partition(), Partition(), CauchySpec(n=2, degree=2))
        assert report.passed
        assert report.spec["mu"] == []

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "mu,nu",
        [(Partition.of(1), Partition.of(1)), (Partition.of(2), Partition.of(1, 1)), (Partition.of(2), Partition())],
    )
    def test_boundaries(self, mu, nu):
        """境界付きの場合"""
        assert verify_general_cauchy(mu, nu, CauchySpec(n=2, degree=3)).passed


class TestConjugation:
    """共役との関係のテスト"""

    def test_conjugate_order(self):
        """水平と垂直を入れ替え、変数は保つ"""
        order = conjugate_order(AlphabetOrder.standard(1, 1))
        assert [l.kind for l in order] == [LetterKind.VERTICAL, LetterKind.HORIZONTAL]
        assert order.variables() == (x(1), y(1))

    def test_single_domino(self):
        """(2), n=2 で両辺とも x - y"""
        lhs, rhs = conjugate_polynomial_identity(SkewShape(Partition.of(2)), 2, AlphabetOrder.standard(1, 1))
        assert lhs == X - Y
        assert rhs == lhs

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_small_shapes(self, n):
        """|λ| ≤ 6 の直シェイプで一致する"""
        order = AlphabetOrder.parse("1,1',2")
        for outer in (Partition.of(3, 3), Partition.of(2, 1), Partition.of(4, 2), Partition.of(3, 2, 1)):
            lhs, rhs = conjugate_polynomial_identity(SkewShape(outer), n, order)
            assert lhs == rhs, (outer, n)
