"""検証スイートのテスト"""
import pytest

from src.combinatorics.shapes import Partition, SkewShape
from src.utils.budget import Budget
from src.utils.errors import BudgetExceededError
from src.verification.suites import (
    ROUTES,
    SuiteConfig,
    alphabet_orders,
    get_suite,
    route_polynomials,
    run_suite,
    suite_names,
    tileable_shapes,
)
from src.verification import suites


class TestRegistry:
    """スイート登録簿のテスト"""

    def test_suite_names(self):
        """全スイートが登録されている"""
        assert suite_names() == sorted([
            "branching",
            "cauchy",
            "commutation",
            "conjugation",
            "dual",
            "general-cauchy",
            "routes",
            "symmetry",
            "window",
            "ybe",
        ])

    def test_unknown_suite(self):
        """未知の名前はエラー"""
        with pytest.raises(ValueError, match="未知のスイート"):
            get_suite("nope")

    def test_config_to_json(self):
        """設定はそのままJSONにできる"""
        payload = SuiteConfig(n=3, kind="HH").to_json()
        assert payload["n"] == 3
        assert payload["kind"] == "HH"
        assert payload["max_cases"] is None


class TestCaseEnumeration:
    """ケース列挙のテスト"""

    def test_tileable_shapes_n1(self):
        """n=1 では全ての空でない歪シェイプ"""
        shapes = list(tileable_shapes(1, 2))
        assert len(shapes) == 5
        assert SkewShape(Partition.of(2), Partition.of(1)) in shapes

    def test_tileable_shapes_n2(self):
        """n=2 ではドミノでタイリングできるものだけ"""
        shapes = list(tileable_shapes(2, 2))
        assert shapes == [SkewShape(Partition.of(2)), SkewShape(Partition.of(1, 1))]

    def test_shapes_sorted_by_size(self):
        """外側の大きさの順"""
        sizes = [s.outer.size for s in tileable_shapes(2, 4)]
        assert sizes == sorted(sizes)

    def test_alphabet_orders(self):
        """1文字で2通り、2文字で4通り"""
        orders = [o.spec() for o in alphabet_orders(2)]
        assert len(orders) == 6
        assert orders[:2] == ["1", "1'"]
        assert len(set(orders)) == 6

    def test_thin_is_deterministic(self):
        """同じ seed なら同じケースを同じ順で選ぶ"""
        cases = list(range(20))
        config = SuiteConfig(max_cases=5, seed=7)
        picked = suites._thin(cases, config)
        assert picked == suites._thin(cases, config)
        assert len(picked) == 5
        assert picked == sorted(picked)

    def test_thin_without_limit(self):
        """上限なしなら全件"""
        cases = list(range(4))
        assert suites._thin(cases, SuiteConfig()) == cases
        assert suites._thin(cases, SuiteConfig(max_cases=10)) == cases


class TestRoutePolynomials:
    """route_polynomialsのテスト"""

    def test_keys(self):
        """タブロー経路と4経路"""
        from src.combinatorics.tableaux import AlphabetOrder

        values = route_polynomials(SkewShape(Partition.of(2)), 2, AlphabetOrder.parse("1,1'"))
        assert set(values) == {"tableaux", *ROUTES}
        for route in ROUTES:
            assert values[route] == values["tableaux"]


class TestRunSuite:
    """小さな設定でのスイート実行"""

    def test_ybe_single_kind(self):
        """種別を指定した ybe は1ケース"""
        report = run_suite("ybe", SuiteConfig(n=1, kind="HH"), Budget.unlimited())
        assert [c.case_key for c in report.checks] == ["HH/n=1"]
        assert report.passed

    @pytest.mark.slow
    def test_ybe_all_kinds_gating(self):
        """種別を省略すると全11種別を検証し、どれもゲート対象"""
        report = run_suite("ybe", SuiteConfig(n=1), Budget.unlimited())
        assert len(report.checks) == 11
        assert all(c.gating for c in report.checks)
        assert report.passed

    def test_commutation_degrees_up_to_three(self):
        """交換関係は a, b = 1..3 の組を全て調べる"""
        report = run_suite("commutation", SuiteConfig(n=1, max_size=1), Budget.unlimited())
        keys = {c.case_key.split("/")[1] + "/" + c.case_key.split("/")[2] for c in report.checks if "/a=" in c.case_key}
        assert keys == {f"a={a}/b={b}" for a in range(1, 4) for b in range(1, 4)}

    def test_routes_n1(self):
        """n=1 の小さなシェイプで4経路が一致する"""
        config = SuiteConfig(n=1, max_size=2, max_letters=1)
        report = run_suite("routes", config, Budget.unlimited())
        # 5シェイプ × 2順序 × 4経路
        assert len(report.checks) == 40
        assert report.passed

    def test_routes_max_cases(self):
        """max_cases でケースを間引く"""
        config = SuiteConfig(n=1, max_size=2, max_letters=1, max_cases=3)
        report = run_suite("routes", config, Budget.unlimited())
        assert len(report.checks) == 3 * len(ROUTES)

    def test_cauchy_n1(self):
        """n=1 の Cauchy 恒等式"""
        report = run_suite("cauchy", SuiteConfig(n=1, degree=2), Budget.unlimited())
        assert [c.case_key for c in report.checks] == ["tableaux/core=∅", "schur/n=1"]
        assert report.passed

    def test_report_config(self):
        """レポートに設定を残す"""
        config = SuiteConfig(n=1, kind="HH")
        report = run_suite("ybe", config, Budget.unlimited())
        assert report.config == config.to_json()

    def test_budget_exceeded(self):
        """上限を超えたら例外を送出する"""
        config = SuiteConfig(n=1, max_size=3, max_letters=2)
        with pytest.raises(BudgetExceededError):
            run_suite("routes", config, Budget(max_states=1))

    @pytest.mark.slow
    def test_conjugation_n2(self):
        """n=2 の共役恒等式"""
        report = run_suite("conjugation", SuiteConfig(n=2, max_size=4, max_letters=2), Budget.unlimited())
        assert report.checks
        assert report.passed

    @pytest.mark.slow
    def test_branching_n2(self):
        """n=2 の分岐則"""
        report = run_suite("branching", SuiteConfig(n=2, max_size=4, max_letters=2), Budget.unlimited())
        assert report.passed
