"""分岐則と連鎖条件のテスト"""
import pytest

from src.combinatorics.shapes import Partition, SkewShape
from src.combinatorics.tableaux import AlphabetOrder
from src.lattice.branching import (
    check_chain_conditions,
    interrow_shapes_within,
    step_satisfies_chain,
    verify_branching,
)
from src.lattice.system import build_original_system, enumerate_states
from src.lattice.vertices import RowKind

RECT = SkewShape(Partition.of(3, 3))


class TestStepSatisfiesChain:
    """step_satisfies_chainのテスト"""

    def test_horizontal_move(self):
        """H 行で n だけ右へ"""
        assert step_satisfies_chain([1], [3], 2, RowKind.H)

    def test_not_multiple_of_n(self):
        """差が n の倍数でなければ不可"""
        assert not step_satisfies_chain([1], [2], 2, RowKind.H)

    def test_vertical_moves_at_most_n(self):
        """V 行の差は 0 か n"""
        assert not step_satisfies_chain([1], [5], 2, RowKind.V)
        assert step_satisfies_chain([1], [5], 2, RowKind.H)
        assert step_satisfies_chain([1, 3], [3, 5], 2, RowKind.V)

    def test_count_mismatch(self):
        """粒子数が違えば不可"""
        assert not step_satisfies_chain([1, 2], [3], 1, RowKind.H)


class TestVerifyBranching:
    """verify_branchingのテスト"""

    @pytest.mark.parametrize("cut", [0, 1, 2, 3])
    def test_rectangle(self, cut):
        """(3,3), n=2, 1<1'<2 の各切断位置"""
        report = verify_branching(RECT, 2, AlphabetOrder.parse("1,1',2"), cut)
        assert report.passed, report.to_json()
        assert report.states_checked == 15

    def test_intermediates_within_shape(self):
        """中間の分割は μ ⊆ γ ⊆ λ"""
        report = verify_branching(RECT, 2, AlphabetOrder.standard(1, 1), 1, check_chains=False)
        assert report.intermediates
        assert all(RECT.outer.contains(g) for g in report.intermediates)
        assert report.states_checked == 0

    def test_cut_out_of_range(self):
        """切断位置が範囲外ならエラー"""
        with pytest.raises(ValueError):
            verify_branching(RECT, 2, AlphabetOrder.standard(1, 1), 3)

    def test_chain_conditions_hold_for_states(self):
        """非零状態は全て連鎖条件を満たす"""
        system = build_original_system(RECT, 2, AlphabetOrder.parse("1',1,2"))
        states = list(enumerate_states(system))
        count, violations = check_chain_conditions(states, 2)
        assert count == len(states)
        assert violations == []
        assert all(interrow_shapes_within(s, RECT) for s in states)
