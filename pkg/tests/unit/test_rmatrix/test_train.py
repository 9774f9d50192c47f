"""列車論法のテスト"""
import pytest

from src.combinatorics.shapes import Partition, SkewShape
from src.combinatorics.tableaux import AlphabetOrder
from src.lattice.system import build_alternate_system, build_original_system, partition_function
from src.rmatrix.train import partition_function_with_r, train_argument, train_argument_demo
from src.rmatrix.weights import RKind
from src.utils.errors import LatticeError

RECT = SkewShape(Partition.of(3, 3))


class TestTrainArgument:
    """train_argumentのテスト"""

    def test_two_horizontal_rows(self):
        """H 行同士の入れ替え"""
        system = build_original_system(RECT, 2, AlphabetOrder.standard(2))
        result = train_argument(system, 0)
        assert result.kind == RKind.HH
        assert not result.weight.is_zero()
        assert result.passed

    def test_pushes_one_column_at_a_time(self):
        """R 頂点を列 0..columns の手前に置いた分配関数が全て等しい"""
        system = build_original_system(RECT, 2, AlphabetOrder.standard(2))
        result = train_argument(system, 0)
        assert len(result.steps) == system.columns + 1
        assert len(set(str(s) for s in result.steps)) == 1
        assert result.first_mismatch is None
        assert result.to_json()["firstMismatch"] is None

    def test_endpoints_are_attached_east_vertices(self):
        """両端では全て E 型の R 頂点が付いた系になる"""
        system = build_original_system(RECT, 2, AlphabetOrder.standard(2))
        result = train_argument(system, 0)
        swapped = system.with_rows((system.rows[1], system.rows[0]))
        assert result.lhs == result.weight * partition_function(system)
        assert result.rhs == partition_function(swapped) * result.weight

    def test_mismatch_is_located(self):
        """途中の位置で分配関数が変われば、その位置を返す"""
        system = build_original_system(RECT, 2, AlphabetOrder.standard(2))
        result = train_argument(system, 0)
        result.steps[2] = result.steps[2] + result.weight
        assert result.first_mismatch == 2
        assert not result.passed

    def test_horizontal_and_vertical_rows(self):
        """H 行と V 行の入れ替え"""
        system = build_original_system(RECT, 2, AlphabetOrder.standard(1, 1))
        result = train_argument(system, 0)
        assert result.kind == RKind.HV
        assert result.passed

    def test_vertical_above_horizontal(self):
        """V 行が上でも HV 頂点を使う"""
        system = build_original_system(RECT, 2, AlphabetOrder.parse("1',1"))
        result = train_argument(system, 0)
        assert result.kind == RKind.HV
        assert result.passed
        # 行 i（H）が上に来る向きで押し出す
        assert result.lhs == result.weight * partition_function(system)

    def test_demo(self):
        """両辺の組を返す"""
        system = build_original_system(RECT, 2, AlphabetOrder.parse("1,1',2"))
        lhs, rhs = train_argument_demo(system, 1)
        assert lhs == rhs

    def test_r_at_right_end(self):
        """右端に置いた R 頂点は入れ替えた系の右に付く"""
        system = build_original_system(RECT, 2, AlphabetOrder.standard(1, 1))
        result = train_argument(system, 0)
        z = partition_function_with_r(system, 0, system.columns, result.kind, (system.rows[0].spectral, system.rows[1].spectral))
        assert z == result.rhs

    def test_row_out_of_range(self):
        """隣接行の位置が範囲外ならエラー"""
        system = build_original_system(RECT, 2, AlphabetOrder.standard(2))
        with pytest.raises(LatticeError):
            train_argument(system, 1)

    def test_alternate_rows_rejected(self):
        """交代模型の行は対象外"""
        system = build_alternate_system(RECT, 2, AlphabetOrder.standard(2))
        with pytest.raises(LatticeError):
            train_argument(system, 0)
