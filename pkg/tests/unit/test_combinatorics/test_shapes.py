"""分割・リボンの組合せ論のテスト"""
import random

import pytest

from src.combinatorics.shapes import (
    BetaSet,
    Partition,
    ShapeBound,
    SkewShape,
    StripMode,
    StripResult,
    add_strips,
    all_subpartitions,
    conjugate,
    from_beta,
    is_n_core,
    is_ribbon,
    n_core,
    partitions_of_size,
    partitions_with_core,
    remove_strips,
    ribbon_tilings,
    strip_spin,
    superpartitions,
    to_beta,
)
from src.utils.errors import ShapeError, TilingUniquenessError


def P(*parts: int) -> Partition:
    return Partition.of(*parts)


def _random_partition(rng: random.Random, max_size: int = 12) -> Partition:
    return rng.choice(list(partitions_of_size(rng.randint(0, max_size))))


class TestPartition:
    """Partitionのテスト"""

    def test_trailing_zeros_ignored(self):
        """末尾の0は同一視する"""
        assert Partition((3, 1, 0, 0)) == P(3, 1)

    def test_not_decreasing_rejected(self):
        """単調非増加でなければエラー"""
        with pytest.raises(ShapeError):
            Partition((1, 2))

    def test_parse(self):
        """カンマ区切りと空の表記"""
        assert Partition.parse("3,3") == P(3, 3)
        assert Partition.parse("∅") == Partition()
        assert Partition.parse(None) == Partition()

    def test_parse_invalid(self):
        """数でない成分はエラー"""
        with pytest.raises(ShapeError):
            Partition.parse("3,a")

    def test_size_and_length(self):
        """サイズと長さ"""
        lam = P(4, 2, 1)
        assert lam.size == 7
        assert lam.length == 3
        assert lam[5] == 0

    def test_contains(self):
        """包含関係"""
        assert P(3, 2).contains(P(2, 2))
        assert not P(3, 2).contains(P(1, 1, 1))


class TestConjugate:
    """conjugateのテスト"""

    def test_rectangle(self):
        """(3,3)' = (2,2,2)"""
        assert conjugate(P(3, 3)) == P(2, 2, 2)

    def test_empty(self):
        """∅' = ∅"""
        assert conjugate(Partition()) == Partition()

    def test_involution(self):
        """2回で元に戻る"""
        rng = random.Random(3)
        for _ in range(100):
            lam = _random_partition(rng)
            assert conjugate(conjugate(lam)) == lam


class TestSkewShape:
    """SkewShapeのテスト"""

    def test_not_contained_rejected(self):
        """内側が含まれなければエラー"""
        with pytest.raises(ShapeError):
            SkewShape(P(2), P(1, 1))

    def test_size(self):
        """サイズは差"""
        assert SkewShape(P(4, 4, 1), P(3)).size == 6

    def test_cells(self):
        """セルは (行, 列) の0始まり"""
        assert SkewShape(P(2, 1), P(1)).cells() == frozenset({(0, 1), (1, 0)})


class TestBetaSet:
    """β集合のテスト"""

    def test_rectangle(self):
        """(3,3), r=2 → {5,4}"""
        assert to_beta(P(3, 3), 2).offsets == (5, 4)

    def test_staircase(self):
        """∅, r=3 → {3,2,1}"""
        assert to_beta(Partition(), 3).offsets == (3, 2, 1)

    def test_width_too_small(self):
        """r < ℓ(λ) はエラー"""
        with pytest.raises(ShapeError):
            to_beta(P(1, 1, 1), 2)

    def test_round_trip(self):
        """to_beta → from_beta で元に戻る"""
        rng = random.Random(11)
        for _ in range(100):
            lam = _random_partition(rng)
            r = lam.length + rng.randint(0, 3)
            assert from_beta(to_beta(lam, r)) == lam

    def test_mask(self):
        """列のマスクは1始まりの位置"""
        assert to_beta(P(1), 2).mask(4) == (True, False, True, False)

    def test_not_strictly_decreasing_rejected(self):
        """狭義単調減少でなければエラー"""
        with pytest.raises(ShapeError):
            BetaSet((2, 2))


class TestRibbonTilings:
    """ribbon_tilingsのテスト"""

    @pytest.mark.parametrize(
        "cells,spin",
        [
            ([(0, 0), (1, 0), (2, 0)], 2),
            ([(0, 1), (1, 1), (1, 0)], 1),
            ([(0, 0), (0, 1), (0, 2)], 0),
            ([(0, 2), (0, 1), (1, 1)], 1),
        ],
    )
    def test_three_cell_ribbons(self, cells, spin):
        """3セルのリボンとそのスピン"""
        assert is_ribbon(cells)
        outer_rows = {}
        for r, c in cells:
            outer_rows[r] = max(outer_rows.get(r, 0), c + 1)
        inner_rows = {}
        for r, c in cells:
            inner_rows[r] = min(inner_rows.get(r, c), c)
        rows = sorted(outer_rows)
        shape = SkewShape(
            Partition(tuple(outer_rows[r] for r in rows)),
            Partition(tuple(inner_rows[r] for r in rows)),
        )
        tilings = ribbon_tilings(shape, 3)
        assert [t.spin for t in tilings] == [spin]

    def test_square_is_not_ribbon(self):
        """2×2を含むものはリボンでない"""
        assert not is_ribbon([(0, 0), (0, 1), (1, 0), (1, 1)])

    def test_horizontal_strip_of_rectangle(self):
        """(3,3), n=2 の水平ストリップは縦ドミノ3枚でスピン3"""
        tilings = ribbon_tilings(SkewShape(P(3, 3)), 2, StripMode.HORIZONTAL)
        assert len(tilings) == 1
        assert tilings[0].spin == 3

    def test_six_ribbon(self):
        """(4,4,1)/(3), n=6 は1本のリボンでスピン2"""
        tilings = ribbon_tilings(SkewShape(P(4, 4, 1), P(3)), 6)
        assert len(tilings) == 1
        assert tilings[0].spin == 2

    def test_two_tilings(self):
        """(2,2,2,1)/(1), n=3 は2通りでスピン2と4"""
        tilings = ribbon_tilings(SkewShape(P(2, 2, 2, 1), P(1)), 3)
        assert sorted(t.spin for t in tilings) == [2, 4]

    def test_not_divisible(self):
        """サイズがnで割り切れなければ空"""
        assert ribbon_tilings(SkewShape(P(2, 2)), 3) == ()

    def test_strip_duality(self):
        """λ/μ の垂直ストリップのスピン s と λ'/μ' の水平ストリップのスピンの和は (n-1)k"""
        for n in (1, 2, 3):
            for size in range(1, 7):
                for lam in partitions_of_size(size):
                    for mu in all_subpartitions(lam):
                        shape = SkewShape(lam, mu)
                        if shape.size % n:
                            continue
                        vertical = strip_spin(shape, n, StripMode.VERTICAL)
                        horizontal = strip_spin(shape.conjugate(), n, StripMode.HORIZONTAL)
                        if vertical is None:
                            assert horizontal is None
                        else:
                            assert vertical + horizontal == (n - 1) * shape.size // n

    def test_uniqueness_violation_raises(self, mocker):
        """水平モードで2通り見つかった場合はエラー"""
        fake = (((0, 0),), ((0, 1),))
        mocker.patch("src.combinatorics.shapes._tilings", return_value=(fake, fake))
        ribbon_tilings.cache_clear()
        try:
            with pytest.raises(TilingUniquenessError):
                ribbon_tilings(SkewShape(P(2)), 1, StripMode.HORIZONTAL)
        finally:
            ribbon_tilings.cache_clear()


class TestStrips:
    """add_strips / remove_stripsのテスト"""

    def test_add_zero_strips(self):
        """k=0 は μ 自身"""
        assert add_strips(P(2, 1), 2, 0, StripMode.HORIZONTAL) == [StripResult(P(2, 1), 0)]

    def test_add_horizontal_rectangle_once(self):
        """(3,3) は1回だけ現れ、スピンは3"""
        results = add_strips(Partition(), 2, 3, StripMode.HORIZONTAL)
        rect = [r for r in results if r.shape == P(3, 3)]
        assert rect == [StripResult(P(3, 3), 3)]

    def test_add_six_ribbon(self):
        """(3) に6-リボン1本で (4,4,1) スピン2"""
        assert StripResult(P(4, 4, 1), 2) in add_strips(P(3), 6, 1, StripMode.HORIZONTAL)

    def test_add_respects_cap(self):
        """上限の外の形は返さない"""
        cap = ShapeBound(max_length=1)
        results = add_strips(Partition(), 2, 1, StripMode.ANY, cap)
        assert [r.shape for r in results] == [P(2)]

    def test_remove_is_inverse_of_add(self):
        """除去の結果は付加の逆"""
        for res in add_strips(P(1), 2, 2, StripMode.VERTICAL):
            removed = remove_strips(res.shape, 2, 2, StripMode.VERTICAL)
            assert StripResult(P(1), res.spin) in removed

    def test_negative_k_rejected(self):
        """k < 0 はエラー"""
        with pytest.raises(ShapeError):
            add_strips(P(1), 2, -1, StripMode.ANY)


class TestNCore:
    """n_coreのテスト"""

    def test_rectangle_dominoes(self):
        """(3,3) の2-コアは∅"""
        assert n_core(P(3, 3), 2) == Partition()

    def test_too_small(self):
        """(1) の2-コアは (1)"""
        assert n_core(P(1), 2) == P(1)
        assert is_n_core(P(1), 2)

    def test_idempotent(self):
        """コアのコアはコア"""
        rng = random.Random(5)
        for _ in range(100):
            lam = _random_partition(rng)
            n = rng.randint(1, 4)
            core = n_core(lam, n)
            assert n_core(core, n) == core
            assert is_n_core(core, n)
            assert (lam.size - core.size) % n == 0

    def test_partitions_with_core(self):
        """2-コア∅に2本以下のドミノ"""
        found = partitions_with_core(Partition(), 2, 2)
        assert set(found) == {Partition(), P(2), P(1, 1), P(4), P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1)}


class TestEnumeration:
    """分割の列挙のテスト"""

    def test_partitions_of_size(self):
        """サイズ4の分割は5個"""
        assert len(list(partitions_of_size(4))) == 5

    def test_superpartitions(self):
        """(1) に2セル足した分割"""
        assert set(superpartitions(P(1), 2)) == {P(3), P(2, 1), P(1, 1, 1)}

    def test_all_subpartitions(self):
        """(2,1) の部分分割"""
        assert set(all_subpartitions(P(2, 1))) == {P(2, 1), P(2), P(1, 1), P(1), Partition()}
