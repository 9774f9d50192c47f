"""n-リボン頂点のテスト"""
import pytest

from src.algebra.poly import MPoly, x, y
from src.lattice.vertices import (
    Horizontal,
    RowKind,
    RowSpec,
    VertexSite,
    VertexType,
    Vertical,
    vertex_type,
    vertex_weight,
    weight_for,
    zero_weight_type,
)

R = Horizontal.RIGHT
L = Horizontal.LEFT
UP = Vertical.UP
DOWN = Vertical.DOWN
q = MPoly.q_power
X = MPoly.var(x(1))
Y = MPoly.var(y(1))


class TestVertexType:
    """vertex_typeのテスト"""

    def test_sw(self):
        """上下とも ∧ で水平が全て > なら SW"""
        site = VertexSite(north=UP, south=UP, west=(R, R), east=(R, R))
        assert vertex_type(site) == VertexType.SW

    def test_nw(self):
        """上下とも ∨ で水平が全て > なら NW"""
        site = VertexSite(north=DOWN, south=DOWN, west=(R, R, R), east=(R, R, R))
        assert vertex_type(site) == VertexType.NW

    def test_straight_edges_must_match(self):
        """E(i) = W(i+1) でなければ許容でない"""
        site = VertexSite(north=DOWN, south=DOWN, west=(R, R), east=(L, R))
        assert vertex_type(site) is None

    def test_conservation(self):
        """粒子数が保存されなければ許容でない"""
        site = VertexSite(north=UP, south=DOWN, west=(R,), east=(R,))
        assert vertex_type(site) is None

    @pytest.mark.parametrize(
        "north,south,west,east,expected",
        [
            (DOWN, UP, L, R, VertexType.NS),
            (UP, UP, L, L, VertexType.SE),
            (UP, DOWN, R, L, VertexType.EW),
            (DOWN, DOWN, L, L, VertexType.NE),
        ],
    )
    def test_n1_types(self, north, south, west, east, expected):
        """n=1 の6種類の型"""
        assert vertex_type(VertexSite(north=north, south=south, west=(west,), east=(east,))) == expected


class TestWeights:
    """頂点重みのテスト"""

    def test_h_row(self):
        """H 行：EW/NE は q^s·x、SE は0"""
        assert weight_for(VertexType.EW, RowKind.H, x(1), 2, 1) == q(2) * X
        assert weight_for(VertexType.NW, RowKind.H, x(1), 2, 1) == MPoly.one()
        assert weight_for(VertexType.SE, RowKind.H, x(1), 0, 3).is_zero()

    def test_v_row(self):
        """V 行：SE/EW は -y、NE は0"""
        assert weight_for(VertexType.SE, RowKind.V, y(1), 1, 0) == -Y
        assert weight_for(VertexType.SW, RowKind.V, y(1), 1, 0) == q(1)
        assert weight_for(VertexType.NE, RowKind.V, y(1), 0, 0).is_zero()

    def test_alternate_rows_use_right_count(self):
        """H~ / V~ 行は > の個数 t を使う"""
        assert weight_for(VertexType.NS, RowKind.H_ALT, x(1), 0, 2) == q(2) * X
        assert weight_for(VertexType.SE, RowKind.V_ALT, y(1), 3, 1) == q(1)
        assert weight_for(VertexType.SW, RowKind.V_ALT, y(1), 0, 0) == -Y

    @pytest.mark.parametrize("kind", list(RowKind))
    def test_zero_weight_type(self, kind):
        """各行種別でちょうど1つの型が重み0"""
        spectral = x(1) if kind.is_horizontal else y(1)
        zeros = [t for t in VertexType if weight_for(t, kind, spectral, 1, 1).is_zero()]
        assert zeros == [zero_weight_type(kind)]

    def test_vertex_weight_counts_straight_lefts(self):
        """s は E(1..n-1) の < の個数"""
        site = VertexSite(north=DOWN, south=UP, west=(L, L, R), east=(L, R, R))
        assert vertex_type(site) == VertexType.NS
        assert vertex_weight(site, RowSpec(RowKind.H, x(1))) == q(1)

    def test_inadmissible_weight_is_zero(self):
        """許容でない頂点の重みは0"""
        site = VertexSite(north=UP, south=DOWN, west=(R,), east=(R,))
        assert vertex_weight(site, RowSpec(RowKind.H, x(1))).is_zero()


class TestRowKind:
    """RowKindのテスト"""

    def test_tilde(self):
        """~ は原模型と交代模型を入れ替える"""
        assert RowKind.H.tilde == RowKind.H_ALT
        assert RowKind.V_ALT.tilde == RowKind.V

    def test_side_label(self):
        """原模型の境界は >、交代模型は <"""
        assert RowKind.V.side_label == Horizontal.RIGHT
        assert RowKind.H_ALT.side_label == Horizontal.LEFT
