"""
n-リボン頂点：許容性の判定、頂点型の分類、4種類の行のボルツマン重み
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

from src.algebra.poly import MPoly, VarId


class Vertical(str, Enum):
    UP = "up"
    DOWN = "down"

    @property
    def symbol(self) -> str:
        return "∧" if self == Vertical.UP else "∨"


class Horizontal(str, Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def symbol(self) -> str:
        return "<" if self == Horizontal.LEFT else ">"


class VertexType(str, Enum):
    SW = "SW"
    NS = "NS"
    SE = "SE"
    NW = "NW"
    EW = "EW"
    NE = "NE"


class RowKind(str, Enum):
    H = "H"
    V = "V"
    H_ALT = "H~"
    V_ALT = "V~"

    @property
    def is_alternate(self) -> bool:
        return self in (RowKind.H_ALT, RowKind.V_ALT)

    @property
    def is_horizontal(self) -> bool:
        return self in (RowKind.H, RowKind.H_ALT)

    @property
    def side_label(self) -> Horizontal:
        """原模型は左右境界が >、交代模型は < """
        return Horizontal.LEFT if self.is_alternate else Horizontal.RIGHT

    @property
    def tilde(self) -> "RowKind":
        return {
            RowKind.H: RowKind.H_ALT,
            RowKind.V: RowKind.V_ALT,
            RowKind.H_ALT: RowKind.H,
            RowKind.V_ALT: RowKind.V,
        }[self]


@dataclass(frozen=True)
class RowSpec:
    kind: RowKind
    spectral: VarId

    @property
    def label(self) -> str:
        return f"{self.kind.value}({self.spectral.name})"


@dataclass(frozen=True)
class VertexSite:
    north: Vertical
    south: Vertical
    west: Tuple[Horizontal, ...]
    east: Tuple[Horizontal, ...]

    @property
    def n(self) -> int:
        return len(self.west)


# (S=UP, N=UP, W(1)=RIGHT, E(n)=RIGHT) -> 型
_TYPE_TABLE: Dict[Tuple[int, int, int, int], VertexType] = {
    (1, 1, 1, 1): VertexType.SW,
    (1, 0, 0, 1): VertexType.NS,
    (1, 1, 0, 0): VertexType.SE,
    (0, 0, 1, 1): VertexType.NW,
    (0, 1, 1, 0): VertexType.EW,
    (0, 0, 0, 0): VertexType.NE,
}


def classify(a: int, b: int, w: int, e: int) -> Optional[VertexType]:
    return _TYPE_TABLE.get((a, b, w, e))


def vertex_type(v: VertexSite) -> Optional[VertexType]:
    """頂点型を返す。許容でなければNone"""
    n = len(v.west)
    if n < 1 or len(v.east) != n:
        return None
    # 直進する辺: E(i) = W(i+1)
    if any(v.east[i] != v.west[i + 1] for i in range(n - 1)):
        return None
    a = int(v.south == Vertical.UP)
    b = int(v.north == Vertical.UP)
    w = int(v.west[0] == Horizontal.RIGHT)
    e = int(v.east[n - 1] == Horizontal.RIGHT)
    return classify(a, b, w, e)


def weight_for(vtype: VertexType, kind: RowKind, spectral: VarId, straight_left: int, straight_right: int) -> MPoly:
    """
    頂点型と行種別から重みを計算する。

    straight_left / straight_right は E(1..n-1) のうち < / > の個数（s / t）。
    """
    z = MPoly.var(spectral)
    if kind == RowKind.H:
        qs = MPoly.q_power(straight_left)
        return {
            VertexType.SW: qs,
            VertexType.NS: qs,
            VertexType.SE: MPoly.zero(),
            VertexType.NW: MPoly.one(),
            VertexType.EW: qs * z,
            VertexType.NE: qs * z,
        }[vtype]
    if kind == RowKind.V:
        qs = MPoly.q_power(straight_left)
        return {
            VertexType.SW: qs,
            VertexType.NS: MPoly.one(),
            VertexType.SE: -z,
            VertexType.NW: MPoly.one(),
            VertexType.EW: -z,
            VertexType.NE: MPoly.zero(),
        }[vtype]
    qt = MPoly.q_power(straight_right)
    if kind == RowKind.H_ALT:
        return {
            VertexType.SW: MPoly.zero(),
            VertexType.NS: qt * z,
            VertexType.SE: qt,
            VertexType.NW: qt * z,
            VertexType.EW: qt,
            VertexType.NE: MPoly.one(),
        }[vtype]
    return {
        VertexType.SW: -z,
        VertexType.NS: -z,
        VertexType.SE: qt,
        VertexType.NW: MPoly.zero(),
        VertexType.EW: MPoly.one(),
        VertexType.NE: MPoly.one(),
    }[vtype]


def zero_weight_type(kind: RowKind) -> VertexType:
    return {
        RowKind.H: VertexType.SE,
        RowKind.V: VertexType.NE,
        RowKind.H_ALT: VertexType.SW,
        RowKind.V_ALT: VertexType.NW,
    }[kind]


def vertex_weight(v: VertexSite, row: RowSpec) -> MPoly:
    vtype = vertex_type(v)
    if vtype is None:
        return MPoly.zero()
    straight = v.east[: v.n - 1]
    left = sum(1 for h in straight if h == Horizontal.LEFT)
    return weight_for(vtype, row.kind, row.spectral, left, len(straight) - left)


__all__ = [
    "Horizontal",
    "RowKind",
    "RowSpec",
    "VertexSite",
    "VertexType",
    "Vertical",
    "classify",
    "vertex_type",
    "vertex_weight",
    "weight_for",
    "zero_weight_type",
]
