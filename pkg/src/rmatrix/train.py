"""
列車論法による対称性の確認

隣接する2行（行 i が上、行 j が下）の左端に R^(n) 頂点をつけ、YBE で1列ずつ右へ押し出す。
R 頂点より左の列では行 j が上、右の列では行 i が上になる。境界の横の辺は全て > なので、
左端に付けた頂点も右端から出てきた頂点も全て E 型で、
wt(R)·Z(元の系) = Z(入れ替えた系)·wt(R) となる。途中の各位置での分配関数も全て等しい。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from itertools import product as cartesian
from typing import Dict, List, Optional, Tuple

from src.algebra.poly import MPoly, VarId
from src.lattice.system import Edges, LatticeSystem, Mask, row_transfer, vertex_step
from src.lattice.vertices import Horizontal, RowKind, RowSpec
from src.rmatrix.weights import RKind, RVertex, StrandOrder, all_east_weight, r_weight
from src.utils.errors import LatticeError

logger = logging.getLogger(__name__)

# (上の行の窓, 下の行の窓, 下端のビット)
StripKey = Tuple[Edges, Edges, Tuple[bool, ...]]


@dataclass
class TrainResult:
    """
    Attributes
    ----------
    weight : MPoly
        全て E 型の R 頂点の重み
    lhs, rhs : MPoly
        wt(R)·Z(元の系) と Z(入れ替えた系)·wt(R)
    steps : List[MPoly]
        R 頂点を列 0..columns の手前に置いたときの分配関数
    """

    kind: RKind
    row: int
    weight: MPoly
    lhs: MPoly
    rhs: MPoly
    steps: List[MPoly] = field(default_factory=list)

    @property
    def first_mismatch(self) -> Optional[int]:
        """直前の位置と分配関数が変わった最初の位置"""
        for position in range(1, len(self.steps)):
            if self.steps[position] != self.steps[position - 1]:
                return position
        return None

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs and self.first_mismatch is None

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "row": self.row,
            "weight": self.weight.to_json(),
            "residual": (self.lhs - self.rhs).to_json(),
            "steps": len(self.steps),
            "firstMismatch": self.first_mismatch,
            "passed": self.passed,
        }


def _r_vertex_for(upper: RowSpec, lower: RowSpec) -> Tuple[RKind, Tuple[VarId, VarId], bool]:
    """
    上下の行から R 頂点の種別、スペクトル変数 (行 i, 行 j)、行 i が下の行かどうかを決める。

    V の上に H がある場合は HV 頂点を使い、H を行 i とする。
    """
    if upper.kind.is_alternate or lower.kind.is_alternate:
        raise LatticeError(f"交代模型の行は列車論法の対象外: {upper.label}/{lower.label}")
    if upper.kind == RowKind.V and lower.kind == RowKind.H:
        return RKind.HV, (lower.spectral, upper.spectral), True
    return RKind.for_rows(upper.kind, lower.kind), (upper.spectral, lower.spectral), False


def _swap_rows(system: LatticeSystem, row: int) -> LatticeSystem:
    rows, sides = list(system.rows), list(system.sides)
    rows[row], rows[row + 1] = rows[row + 1], rows[row]
    sides[row], sides[row + 1] = sides[row + 1], sides[row]
    return replace(system, rows=tuple(rows), sides=tuple(sides))


def _apply_r(
    layer: Dict[StripKey, MPoly],
    kind: RKind,
    spectral: Tuple[VarId, VarId],
    n: int,
    order: StrandOrder,
) -> Dict[StripKey, MPoly]:
    # 西側は (L = 上の行 j, K = 下の行 i)、東側は (I = 上の行 i, J = 下の行 j)
    tuples: List[Edges] = list(cartesian(Horizontal, repeat=n))
    nxt: Dict[StripKey, MPoly] = {}
    for (L, K, bits), weight in layer.items():
        for I, J in cartesian(tuples, repeat=2):
            wt = r_weight(RVertex.from_edges(kind, K, L, I, J), spectral, order=order)
            if wt.is_zero():
                continue
            key = (I, J, bits)
            nxt[key] = nxt.get(key, MPoly.zero()) + weight * wt
    return {key: p for key, p in nxt.items() if not p.is_zero()}


def strip_transfer(
    system: LatticeSystem,
    row: int,
    top: Mask,
    position: int,
    kind: RKind,
    spectral: Tuple[VarId, VarId],
    order: StrandOrder = StrandOrder.TOP_FIRST,
) -> Dict[Mask, MPoly]:
    """
    行 row（行 i）と row+1（行 j）を、列 position の手前に R 頂点を挟んで転送する。

    各列の2頂点は lattice.system の1列分の遷移で進める。戻り値は下端マスク → 重みの和。
    """
    n = system.n
    upper, lower = system.rows[row], system.rows[row + 1]
    edge_i = tuple(system.sides[row] for _ in range(n))
    edge_j = tuple(system.sides[row + 1] for _ in range(n))
    layer: Dict[StripKey, MPoly] = {(edge_j, edge_i, ()): MPoly.one()}
    for c in range(system.columns + 1):
        if c == position:
            layer = _apply_r(layer, kind, spectral, n, order)
        if c == system.columns:
            break
        first, second = (lower, upper) if c < position else (upper, lower)
        north = int(top[c])
        nxt: Dict[StripKey, MPoly] = {}
        for (w_top, w_bottom, bits), weight in layer.items():
            for middle in (0, 1):
                step_top = vertex_step(first, n, w_top, north, middle)
                if step_top is None or step_top[1].is_zero():
                    continue
                for south in (0, 1):
                    step_bottom = vertex_step(second, n, w_bottom, middle, south)
                    if step_bottom is None or step_bottom[1].is_zero():
                        continue
                    key = (w_top[1:] + (step_top[0],), w_bottom[1:] + (step_bottom[0],), bits + (bool(south),))
                    nxt[key] = nxt.get(key, MPoly.zero()) + weight * step_top[1] * step_bottom[1]
        layer = nxt
    result: Dict[Mask, MPoly] = {}
    for (w_top, w_bottom, bits), weight in layer.items():
        if w_top == edge_i and w_bottom == edge_j:
            result[bits] = result.get(bits, MPoly.zero()) + weight
    return {mask: p for mask, p in result.items() if not p.is_zero()}


def partition_function_with_r(
    system: LatticeSystem,
    row: int,
    position: int,
    kind: RKind,
    spectral: Tuple[VarId, VarId],
    order: StrandOrder = StrandOrder.TOP_FIRST,
) -> MPoly:
    """行 row と row+1 の間の列 position の手前に R 頂点を挟んだ系の分配関数"""
    layer: Dict[Mask, MPoly] = {system.top: MPoly.one()}
    i = 0
    while i < len(system.rows):
        nxt: Dict[Mask, MPoly] = {}
        for top, coeff in layer.items():
            if i == row:
                items = strip_transfer(system, row, top, position, kind, spectral, order).items()
            else:
                items = row_transfer(system.rows[i], system.sides[i], system.n, top)
            for bottom, weight in items:
                nxt[bottom] = nxt.get(bottom, MPoly.zero()) + coeff * weight
        layer = {m: p for m, p in nxt.items() if not p.is_zero()}
        i += 2 if i == row else 1
    return layer.get(system.bottom, MPoly.zero())


def train_argument(system: LatticeSystem, row: int, order: StrandOrder = StrandOrder.TOP_FIRST) -> TrainResult:
    """行 row と row+1 を入れ替える列車論法。R 頂点を1列ずつ押し出し、各位置の分配関数を記録する"""
    if not 0 <= row < len(system.rows) - 1:
        raise LatticeError(f"隣接行の位置が範囲外: row={row}, rows={len(system.rows)}")
    upper, lower = system.rows[row], system.rows[row + 1]
    kind, spectral, reversed_rows = _r_vertex_for(upper, lower)
    weight = all_east_weight(kind, system.n, spectral, order=order)

    # 行 i が上にある向きで押し出す
    base = _swap_rows(system, row) if reversed_rows else system
    steps = [
        partition_function_with_r(base, row, position, kind, spectral, order)
        for position in range(system.columns + 1)
    ]
    lhs, rhs = (steps[-1], steps[0]) if reversed_rows else (steps[0], steps[-1])
    result = TrainResult(kind=kind, row=row, weight=weight, lhs=lhs, rhs=rhs, steps=steps)
    if not result.passed:
        logger.warning(
            f"列車論法の不一致: kind={kind.value}, row={row}, position={result.first_mismatch}, "
            f"rows={[r.label for r in system.rows]}"
        )
    else:
        logger.debug(f"列車論法: kind={kind.value}, row={row}, positions={len(steps)}")
    return result


def train_argument_demo(system: LatticeSystem, row: int) -> Tuple[MPoly, MPoly]:
    """(wt(付けたR)·Z(系), Z(入れ替えた系)·wt(出てきたR))"""
    result = train_argument(system, row)
    return result.lhs, result.rhs


__all__ = ["TrainResult", "partition_function_with_r", "strip_transfer", "train_argument", "train_argument_demo"]
