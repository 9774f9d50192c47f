"""
格子系の構成、状態の列挙、分配関数

行は上から下へ並び、各行は左から右へ掃引する。行内の水平ラベルは
各列のねじれ出力 o_c の列で決まり、E_c(i) = o_{c-n+1+i}, W_c(i) = o_{c-n+i}
（添字が負のときは左境界のラベル）となる。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from src.algebra.poly import MPoly, truncate_in, VarId
from src.combinatorics.shapes import Partition, SkewShape, beta_from_mask, from_beta, to_beta
from src.combinatorics.tableaux import AlphabetOrder, LetterKind
from src.lattice.vertices import (
    Horizontal,
    RowKind,
    RowSpec,
    VertexSite,
    VertexType,
    Vertical,
    classify,
    weight_for,
)
from src.utils.budget import Budget
from src.utils.errors import LatticeError

logger = logging.getLogger(__name__)

Mask = Tuple[bool, ...]
Edges = Tuple[Horizontal, ...]


@dataclass(frozen=True)
class LatticeSystem:
    """
    有限格子系

    Attributes
    ----------
    n : int
        リボンのサイズ（各頂点の水平方向の本数）
    rows : Tuple[RowSpec, ...]
        上から下への行
    columns : int
        列数
    top, bottom : Mask
        上端・下端の縦辺ラベル（True = ∧）
    sides : Tuple[Horizontal, ...]
        各行の左右境界ラベル
    width : int
        β集合の幅（粒子数）
    """

    n: int
    rows: Tuple[RowSpec, ...]
    columns: int
    top: Mask
    bottom: Mask
    sides: Tuple[Horizontal, ...]
    width: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise LatticeError(f"nは1以上: n={self.n}")
        if len(self.top) != self.columns or len(self.bottom) != self.columns:
            raise LatticeError(
                f"境界マスクの長さが列数と一致しない: columns={self.columns}, top={len(self.top)}, bottom={len(self.bottom)}"
            )
        if len(self.sides) != len(self.rows):
            raise LatticeError(f"側面ラベルの数が行数と一致しない: rows={len(self.rows)}, sides={len(self.sides)}")
        if sum(self.top) != sum(self.bottom):
            raise LatticeError(f"上下の粒子数が一致しない: top={sum(self.top)}, bottom={sum(self.bottom)}")

    @property
    def top_partition(self) -> Partition:
        return from_beta(beta_from_mask(self.top))

    @property
    def bottom_partition(self) -> Partition:
        return from_beta(beta_from_mask(self.bottom))

    def with_rows(self, rows: Sequence[RowSpec]) -> "LatticeSystem":
        return LatticeSystem(self.n, tuple(rows), self.columns, self.top, self.bottom, self.sides, self.width)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rows": [{"kind": r.kind.value, "spectral": r.spectral.name, "side": s.value} for r, s in zip(self.rows, self.sides)],
            "columns": self.columns,
            "width": self.width,
            "topMask": [int(b) for b in self.top],
            "bottomMask": [int(b) for b in self.bottom],
        }


def rows_for_order(order: AlphabetOrder, alternate: bool = False) -> Tuple[RowSpec, ...]:
    rows = []
    for letter in order.letters:
        kind = RowKind.H if letter.kind == LetterKind.HORIZONTAL else RowKind.V
        rows.append(RowSpec(kind.tilde if alternate else kind, letter.spectral))
    return tuple(rows)


def default_width(shape: SkewShape, rows: int) -> int:
    return max(shape.outer.length, rows)


def build_original_system(shape: SkewShape, n: int, order: AlphabetOrder, width: Optional[int] = None) -> LatticeSystem:
    """B_{λ/μ}: 下端 λ+ρ、上端 μ+ρ、左右境界は全て >"""
    rows = rows_for_order(order, alternate=False)
    return _build(shape, n, rows, width, alternate=False)


def build_alternate_system(shape: SkewShape, n: int, order: AlphabetOrder, width: Optional[int] = None) -> LatticeSystem:
    """B~_{λ/μ}: 上端 λ+ρ、下端 μ+ρ、左右境界は全て <"""
    rows = rows_for_order(order, alternate=True)
    return _build(shape, n, rows, width, alternate=True)


def build_system(shape: SkewShape, n: int, rows: Sequence[RowSpec], width: Optional[int] = None) -> LatticeSystem:
    """行種別から原模型／交代模型を判定して系を作る（混在は不可）"""
    kinds = {r.kind.is_alternate for r in rows}
    if len(kinds) > 1:
        raise LatticeError("原模型と交代模型の行が混在している（Cauchy窓を使う）")
    return _build(shape, n, tuple(rows), width, alternate=bool(kinds and kinds.pop()))


def _build(shape: SkewShape, n: int, rows: Tuple[RowSpec, ...], width: Optional[int], alternate: bool) -> LatticeSystem:
    if width is None:
        width = default_width(shape, len(rows))
    if width < shape.outer.length:
        raise LatticeError(f"幅がℓ(λ)より小さい: width={width}, ℓ(λ)={shape.outer.length}")
    columns = shape.outer.first + width
    outer_mask = to_beta(shape.outer, width).mask(columns)
    inner_mask = to_beta(shape.inner, width).mask(columns)
    side = Horizontal.LEFT if alternate else Horizontal.RIGHT
    top, bottom = (outer_mask, inner_mask) if alternate else (inner_mask, outer_mask)
    return LatticeSystem(
        n=n,
        rows=rows,
        columns=columns,
        top=top,
        bottom=bottom,
        sides=tuple(side for _ in rows),
        width=width,
    )


@dataclass(frozen=True)
class RowState:
    top: Mask
    bottom: Mask
    outputs: Tuple[Horizontal, ...]
    side: Horizontal

    def label(self, c: int) -> Horizontal:
        # o_c。負の添字は左境界
        return self.side if c < 0 else self.outputs[c]

    def site(self, c: int, n: int) -> VertexSite:
        return VertexSite(
            north=Vertical.UP if self.top[c] else Vertical.DOWN,
            south=Vertical.UP if self.bottom[c] else Vertical.DOWN,
            west=tuple(self.label(c - n + i) for i in range(n)),
            east=tuple(self.label(c - n + 1 + i) for i in range(n)),
        )


@dataclass(frozen=True)
class LatticeState:
    system: LatticeSystem
    rows: Tuple[RowState, ...]
    weight: MPoly

    def interrow_masks(self) -> List[Mask]:
        """上端から下端までの各段の縦辺ラベル"""
        if not self.rows:
            return [self.system.top]
        return [self.rows[0].top] + [r.bottom for r in self.rows]

    def interrow_partitions(self) -> List[Partition]:
        return [from_beta(beta_from_mask(m)) for m in self.interrow_masks()]

    def vertex_types(self) -> List[List[Optional[VertexType]]]:
        n = self.system.n
        out = []
        for rs in self.rows:
            types = []
            for c in range(self.system.columns):
                site = rs.site(c, n)
                a = int(site.south == Vertical.UP)
                b = int(site.north == Vertical.UP)
                w = int(site.west[0] == Horizontal.RIGHT)
                e = int(site.east[-1] == Horizontal.RIGHT)
                types.append(classify(a, b, w, e))
            out.append(types)
        return out

    def to_json(self) -> dict:
        return {
            "weight": self.weight.to_json(),
            "masks": [[int(b) for b in m] for m in self.interrow_masks()],
            "outputs": [[o.value for o in r.outputs] for r in self.rows],
        }


def _vertex(kind: RowKind, spectral: VarId, n: int, a: int, b: int, window: Tuple[Horizontal, ...], out: Horizontal) -> Tuple[Optional[VertexType], MPoly]:
    # window = (o_{c-n}, ..., o_{c-1})
    w = int(window[0] == Horizontal.RIGHT)
    e = int(out == Horizontal.RIGHT)
    vtype = classify(a, b, w, e)
    if vtype is None:
        return None, MPoly.zero()
    straight = window[1:]
    left = sum(1 for h in straight if h == Horizontal.LEFT)
    return vtype, weight_for(vtype, kind, spectral, left, len(straight) - left)


def vertex_step(row: RowSpec, n: int, window: Edges, north: int, south: int) -> Optional[Tuple[Horizontal, MPoly]]:
    """
    1列分の遷移。window はその列に西から入る n 本のラベル。

    東へ出るラベル o_c と頂点の重みを返す。許容でなければ None
    """
    w = int(window[0] == Horizontal.RIGHT)
    e = south + w - north
    if e not in (0, 1):
        return None
    out = Horizontal.RIGHT if e else Horizontal.LEFT
    vtype, wt = _vertex(row.kind, row.spectral, n, south, north, window, out)
    if vtype is None:
        return None
    return out, wt


def _row_paths(
    row: RowSpec,
    side: Horizontal,
    n: int,
    top: Mask,
    bottom: Optional[Mask],
    include_zero: bool,
) -> Iterator[Tuple[Mask, Tuple[Horizontal, ...], MPoly]]:
    """1行の全状態（下端マスク、出力列、重み）。bottomを与えると下端を固定する"""
    columns = len(top)

    def walk(c: int, window: Tuple[Horizontal, ...], bits: Tuple[bool, ...], outs: Tuple[Horizontal, ...], weight: MPoly):
        if c == columns:
            if all(h == side for h in window):
                yield bits, outs, weight
            return
        b = int(top[c])
        choices = (int(bottom[c]),) if bottom is not None else (0, 1)
        w = int(window[0] == Horizontal.RIGHT)
        for a in choices:
            e = a + w - b
            if e not in (0, 1):
                continue
            out = Horizontal.RIGHT if e else Horizontal.LEFT
            vtype, wt = _vertex(row.kind, row.spectral, n, a, b, window, out)
            if vtype is None:
                continue
            if wt.is_zero() and not include_zero:
                continue
            yield from walk(c + 1, window[1:] + (out,), bits + (bool(a),), outs + (out,), weight * wt)

    yield from walk(0, tuple(side for _ in range(n)), (), (), MPoly.one())


@lru_cache(maxsize=None)
def row_transfer(
    row: RowSpec,
    side: Horizontal,
    n: int,
    top: Mask,
    left: Optional[Edges] = None,
    right: Optional[Edges] = None,
) -> Tuple[Tuple[Mask, MPoly], ...]:
    """
    上端マスクを固定した1行の転送：下端マスク → 重みの和。

    列ごとに (直前n個の出力) を状態とする動的計画法で計算する。
    left / right は左端の W と右端の E の組。省略時は side を n 個並べたもの。
    """
    columns = len(top)
    start = left if left is not None else tuple(side for _ in range(n))
    end = right if right is not None else tuple(side for _ in range(n))
    layer: Dict[Tuple[Edges, Tuple[bool, ...]], MPoly] = {(start, ()): MPoly.one()}
    for c in range(columns):
        b = int(top[c])
        nxt: Dict[Tuple[Edges, Tuple[bool, ...]], MPoly] = {}
        for (window, bits), weight in layer.items():
            for a in (0, 1):
                step = vertex_step(row, n, window, b, a)
                if step is None or step[1].is_zero():
                    continue
                out, wt = step
                key = (window[1:] + (out,), bits + (bool(a),))
                nxt[key] = nxt.get(key, MPoly.zero()) + weight * wt
        layer = nxt
    result: Dict[Mask, MPoly] = {}
    for (window, bits), weight in layer.items():
        if window == end:
            result[bits] = result.get(bits, MPoly.zero()) + weight
    return tuple(sorted(((m, p) for m, p in result.items() if not p.is_zero()), key=lambda kv: kv[0]))


def partition_function(
    system: LatticeSystem,
    max_degree: Optional[int] = None,
    degree_variables: Optional[Sequence[VarId]] = None,
    edges: Optional[Mapping[int, Tuple[Edges, Edges]]] = None,
) -> MPoly:
    """
    Z = Σ_状態 ∏ wt(v)。行ごとに「段のマスク → 多項式」を更新して求める。

    max_degree を与えると、各段で非q変数の次数がそれを超える項を捨てる
    （全ての頂点重みが単項式なので、途中で捨てても結果の低次部分は変わらない）。
    edges は行番号 → (左端の W, 右端の E) で、その行の左右境界を個別に与える。
    """
    edges = edges or {}
    variables = tuple(degree_variables) if degree_variables is not None else tuple(r.spectral for r in system.rows)
    layer: Dict[Mask, MPoly] = {system.top: MPoly.one()}
    for i, (row, side) in enumerate(zip(system.rows, system.sides)):
        left, right = edges.get(i, (None, None))
        nxt: Dict[Mask, MPoly] = {}
        for top, coeff in layer.items():
            for bottom, weight in row_transfer(row, side, system.n, top, left, right):
                term = coeff * weight
                if max_degree is not None:
                    term = truncate_in(term, max_degree, variables)
                    if term.is_zero():
                        continue
                nxt[bottom] = nxt.get(bottom, MPoly.zero()) + term
        layer = {m: p for m, p in nxt.items() if not p.is_zero()}
    return layer.get(system.bottom, MPoly.zero())


def enumerate_states(
    system: LatticeSystem,
    include_zero: bool = False,
    budget: Optional[Budget] = None,
) -> Iterator[LatticeState]:
    """
    状態を上の行から順に列挙する。

    include_zero=True のときは重み0の許容状態も返す。
    """
    rows = system.rows
    if not rows:
        if system.top == system.bottom:
            yield LatticeState(system, (), MPoly.one())
        return

    def walk(i: int, top: Mask, acc: Tuple[RowState, ...], weight: MPoly):
        row, side = rows[i], system.sides[i]
        last = i == len(rows) - 1
        fixed = system.bottom if last else None
        for bottom, outs, wt in _row_paths(row, side, system.n, top, fixed, include_zero):
            if budget is not None:
                budget.tick()
            state_row = RowState(top=top, bottom=bottom, outputs=outs, side=side)
            total = weight * wt
            if last:
                yield LatticeState(system, acc + (state_row,), total)
            else:
                yield from walk(i + 1, bottom, acc + (state_row,), total)

    yield from walk(0, system.top, (), MPoly.one())


def render_state(state: LatticeState) -> str:
    """
    状態のASCII描画。各行について、上端の縦辺、水平ラベル（列ごとにn本の出力）、
    下端の縦辺を並べる。
    """
    system = state.system
    n = system.n
    lines = []
    header = "     " + " ".join(f"{c + 1:>{n + 2}}" for c in range(system.columns))
    lines.append(header)

    def vertical_line(mask: Mask) -> str:
        return "     " + " ".join(f"{(Vertical.UP if b else Vertical.DOWN).symbol:>{n + 2}}" for b in mask)

    if not state.rows:
        lines.append(vertical_line(system.top))
        return "\n".join(lines)
    for i, (rs, spec) in enumerate(zip(state.rows, system.rows)):
        if i == 0:
            lines.append(vertical_line(rs.top))
        cells = []
        for c in range(system.columns):
            east = rs.site(c, n).east
            cells.append("[" + "".join(h.symbol for h in east) + "]")
        lines.append(f"{spec.kind.value:<2}{rs.side.symbol}  " + " ".join(cells) + f" {rs.side.symbol}")
        lines.append(vertical_line(rs.bottom))
    lines.append(f"weight = {state.weight}")
    return "\n".join(lines)


__all__ = [
    "LatticeState",
    "LatticeSystem",
    "Mask",
    "RowState",
    "build_alternate_system",
    "build_original_system",
    "build_system",
    "enumerate_states",
    "partition_function",
    "render_state",
    "row_transfer",
    "rows_for_order",
    "vertex_step",
]
