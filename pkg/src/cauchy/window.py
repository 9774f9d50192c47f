"""
Cauchy 格子系の有限窓

原模型の行（X/Y の文字）と交代模型の行（W/Z の文字）を縦に積んだ系で、
I_A は原模型を上、交代模型を下に置き、上端 μ、下端 ν、境目の段 λ について
Z = Σ_λ 𝒢_{λ/μ}(X/Y) 𝒢_{λ/ν}(W/Z) となる。I_B は交代模型を上に置き
Z = Σ_{λ ⊆ μ∩ν} 𝒢_{μ/λ}(W/Z) 𝒢_{ν/λ}(X/Y) となる（有限和）。

半無限の格子は、窓の左側を全て粒子、右側を全て空とみなした有限の列で表す。
窓の左端の粒子が動く状態や右端の列に粒子が届く状態があれば、窓が小さすぎる。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import product as cartesian
from typing import Dict, List, Optional, Tuple, Union

from src.algebra.poly import Family, MPoly, VarId, poly_sum, series_truncate, specialize, truncate_in
from src.cauchy.identities import CauchySpec, dual_llt_product
from src.combinatorics.shapes import Partition, SkewShape, all_subpartitions, superpartitions, to_beta
from src.combinatorics.tableaux import AlphabetOrder, super_llt
from src.lattice.system import Edges, LatticeSystem, Mask, partition_function, row_transfer, rows_for_order
from src.lattice.vertices import Horizontal, RowSpec
from src.rmatrix.weights import RKind, RVertex, particle_balance, r_weight
from src.utils.errors import LatticeError

logger = logging.getLogger(__name__)


class WindowOrder(str, Enum):
    I_A = "A"  # 原模型が上
    I_B = "B"  # 交代模型が上


@dataclass(frozen=True)
class CauchyWindow:
    """
    Attributes
    ----------
    mu, nu : Partition
        上端・下端の分割
    order : WindowOrder
        I_A / I_B
    xy_order, wz_order : AlphabetOrder
        原模型の行の文字と交代模型の行の文字（W/Z 族の変数）
    width : int
        粒子数
    columns : int
        列数
    """

    n: int
    mu: Partition
    nu: Partition
    order: WindowOrder
    xy_order: AlphabetOrder
    wz_order: AlphabetOrder
    width: int
    columns: int

    def __post_init__(self):
        if self.width < max(self.mu.length, self.nu.length):
            raise LatticeError(f"粒子数がℓ(μ), ℓ(ν)より小さい: width={self.width}")
        if self.columns < max(self.mu.first, self.nu.first) + self.width:
            raise LatticeError(f"列数が足りない: columns={self.columns}")

    @classmethod
    def build(
        cls,
        n: int,
        mu: Partition,
        nu: Partition,
        order: Union[WindowOrder, str],
        xy_order: AlphabetOrder,
        wz_order: AlphabetOrder,
        degree: Optional[int] = None,
    ) -> "CauchyWindow":
        """
        窓の大きさを自動で決める。

        I_B は λ ⊆ μ∩ν なので μ, ν が入れば十分。I_A は次数 degree までに効く
        |λ| ≤ (n·degree + |μ| + |ν|)/2 の全ての λ が、端の列に触れずに入る大きさにする
        （左に動かない粒子を1つ、右に空の列を1つ余分に置く）。
        """
        order = WindowOrder(order)
        largest = max(mu.size, nu.size)
        if order == WindowOrder.I_A:
            if degree is None:
                raise ValueError("I_A の窓には打ち切り次数が必要")
            largest = max(largest, (n * degree + mu.size + nu.size) // 2)
            width = max(mu.length, nu.length, largest) + 1
            columns = largest + width + 1
        else:
            width = max(mu.length, nu.length)
            columns = max(mu.first, nu.first) + width
        return cls(n, mu, nu, order, xy_order, wz_order, width, columns)

    def widened(self, extra: int) -> "CauchyWindow":
        """粒子数と列数を extra ずつ増やす（μ, ν の0埋めに相当）"""
        return replace(self, width=self.width + extra, columns=self.columns + extra)

    @property
    def original_rows(self) -> Tuple[RowSpec, ...]:
        return rows_for_order(self.xy_order, alternate=False)

    @property
    def alternate_rows(self) -> Tuple[RowSpec, ...]:
        return rows_for_order(self.wz_order, alternate=True)

    @property
    def rows(self) -> Tuple[RowSpec, ...]:
        if self.order == WindowOrder.I_A:
            return self.original_rows + self.alternate_rows
        return self.alternate_rows + self.original_rows

    @property
    def interface(self) -> int:
        """境目の上側の行の番号"""
        upper = self.original_rows if self.order == WindowOrder.I_A else self.alternate_rows
        return len(upper) - 1

    def variables(self) -> Tuple[VarId, ...]:
        return tuple(r.spectral for r in self.rows)

    def system(self) -> LatticeSystem:
        rows = self.rows
        return LatticeSystem(
            n=self.n,
            rows=rows,
            columns=self.columns,
            top=to_beta(self.mu, self.width).mask(self.columns),
            bottom=to_beta(self.nu, self.width).mask(self.columns),
            sides=tuple(r.kind.side_label for r in rows),
            width=self.width,
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mu": self.mu.to_json(),
            "nu": self.nu.to_json(),
            "order": self.order.value,
            "xy": self.xy_order.spec(),
            "wz": self.wz_order.spec(),
            "width": self.width,
            "columns": self.columns,
        }


def window_partition_function(w: CauchyWindow, degree: Optional[int] = None) -> MPoly:
    """窓の分配関数。degree を与えると q 以外の変数の総次数で打ち切る"""
    result = partition_function(w.system(), max_degree=degree, degree_variables=w.variables())
    return series_truncate(result, degree) if degree is not None else result


def window_sum(w: CauchyWindow, degree: Optional[int] = None) -> Tuple[MPoly, List[Partition]]:
    """境目の段 λ で切ったときの Σ_λ の側（タブロー経路）"""
    terms: List[MPoly] = []
    shapes: List[Partition] = []
    n = w.n
    if w.order == WindowOrder.I_B:
        inter = Partition(tuple(min(w.mu[i], w.nu[i]) for i in range(min(w.mu.length, w.nu.length))))
        for lam in all_subpartitions(inter):
            if (w.mu.size - lam.size) % n or (w.nu.size - lam.size) % n:
                continue
            upper = super_llt(SkewShape(w.mu, lam), n, w.wz_order)
            if upper.is_zero():
                continue
            term = upper * super_llt(SkewShape(w.nu, lam), n, w.xy_order)
            if not term.is_zero():
                terms.append(term)
                shapes.append(lam)
    else:
        if degree is None:
            raise ValueError("I_A の和には打ち切り次数が必要")
        limit = (n * degree + w.mu.size + w.nu.size) // 2
        for added in range(0, max(limit - w.mu.size, -1) + 1):
            for lam in superpartitions(w.mu, added):
                if not lam.contains(w.nu) or (lam.size - w.mu.size) % n or (lam.size - w.nu.size) % n:
                    continue
                upper = super_llt(SkewShape(lam, w.mu), n, w.xy_order)
                if upper.is_zero():
                    continue
                term = series_truncate(upper * super_llt(SkewShape(lam, w.nu), n, w.wz_order), degree)
                if not term.is_zero():
                    terms.append(term)
                    shapes.append(lam)
    total = poly_sum(terms)
    return (series_truncate(total, degree) if degree is not None else total), shapes


def _edge_columns(system: LatticeSystem) -> Tuple[bool, bool]:
    """(左端が粒子の海か, 右端が空か)。上端・下端の両方でそうなっている端だけを調べる"""
    last = system.columns - 1
    sea = system.top[0] and system.bottom[0]
    void = not system.top[last] and not system.bottom[last]
    return sea, void


def edge_contribution(w: CauchyWindow, degree: Optional[int] = None) -> MPoly:
    """
    窓の端に触れる状態の重みの和。

    左端の列が上端・下端で粒子なのに途中の段で空になる状態と、右端の列が上端・下端で
    空なのに途中の段で粒子を持つ状態を数える。0 でなければ窓が小さすぎる。
    """
    system = w.system()
    last = system.columns - 1
    sea, void = _edge_columns(system)
    variables = w.variables()

    def touches(mask: Mask) -> bool:
        return (sea and not mask[0]) or (void and mask[last])

    layer: Dict[Tuple[Mask, bool], MPoly] = {(system.top, False): MPoly.one()}
    for row, side in zip(system.rows, system.sides):
        nxt: Dict[Tuple[Mask, bool], MPoly] = {}
        for (top, touched), coeff in layer.items():
            for bottom, weight in row_transfer(row, side, system.n, top):
                term = coeff * weight
                if degree is not None:
                    term = truncate_in(term, degree, variables)
                    if term.is_zero():
                        continue
                key = (bottom, touched or touches(bottom))
                nxt[key] = nxt.get(key, MPoly.zero()) + term
        layer = {key: p for key, p in nxt.items() if not p.is_zero()}
    result = layer.get((system.bottom, True), MPoly.zero())
    return series_truncate(result, degree) if degree is not None else result


@dataclass
class WindowReport:
    window: dict
    z: MPoly
    expected: MPoly
    terms: List[Partition] = field(default_factory=list)
    dual_residual: Optional[MPoly] = None
    widening_residual: MPoly = field(default_factory=MPoly.zero)
    edge_weight: MPoly = field(default_factory=MPoly.zero)

    @property
    def residual(self) -> MPoly:
        return self.z - self.expected

    @property
    def passed(self) -> bool:
        dual_ok = self.dual_residual is None or self.dual_residual.is_zero()
        return self.residual.is_zero() and dual_ok and not self.too_small

    @property
    def too_small(self) -> bool:
        """広げると Z が変わるか、端に触れる状態がある"""
        return not (self.widening_residual.is_zero() and self.edge_weight.is_zero())

    def to_json(self) -> dict:
        payload = {
            "window": self.window,
            "terms": [lam.to_json() for lam in self.terms],
            "residual": self.residual.to_json(),
            "wideningResidual": self.widening_residual.to_json(),
            "tooSmall": self.too_small,
            "passed": self.passed,
        }
        if self.dual_residual is not None:
            payload["dualResidual"] = self.dual_residual.to_json()
        return payload


def _is_dual_case(w: CauchyWindow) -> bool:
    return (
        w.order == WindowOrder.I_A
        and w.xy_order.vertical_count == 0
        and w.wz_order.horizontal_count == 0
        and not w.mu.size
        and not w.nu.size
    )


def verify_window(w: CauchyWindow, degree: Optional[int] = None, widen: int = 1) -> WindowReport:
    """
    窓の Z を境目で切った Σ_λ と比べる（I_B は打ち切りなし、I_A は次数 degree で打ち切り）。

    あわせて、widen 個の0を μ, ν に足した窓でも Z が同じことと、端に触れる状態がないことを確かめる。

    I_A で原模型が全て H、交代模型が全て Ṽ、μ = ν = ∅ の場合は、z → -z として
    双対 Cauchy の積 ∏(1 + q^{2t} x z) とも比べる。
    """
    if w.order == WindowOrder.I_A and degree is None:
        raise ValueError("I_A の検証には打ち切り次数が必要")
    bound = degree if w.order == WindowOrder.I_A else None
    z = window_partition_function(w, bound)
    expected, shapes = window_sum(w, bound)
    report = WindowReport(window=w.to_json(), z=z, expected=expected, terms=shapes)
    if widen > 0:
        report.widening_residual = window_partition_function(w.widened(widen), bound) - z
    report.edge_weight = edge_contribution(w, bound)
    if report.too_small:
        logger.warning(f"Cauchy窓が小さすぎる: window={w.to_json()}, degree={degree}")

    if _is_dual_case(w):
        zs = [letter.spectral for letter in w.wz_order.letters]
        flipped = specialize(z, {v: -MPoly.var(v) for v in zs})
        spec = CauchySpec(n=w.n, nx=w.xy_order.horizontal_count, ny=len(zs), degree=0)
        product_side = dual_llt_product(spec)
        renamed = specialize(product_side, {VarId(Family.Y, v.index): MPoly.var(v) for v in zs})
        report.dual_residual = series_truncate(flipped - renamed, degree)

    if not report.passed:
        logger.warning(f"Cauchy窓の不一致: window={w.to_json()}, degree={degree}")
    return report


@dataclass
class BraidExperiment:
    """境目の2行に R 頂点を付けて反対側へ押し出したときの両辺（合否は判定しない）"""

    case: dict
    lhs: MPoly
    rhs: MPoly
    unbalanced_configs: int = 0

    @property
    def residual(self) -> MPoly:
        return self.lhs - self.rhs

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "residual": self.residual.to_json(),
            "unbalancedConfigs": self.unbalanced_configs,
        }


def _swap(system: LatticeSystem, r: int) -> LatticeSystem:
    rows = list(system.rows)
    sides = list(system.sides)
    rows[r], rows[r + 1] = rows[r + 1], rows[r]
    sides[r], sides[r + 1] = sides[r + 1], sides[r]
    return LatticeSystem(system.n, tuple(rows), system.columns, system.top, system.bottom, tuple(sides), system.width)


def _exchange(left_system: LatticeSystem, r: int, degree: Optional[int], variables: Tuple[VarId, ...]) -> Tuple[MPoly, MPoly, RKind, int]:
    """
    left_system の行 r（行 i）と r+1（行 j）について
    Σ R(K, L, I, J)·Z(左端 I, J) と Σ Z(行を入れ替え、右端 K', L')·R(K', L', Et, Eb) を返す。
    """
    n = left_system.n
    row_i, row_j = left_system.rows[r], left_system.rows[r + 1]
    kind = RKind.for_rows(row_i.kind, row_j.kind)
    spectral = (row_i.spectral, row_j.spectral)
    side_i = tuple(row_i.kind.side_label for _ in range(n))
    side_j = tuple(row_j.kind.side_label for _ in range(n))
    tuples: List[Edges] = list(cartesian(Horizontal, repeat=n))
    right_system = _swap(left_system, r)

    def z(system: LatticeSystem, edges: Dict[int, Tuple[Edges, Edges]]) -> MPoly:
        return partition_function(system, max_degree=degree, degree_variables=variables, edges=edges)

    unbalanced = 0
    lhs_terms: List[MPoly] = []
    for I, J in cartesian(tuples, repeat=2):
        vertex = RVertex.from_edges(kind, side_i, side_j, I, J)
        weight = r_weight(vertex, spectral)
        if weight.is_zero():
            continue
        incoming, outgoing = particle_balance(kind, vertex.configs)
        unbalanced += incoming != outgoing
        lhs_terms.append(weight * z(left_system, {r: (I, side_i), r + 1: (J, side_j)}))

    rhs_terms: List[MPoly] = []
    for K_out, L_out in cartesian(tuples, repeat=2):
        vertex = RVertex.from_edges(kind, K_out, L_out, side_i, side_j)
        weight = r_weight(vertex, spectral)
        if weight.is_zero():
            continue
        rhs_terms.append(z(right_system, {r: (side_j, L_out), r + 1: (side_i, K_out)}) * weight)

    lhs, rhs = poly_sum(lhs_terms), poly_sum(rhs_terms)
    if degree is not None:
        lhs, rhs = series_truncate(lhs, degree), series_truncate(rhs, degree)
    return lhs, rhs, kind, unbalanced


def braid_experiment(w: CauchyWindow, degree: Optional[int] = None) -> BraidExperiment:
    """
    I_A は R 頂点を左端に付けて右へ、I_B は右端に付けて左へ押し出す。

    どちらも境目で原模型の行が行 i、交代模型の行が行 j になる。
    """
    system = w.system()
    r = w.interface
    if r < 0 or r + 1 >= len(system.rows):
        raise LatticeError("境目の両側に行がない")
    variables = w.variables()
    if w.order == WindowOrder.I_A:
        lhs, rhs, kind, unbalanced = _exchange(system, r, degree, variables)
    else:
        lhs, rhs, kind, unbalanced = _exchange(_swap(system, r), r, degree, variables)
    case = dict(w.to_json(), kind=kind.value, degree=degree)
    experiment = BraidExperiment(case=case, lhs=lhs, rhs=rhs, unbalanced_configs=unbalanced)
    if not experiment.residual.is_zero():
        logger.warning(f"R頂点の押し出しで残差: kind={kind.value}, window={w.to_json()}")
    return experiment


__all__ = [
    "BraidExperiment",
    "CauchyWindow",
    "WindowOrder",
    "WindowReport",
    "braid_experiment",
    "verify_window",
    "window_partition_function",
    "window_sum",
]
