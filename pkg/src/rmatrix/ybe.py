"""
ヤン・バクスター方程式の網羅的検証

左辺は R 頂点を左に置き、行 i を上、行 j を下に通す。右辺は行 j を上、行 i を下に通してから
R 頂点を右に置く。外周のラベル（上 a、下 b、左 K/L、右 Et/Eb）を全て列挙し、
内部の自由なラベル（縦の辺1本と、直進で決まらない横の辺2本）について両辺を和にして比べる。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Iterator, List, Optional, Tuple, Union

from src.algebra.poly import MPoly, VarId, poly_sum
from src.lattice.vertices import Horizontal, RowSpec, Vertical, VertexSite, vertex_weight
from src.rmatrix.weights import (
    PINNED_ASSIGNMENT,
    RKind,
    RTypeAssignment,
    RVertex,
    StrandOrder,
    r_weight,
)
from src.utils.budget import Budget

logger = logging.getLogger(__name__)

Edges = Tuple[Horizontal, ...]


def _labels(edges: Edges) -> str:
    return "".join(h.symbol for h in edges)


@dataclass(frozen=True)
class YBEBoundary:
    a: Vertical
    b: Vertical
    K: Edges
    L: Edges
    Et: Edges
    Eb: Edges

    def to_json(self) -> dict:
        return {
            "a": self.a.symbol,
            "b": self.b.symbol,
            "K": _labels(self.K),
            "L": _labels(self.L),
            "Et": _labels(self.Et),
            "Eb": _labels(self.Eb),
        }


@dataclass
class YBEFailure:
    boundary: YBEBoundary
    lhs: MPoly
    rhs: MPoly

    def to_json(self) -> dict:
        return {
            "boundary": self.boundary.to_json(),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "residual": (self.lhs - self.rhs).to_json(),
        }


@dataclass
class YBEReport:
    kind: RKind
    n: int
    order: StrandOrder
    boundaries_checked: int = 0
    nonzero_boundaries: int = 0
    failures: List[YBEFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "strandOrder": self.order.value,
            "boundariesChecked": self.boundaries_checked,
            "nonzeroBoundaries": self.nonzero_boundaries,
            "failures": [f.to_json() for f in self.failures],
            "passed": self.passed,
        }


def iter_boundaries(n: int) -> Iterator[YBEBoundary]:
    """2^(4n+2) 通りの外周ラベル"""
    tuples = list(cartesian(Horizontal, repeat=n))
    for a, b in cartesian(Vertical, repeat=2):
        for K, L, Et, Eb in cartesian(tuples, repeat=4):
            yield YBEBoundary(a, b, K, L, Et, Eb)


def _conserved(boundary: YBEBoundary) -> bool:
    # 下から入る UP と左から入る > の数が、上と右から出る数に一致しない外周は両辺とも空和
    def rights(edges: Edges) -> int:
        return sum(1 for h in edges if h == Horizontal.RIGHT)

    incoming = rights(boundary.K) + rights(boundary.L) + (boundary.b == Vertical.UP)
    outgoing = rights(boundary.Et) + rights(boundary.Eb) + (boundary.a == Vertical.UP)
    return incoming == outgoing


def ybe_sides(
    kind: RKind,
    boundary: YBEBoundary,
    spectral: Tuple[VarId, VarId],
    assignment: RTypeAssignment = PINNED_ASSIGNMENT,
    order: StrandOrder = StrandOrder.TOP_FIRST,
) -> Tuple[MPoly, MPoly]:
    """1つの外周についての (左辺, 右辺)"""
    row_i_kind, row_j_kind = kind.rows
    row_i = RowSpec(row_i_kind, spectral[0])
    row_j = RowSpec(row_j_kind, spectral[1])
    K, L, Et, Eb = boundary.K, boundary.L, boundary.Et, boundary.Eb

    lhs_terms: List[MPoly] = []
    for c, i_first, j_first in cartesian(Vertical, Horizontal, Horizontal):
        # 行頂点は E(m) = W(m+1) なので、W は先頭以外 E から決まる
        I = (i_first,) + Et[:-1]
        J = (j_first,) + Eb[:-1]
        top = vertex_weight(VertexSite(boundary.a, c, I, Et), row_i)
        if top.is_zero():
            continue
        bottom = vertex_weight(VertexSite(c, boundary.b, J, Eb), row_j)
        if bottom.is_zero():
            continue
        r = r_weight(RVertex.from_edges(kind, K, L, I, J), spectral, assignment, order)
        if not r.is_zero():
            lhs_terms.append(r * top * bottom)

    rhs_terms: List[MPoly] = []
    for c, l_last, k_last in cartesian(Vertical, Horizontal, Horizontal):
        L_out = L[1:] + (l_last,)
        K_out = K[1:] + (k_last,)
        top = vertex_weight(VertexSite(boundary.a, c, L, L_out), row_j)
        if top.is_zero():
            continue
        bottom = vertex_weight(VertexSite(c, boundary.b, K, K_out), row_i)
        if bottom.is_zero():
            continue
        r = r_weight(RVertex.from_edges(kind, K_out, L_out, Et, Eb), spectral, assignment, order)
        if not r.is_zero():
            rhs_terms.append(top * bottom * r)

    return poly_sum(lhs_terms), poly_sum(rhs_terms)


def verify_ybe(
    kind: Union[RKind, str],
    n: int,
    assignment: Optional[RTypeAssignment] = None,
    order: Union[StrandOrder, str] = StrandOrder.TOP_FIRST,
    spectral: Optional[Tuple[VarId, VarId]] = None,
    budget: Optional[Budget] = None,
    stop_on_failure: bool = False,
) -> YBEReport:
    """
    全ての外周について YBE の両辺を比べる。

    Parameters
    ----------
    kind : RKind
        入れ替える2行の種別
    n : int
        リボンのサイズ（横の辺の組の長さ）
    stop_on_failure : bool
        最初の不一致で打ち切る（割り当ての総当たり用）
    """
    kind = RKind(kind)
    order = StrandOrder(order)
    if n < 1:
        raise ValueError(f"nは1以上: n={n}")
    assignment = assignment or PINNED_ASSIGNMENT
    spectral = spectral or kind.default_spectral()

    report = YBEReport(kind=kind, n=n, order=order)
    for boundary in iter_boundaries(n):
        report.boundaries_checked += 1
        if budget is not None:
            budget.tick()
        if not _conserved(boundary):
            continue
        lhs, rhs = ybe_sides(kind, boundary, spectral, assignment, order)
        if lhs.is_zero() and rhs.is_zero():
            continue
        report.nonzero_boundaries += 1
        if lhs != rhs:
            report.failures.append(YBEFailure(boundary, lhs, rhs))
            if stop_on_failure:
                break

    if report.failures and not stop_on_failure:
        logger.warning(
            f"YBEの不一致: kind={kind.value}, n={n}, order={order.value}, "
            f"failures={len(report.failures)}/{report.boundaries_checked}"
        )
    else:
        logger.info(
            f"YBE検証: kind={kind.value}, n={n}, order={order.value}, "
            f"boundaries={report.boundaries_checked}, passed={report.passed}"
        )
    return report


__all__ = [
    "YBEBoundary",
    "YBEFailure",
    "YBEReport",
    "iter_boundaries",
    "verify_ybe",
    "ybe_sides",
]
