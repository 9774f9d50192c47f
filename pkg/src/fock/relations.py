"""
ハイゼンベルク型の交換関係の検証

    D_b U_a   = Σ_{j=0}^{min(a,b)} κ(h_j) U_{a-j} D_{b-j}
    D̃_b Ũ_a  = Σ κ(h_j) Ũ_{a-j} D̃_{b-j}
    D̃_b U_a  = Σ κ(e_j) U_{a-j} D̃_{b-j}
    D_b Ũ_a  = Σ κ(e_j) Ũ_{a-j} D_{b-j}

を各 |μ⟩ に作用させて両辺を比べる。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Union

from src.algebra.poly import MPoly
from src.algebra.symmetric import q_evaluation_oracle
from src.combinatorics.shapes import Partition, ShapeBound
from src.fock.operators import FockVector, OperatorKind, apply_word, kappa, vector_sum
from src.utils.errors import CapExceededError

logger = logging.getLogger(__name__)


class CommutationPair(str, Enum):
    DU = "DU"
    DT_UT = "D~U~"
    DT_U = "D~U"
    D_UT = "DU~"

    @property
    def down(self) -> OperatorKind:
        return OperatorKind.D if self in (CommutationPair.DU, CommutationPair.D_UT) else OperatorKind.D_TILDE

    @property
    def up(self) -> OperatorKind:
        return OperatorKind.U if self in (CommutationPair.DU, CommutationPair.DT_U) else OperatorKind.U_TILDE

    @property
    def uses_elementary(self) -> bool:
        """同種のストリップ同士は κ(h)、異種は κ(e)"""
        return self in (CommutationPair.DT_U, CommutationPair.D_UT)


@dataclass
class CommutationCase:
    shape: Partition
    lhs: FockVector
    rhs: FockVector
    error: Optional[str] = None

    @property
    def residual(self) -> FockVector:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.error is None and self.residual.is_zero()

    def to_json(self, pair: CommutationPair) -> dict:
        payload = {
            "shape": self.shape.to_json(),
            "pair": pair.value,
            "residual": self.residual.to_json() if self.error is None else None,
            "passed": self.passed,
        }
        if self.error is not None:
            payload["error"] = self.error
        return payload


@dataclass
class CommutationReport:
    n: int
    a: int
    b: int
    pair: CommutationPair
    cases: List[CommutationCase] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(case.passed for case in self.cases)

    @property
    def failures(self) -> List[CommutationCase]:
        return [case for case in self.cases if not case.passed]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": self.a,
            "b": self.b,
            "pair": self.pair.value,
            "cases": [case.to_json(self.pair) for case in self.cases],
            "passed": self.passed,
        }


def _reachable_cap(mu: Partition, n: int, a: int) -> ShapeBound:
    # 左辺・右辺とも |μ| + n·a を超える形は現れない
    return ShapeBound(max_size=mu.size + n * a)


def verify_commutation(
    n: int,
    a: int,
    b: int,
    pair: Union[CommutationPair, str],
    domain: Sequence[Partition],
    cap: Optional[ShapeBound] = None,
) -> CommutationReport:
    """
    domain の各 |μ⟩ について交換関係の両辺を計算し、残差を報告する。

    cap を与えた場合、どちらかの辺の途中の形が cap を外れた μ は比較せず失敗として記録する。
    """
    pair = CommutationPair(pair)
    if a < 0 or b < 0:
        raise ValueError(f"a, b は0以上: a={a}, b={b}")
    values = kappa(n, min(a, b))
    coefficients = values.e if pair.uses_elementary else values.h

    report = CommutationReport(n=n, a=a, b=b, pair=pair)
    for mu in domain:
        bound = cap if cap is not None else _reachable_cap(mu, n, a)
        start = FockVector.basis(mu)
        try:
            lhs = apply_word([(pair.down, b), (pair.up, a)], start, n, cap=bound)
            rhs = vector_sum(
                apply_word([(pair.up, a - j), (pair.down, b - j)], start, n, cap=bound).scale(coefficients[j])
                for j in range(min(a, b) + 1)
            )
        except CapExceededError as e:
            logger.warning(f"上限により比較を中止: pair={pair.value}, n={n}, a={a}, b={b}, shape={mu}: {e}")
            report.cases.append(CommutationCase(mu, FockVector(), FockVector(), error=str(e)))
            continue
        case = CommutationCase(mu, lhs, rhs)
        if not case.passed:
            logger.warning(f"交換関係の不一致: pair={pair.value}, n={n}, a={a}, b={b}, shape={mu}")
        report.cases.append(case)
    return report


def kappa_residuals(n: int, j_max: int) -> List[MPoly]:
    """κ(h_j), κ(e_j) と (1, q², …, q^{2(n-1)}) での直接評価との差"""
    values = kappa(n, j_max)
    residuals = []
    for j in range(j_max + 1):
        residuals.append(values.h[j] - q_evaluation_oracle("h", j, n))
        residuals.append(values.e[j] - q_evaluation_oracle("e", j, n))
    return residuals


__all__ = [
    "CommutationCase",
    "CommutationPair",
    "CommutationReport",
    "kappa_residuals",
    "verify_commutation",
]
