"""
分岐則の検証

Z(全体) = Σ_γ Z(下側 λ/γ) · Z(上側 γ/μ) を各 γ について計算して比較し、
さらに全体系の各状態について段間の粒子配置が連鎖条件を満たすかを調べる。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from src.algebra.poly import MPoly
from src.combinatorics.shapes import Partition, SkewShape, intermediate_partitions
from src.combinatorics.tableaux import AlphabetOrder
from src.lattice.system import (
    LatticeState,
    build_original_system,
    enumerate_states,
    partition_function,
)
from src.lattice.vertices import RowKind
from src.utils.budget import Budget

logger = logging.getLogger(__name__)


@dataclass
class ChainViolation:
    state_index: int
    step: int
    row_kind: str
    upper: List[int]
    lower: List[int]

    def to_json(self) -> dict:
        return {
            "state": self.state_index,
            "step": self.step,
            "rowKind": self.row_kind,
            "upper": self.upper,
            "lower": self.lower,
        }


@dataclass
class BranchingReport:
    shape: SkewShape
    n: int
    order: str
    cut: int
    lhs: MPoly
    rhs: MPoly
    intermediates: List[Partition] = field(default_factory=list)
    states_checked: int = 0
    chain_violations: List[ChainViolation] = field(default_factory=list)

    @property
    def residual(self) -> MPoly:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.residual.is_zero() and not self.chain_violations

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "n": self.n,
            "order": self.order,
            "cut": self.cut,
            "residual": self.residual.to_json(),
            "intermediates": [g.to_json() for g in self.intermediates],
            "statesChecked": self.states_checked,
            "chainViolations": [v.to_json() for v in self.chain_violations],
            "passed": self.passed,
        }


def _positions(mask: Sequence[bool]) -> List[int]:
    return [c + 1 for c, on in enumerate(mask) if on]


def _allowed(u: int, l: int, n: int, kind: RowKind, upper_set, lower_set) -> bool:
    d = l - u
    if d % n != 0:
        return False
    if kind.is_horizontal:
        # 両段に共通の位置は同じ粒子
        return u == l or (u not in lower_set and l not in upper_set)
    return d in (0, n)


def step_satisfies_chain(upper: Sequence[int], lower: Sequence[int], n: int, kind: RowKind) -> bool:
    """
    1行ぶんの粒子移動が連鎖条件を満たすか。

    粒子の対応付けで全ての差が nZ に入るものが存在し、さらに
    H 行では両段に共通の位置は自分自身に対応し、V 行では差が {0, n} に限られる。
    対応付けはバックトラックで探す。
    """
    if len(upper) != len(lower):
        return False
    upper = sorted(upper)
    lower = sorted(lower)
    upper_set = set(upper)
    lower_set = set(lower)
    used = [False] * len(lower)

    def assign(i: int) -> bool:
        if i == len(upper):
            return True
        for j, l in enumerate(lower):
            if used[j] or not _allowed(upper[i], l, n, kind, upper_set, lower_set):
                continue
            used[j] = True
            if assign(i + 1):
                return True
            used[j] = False
        return False

    return assign(0)


def check_chain_conditions(states: Sequence[LatticeState], n: int) -> Tuple[int, List[ChainViolation]]:
    violations: List[ChainViolation] = []
    count = 0
    for idx, state in enumerate(states):
        if state.weight.is_zero():
            continue
        count += 1
        masks = state.interrow_masks()
        for step, spec in enumerate(state.system.rows):
            upper = _positions(masks[step])
            lower = _positions(masks[step + 1])
            if not step_satisfies_chain(upper, lower, n, spec.kind):
                violations.append(ChainViolation(idx, step, spec.kind.value, upper, lower))
    return count, violations


def verify_branching(
    shape: SkewShape,
    n: int,
    order: AlphabetOrder,
    cut: int,
    check_chains: bool = True,
    budget: Optional[Budget] = None,
) -> BranchingReport:
    """
    上から cut 行（小さい文字側）で系を切り、γ についての和と比較する。

    Parameters
    ----------
    shape : SkewShape
        λ/μ
    n : int
        リボンのサイズ
    order : AlphabetOrder
        文字の全順序（行は上から小さい順）
    cut : int
        上側に含める行数（0 ≤ cut ≤ 行数。両端は自明な分解）
    """
    letters = order.letters
    if not 0 <= cut <= len(letters):
        raise ValueError(f"切断位置が範囲外: cut={cut}, rows={len(letters)}")
    upper_order = AlphabetOrder(letters[:cut])
    lower_order = AlphabetOrder(letters[cut:])
    width = max(shape.outer.length, len(letters))

    full = build_original_system(shape, n, order, width=width)
    lhs = partition_function(full)

    intermediates: List[Partition] = []
    rhs = MPoly.zero()
    for added in range(0, shape.size + 1, n):
        for gamma in intermediate_partitions(shape.inner, shape.outer, added):
            upper = partition_function(build_original_system(SkewShape(gamma, shape.inner), n, upper_order, width=width))
            if upper.is_zero():
                continue
            lower = partition_function(build_original_system(SkewShape(shape.outer, gamma), n, lower_order, width=width))
            if lower.is_zero():
                continue
            intermediates.append(gamma)
            rhs = rhs + upper * lower

    report = BranchingReport(
        shape=shape,
        n=n,
        order=order.spec(),
        cut=cut,
        lhs=lhs,
        rhs=rhs,
        intermediates=intermediates,
    )
    if check_chains:
        states = list(enumerate_states(full, budget=budget))
        report.states_checked, report.chain_violations = check_chain_conditions(states, n)

    if not report.passed:
        logger.warning(
            f"分岐則の不一致: shape={shape}, n={n}, order={order.spec()}, cut={cut}, "
            f"chain_violations={len(report.chain_violations)}"
        )
    return report


def interrow_shapes_within(state: LatticeState, shape: SkewShape) -> bool:
    """全ての段の分割 γ が μ ⊆ γ ⊆ λ を満たすか"""
    for gamma in state.interrow_partitions():
        if not (shape.outer.contains(gamma) and gamma.contains(shape.inner)):
            return False
    return True


__all__ = [
    "BranchingReport",
    "ChainViolation",
    "check_chain_conditions",
    "interrow_shapes_within",
    "step_satisfies_chain",
    "verify_branching",
]
