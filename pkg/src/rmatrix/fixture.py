"""
R^(1) 配置と型名の割り当て、および r_k と段の対応の固定

E と W 以外の4配置の割り当て（4! 通り）を総当たりし、HH / VV / HV の n=1 の YBE を
全て満たすものがちょうど1つであることを確かめてフィクスチャとして保存する。
段の対応は n=2 で同じ3種別が通る最初の向きを採用する。
"""

from __future__ import annotations

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

from src.rmatrix.weights import (
    RKind,
    RTypeAssignment,
    StrandOrder,
    candidate_assignments,
)
from src.rmatrix.ybe import verify_ybe
from src.utils.config import get_rtypes_fixture_path
from src.utils.errors import FixtureError

logger = logging.getLogger(__name__)

FIXTURE_VERSION = 1
PIN_KINDS: Tuple[RKind, ...] = (RKind.HH, RKind.VV, RKind.HV)


def assignment_passes(
    assignment: RTypeAssignment,
    kinds: Sequence[RKind] = PIN_KINDS,
    n: int = 1,
    order: StrandOrder = StrandOrder.TOP_FIRST,
) -> bool:
    return all(verify_ybe(kind, n, assignment, order, stop_on_failure=True).passed for kind in kinds)


def pin_type_assignment(kinds: Sequence[RKind] = PIN_KINDS) -> RTypeAssignment:
    """n=1 の YBE を全て満たす唯一の割り当てを返す。0個または2個以上なら FixtureError"""
    passing = [a for a in candidate_assignments() if assignment_passes(a, kinds)]
    if len(passing) != 1:
        raise FixtureError(
            f"型割り当てが一意に定まらない: kinds={[k.value for k in kinds]}, "
            f"passing={[a.to_json() for a in passing]}"
        )
    logger.info(f"型割り当てを固定: {passing[0].to_json()}")
    return passing[0]


def pin_strand_order(
    assignment: RTypeAssignment,
    kinds: Sequence[RKind] = PIN_KINDS,
    n: int = 2,
) -> StrandOrder:
    """n=2 の YBE を全て満たす最初の向き（TOP_FIRST を先に試す）"""
    for order in (StrandOrder.TOP_FIRST, StrandOrder.BOTTOM_FIRST):
        if assignment_passes(assignment, kinds, n=n, order=order):
            logger.info(f"段の対応を固定: {order.value}")
            return order
    raise FixtureError(f"どちらの段の対応でも YBE が成り立たない: n={n}, kinds={[k.value for k in kinds]}")


def fixture_payload(assignment: RTypeAssignment, order: StrandOrder) -> dict:
    return {
        "version": FIXTURE_VERSION,
        "strand_order": order.value,
        "assignment": assignment.to_json(),
    }


def save_fixture(assignment: RTypeAssignment, order: StrandOrder, path: Optional[Union[str, Path]] = None) -> Path:
    target = Path(path) if path is not None else get_rtypes_fixture_path()
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(fixture_payload(assignment, order), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    _load.cache_clear()
    logger.info(f"フィクスチャを保存: {target}")
    return target


@lru_cache(maxsize=None)
def _load(path: Path) -> Tuple[RTypeAssignment, StrandOrder]:
    if not path.exists():
        raise FixtureError(f"フィクスチャが見つからない: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise FixtureError(f"フィクスチャのJSONが不正: {path}: {e}") from e
    if data.get("version") != FIXTURE_VERSION:
        raise FixtureError(f"フィクスチャのバージョンが異なる: {data.get('version')} != {FIXTURE_VERSION}")
    try:
        assignment = RTypeAssignment.from_mapping(data["assignment"])
        order = StrandOrder(data.get("strand_order", StrandOrder.TOP_FIRST.value))
    except (KeyError, ValueError) as e:
        raise FixtureError(f"フィクスチャの内容が不正: {path}: {e}") from e
    return assignment, order


def load_fixture(path: Optional[Union[str, Path]] = None) -> Tuple[RTypeAssignment, StrandOrder]:
    return _load(Path(path) if path is not None else get_rtypes_fixture_path())


def check_fixture(path: Optional[Union[str, Path]] = None) -> bool:
    """フィクスチャが再固定の結果と一致するか"""
    assignment, order = load_fixture(path)
    pinned = pin_type_assignment()
    if pinned != assignment:
        logger.warning(f"フィクスチャの割り当てが再固定の結果と異なる: fixture={assignment.to_json()}, pinned={pinned.to_json()}")
        return False
    return pin_strand_order(pinned) == order


__all__ = [
    "FIXTURE_VERSION",
    "PIN_KINDS",
    "assignment_passes",
    "check_fixture",
    "fixture_payload",
    "load_fixture",
    "pin_strand_order",
    "pin_type_assignment",
    "save_fixture",
]
