"""検証結果の値型と正準JSON"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, List, Optional, Union

from src.algebra.poly import MPoly
from src.fock.operators import FockVector


def canonical_dumps(payload: Any) -> str:
    # 同じ入力なら同じバイト列になるようにキー順と区切りを固定する
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass
class CheckReport:
    """
    1件の検証結果

    Attributes
    ----------
    case_key : str
        スイート内で一意なケース名
    passed : bool
        残差が0かどうか
    residual : MPoly or FockVector, optional
        左辺 - 右辺（交換関係では Fock ベクトル）
    detail : dict
        各検証器の to_json() の内容
    gating : bool
        False の場合は実験扱いで、終了コードに影響しない
    """

    case_key: str
    passed: bool
    residual: Optional[Union[MPoly, FockVector]] = None
    detail: dict = field(default_factory=dict)
    gating: bool = True

    @property
    def residual_json(self) -> Optional[str]:
        if self.residual is None:
            # 比較できなかった失敗ケースは理由を残差欄に入れる
            return None if self.passed else canonical_dumps({"error": self.detail.get("error")})
        return canonical_dumps(self.residual.to_json())

    def to_json(self) -> dict:
        return {
            "case": self.case_key,
            "passed": self.passed,
            "gating": self.gating,
            "residual": self.residual.to_json() if self.residual is not None else None,
            "detail": self.detail,
        }


@dataclass
class SuiteReport:
    suite: str
    config: dict
    checks: List[CheckReport] = field(default_factory=list)

    def add(self, check: CheckReport) -> None:
        self.checks.append(check)

    @property
    def gating_checks(self) -> List[CheckReport]:
        return [c for c in self.checks if c.gating]

    @property
    def failures(self) -> List[CheckReport]:
        return [c for c in self.gating_checks if not c.passed]

    @property
    def experiments(self) -> List[CheckReport]:
        return [c for c in self.checks if not c.gating]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "checksTotal": len(self.gating_checks),
            "checksFailed": len(self.failures),
            "experiments": len(self.experiments),
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }

    def canonical_json(self) -> str:
        return canonical_dumps(self.to_json())


__all__ = ["CheckReport", "SuiteReport", "canonical_dumps"]
