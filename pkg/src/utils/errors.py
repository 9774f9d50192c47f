"""例外クラス定義"""

from __future__ import annotations

from typing import Any, List, Optional


class SuperLLTError(Exception):
    """本パッケージの全例外の基底クラス"""


class PolynomialError(SuperLLTError):
    """多項式演算の不正"""


class NegativeExponentError(PolynomialError):
    """q以外の変数に負の指数が現れた"""


class NonInvertibleSubstitutionError(PolynomialError):
    """負の冪の変数に単項式でない多項式を代入しようとした"""


class ShapeError(SuperLLTError):
    """分割・歪シェイプの不正"""


class TilingUniquenessError(ShapeError):
    """水平（垂直）ストリップのタイリングが2通り以上見つかった"""

    def __init__(self, shape: Any, mode: str, tilings: Optional[List[Any]] = None):
        self.shape = shape
        self.mode = mode
        self.tilings = tilings or []
        super().__init__(
            f"{mode}ストリップのタイリングが一意でない: shape={shape}, count={len(self.tilings)}"
        )


class AlphabetOrderError(SuperLLTError):
    """文字順序の解析失敗、または同種文字の順序違反"""


class KappaIntegralityError(SuperLLTError):
    """κ(h_j), κ(e_j)が整数係数にならなかった"""


class CapExceededError(SuperLLTError):
    """作用素の適用結果がシェイプ上限を超えた"""


class LatticeError(SuperLLTError):
    """格子系の構成が不正"""


class FixtureError(SuperLLTError):
    """R型割り当てフィクスチャの不整合"""


class BudgetExceededError(SuperLLTError):
    """状態数または実行時間の上限を超えた"""
