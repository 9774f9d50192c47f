"""
フォック空間のベクトルとストリップ作用素

|λ⟩ を基底とする空間上で、U_k / Ũ_k は k 本の n-リボンからなる水平 / 垂直ストリップを
スピン重み付きで付加し、D_k / D̃_k はその随伴として除去する。
F / G 多項式はこれらの作用素の合成の行列要素として組み立てる（作用素経路）。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from src.algebra.poly import MPoly, poly_sum, product
from src.algebra.symmetric import a_k, z_lambda
from src.combinatorics.shapes import (
    UNBOUNDED,
    Partition,
    ShapeBound,
    SkewShape,
    StripMode,
    StripResult,
    add_strips,
    partitions_of_size,
    remove_strips,
)
from src.combinatorics.tableaux import AlphabetOrder
from src.utils.errors import CapExceededError, KappaIntegralityError

logger = logging.getLogger(__name__)


class FockVector:
    """有限個の |λ⟩ の多項式係数付き和。係数0の項は持たない"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Partition, MPoly]] = None):
        cleaned: Dict[Partition, MPoly] = {}
        for lam, coeff in (terms or {}).items():
            coeff = MPoly.coerce(coeff)
            if not coeff.is_zero():
                cleaned[lam] = coeff
        self._terms = cleaned

    @classmethod
    def zero(cls) -> "FockVector":
        return cls()

    @classmethod
    def basis(cls, lam: Partition) -> "FockVector":
        return cls({lam: MPoly.one()})

    @property
    def terms(self) -> Dict[Partition, MPoly]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Partition, MPoly]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (kv[0].size, kv[0].parts)))

    def coefficient(self, lam: Partition) -> MPoly:
        return self._terms.get(lam, MPoly.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def support(self) -> List[Partition]:
        return [lam for lam, _ in self.items()]

    def __add__(self, other: "FockVector") -> "FockVector":
        merged = dict(self._terms)
        for lam, coeff in other._terms.items():
            merged[lam] = merged[lam] + coeff if lam in merged else coeff
        return FockVector(merged)

    def __neg__(self) -> "FockVector":
        return FockVector({lam: -c for lam, c in self._terms.items()})

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def scale(self, factor: Union[MPoly, int, Fraction]) -> "FockVector":
        factor = MPoly.coerce(factor)
        if factor.is_zero():
            return FockVector()
        return FockVector({lam: c * factor for lam, c in self._terms.items()})

    def inner(self, other: "FockVector") -> MPoly:
        """⟨λ, μ⟩ = δ_{λμ} を双線形に拡張した内積"""
        return poly_sum(c * other.coefficient(lam) for lam, c in self._terms.items())

    def project(self, bound: ShapeBound) -> "FockVector":
        return FockVector({lam: c for lam, c in self._terms.items() if bound.admits(lam)})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        if not self._terms:
            return "FockVector(0)"
        body = " + ".join(f"({c})|{lam}⟩" for lam, c in self.items())
        return f"FockVector({body})"

    def to_json(self) -> List[dict]:
        return [{"shape": lam.to_json(), "coeff": c.to_json()} for lam, c in self.items()]


def vector_sum(vectors: Iterable[FockVector]) -> FockVector:
    merged: Dict[Partition, List[MPoly]] = {}
    for v in vectors:
        for lam, coeff in v._terms.items():
            merged.setdefault(lam, []).append(coeff)
    return FockVector({lam: poly_sum(parts) for lam, parts in merged.items()})


@dataclass(frozen=True)
class KappaValues:
    n: int
    h: Tuple[MPoly, ...]
    e: Tuple[MPoly, ...]

    @property
    def j_max(self) -> int:
        return len(self.h) - 1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "h": [p.to_json() for p in self.h],
            "e": [p.to_json() for p in self.e],
        }


def _power_sum_value(parts: Tuple[int, ...], n: int) -> MPoly:
    return product(a_k(n, part) for part in parts)


def kappa(n: int, j_max: int) -> KappaValues:
    """
    κ(h_j), κ(e_j) を j = 0..j_max について求める。

    κ(p_k) = a_k を冪和展開 h_j = Σ_{λ⊢j} z_λ^{-1} p_λ に代入する。
    e_j は (-1)^j Σ (-1)^{ℓ(λ)} z_λ^{-1} p_λ。有理数で計算し、結果が整数係数であることを確かめる。
    """
    if n < 1:
        raise ValueError(f"nは1以上: n={n}")
    if j_max < 0:
        raise ValueError(f"j_maxは0以上: j_max={j_max}")
    hs: List[MPoly] = []
    es: List[MPoly] = []
    for j in range(j_max + 1):
        h_terms = []
        e_terms = []
        for lam in partitions_of_size(j):
            value = _power_sum_value(lam.parts, n).scale(Fraction(1, z_lambda(lam.parts)))
            h_terms.append(value)
            e_terms.append(value if lam.length % 2 == 0 else -value)
        h_j = poly_sum(h_terms)
        e_j = poly_sum(e_terms)
        if j % 2 == 1:
            e_j = -e_j
        for label, value in (("h", h_j), ("e", e_j)):
            if not value.has_integer_coefficients():
                raise KappaIntegralityError(f"κ({label}_{j}) が整数係数にならない: n={n}, value={value}")
        hs.append(h_j)
        es.append(e_j)
    return KappaValues(n=n, h=tuple(hs), e=tuple(es))


class OperatorKind(str, Enum):
    U = "U"
    D = "D"
    U_TILDE = "U~"
    D_TILDE = "D~"

    @property
    def adds(self) -> bool:
        return self in (OperatorKind.U, OperatorKind.U_TILDE)

    @property
    def strip_mode(self) -> StripMode:
        if self in (OperatorKind.U, OperatorKind.D):
            return StripMode.HORIZONTAL
        return StripMode.VERTICAL


def _strip_steps(kind: OperatorKind, lam: Partition, n: int, k: int, within: ShapeBound) -> List[StripResult]:
    if kind.adds:
        return add_strips(lam, n, k, kind.strip_mode, cap=ShapeBound(outer=within.outer) if within.outer else UNBOUNDED)
    return remove_strips(lam, n, k, kind.strip_mode, floor=within.inner)


def apply_operator(
    kind: Union[OperatorKind, str],
    k: int,
    v: FockVector,
    n: int,
    cap: ShapeBound = UNBOUNDED,
    within: ShapeBound = UNBOUNDED,
) -> FockVector:
    """
    U_k, D_k, Ũ_k, D̃_k を v に作用させる。

    Parameters
    ----------
    cap : ShapeBound
        監査用の上限。結果の形がこれを外れたら CapExceededError
    within : ShapeBound
        射影先。外れた項は黙って捨てる（F/G の組み立てで λ ⊆ 外側 などに制限する）
    """
    kind = OperatorKind(kind)
    if k < 0:
        raise ValueError(f"kは0以上: k={k}")
    if k == 0:
        return v.project(within)
    parts: List[FockVector] = []
    for lam, coeff in v.items():
        image: Dict[Partition, MPoly] = {}
        for step in _strip_steps(kind, lam, n, k, within):
            if not within.admits(step.shape):
                continue
            if not cap.admits(step.shape):
                raise CapExceededError(
                    f"作用素の像が上限を超えた: op={kind.value}_{k}, from={lam}, to={step.shape}"
                )
            image[step.shape] = image.get(step.shape, MPoly.zero()) + MPoly.q_power(step.spin)
        parts.append(FockVector(image).scale(coeff))
    return vector_sum(parts)


def apply_word(
    word: Iterable[Tuple[Union[OperatorKind, str], int]],
    v: FockVector,
    n: int,
    cap: ShapeBound = UNBOUNDED,
) -> FockVector:
    """作用素の列を右から順に作用させる（word は左から書いた積）"""
    result = v
    for kind, k in reversed(list(word)):
        result = apply_operator(kind, k, result, n, cap=cap)
    return result


class PolynomialKind(str, Enum):
    F = "F"
    G = "G"


def operator_polynomial(
    kind: Union[PolynomialKind, str],
    shape: SkewShape,
    n: int,
    order: AlphabetOrder,
    max_degree: Optional[int] = None,
) -> MPoly:
    """
    作用素の行列要素から F_{λ/μ} / G_{λ/μ} を組み立てる。

    F は |μ⟩ から文字を小さい順に U（水平文字）/ Ũ（垂直文字）で積み上げて λ 成分を取る。
    G は |λ⟩ から文字を大きい順に D / D̃ で削って μ 成分を取る。
    各文字の次数は (|λ|-|μ|)/n と max_degree の小さい方で打ち切る。
    """
    kind = PolynomialKind(kind)
    if shape.size % n != 0:
        return MPoly.zero()
    top = shape.size // n
    if max_degree is not None:
        top = min(top, max_degree)

    if kind == PolynomialKind.F:
        within = ShapeBound(outer=shape.outer)
        vec = FockVector.basis(shape.inner)
        letters = list(order.letters)
        target = shape.outer
    else:
        within = ShapeBound(inner=shape.inner)
        vec = FockVector.basis(shape.outer)
        letters = list(reversed(order.letters))
        target = shape.inner

    for letter in letters:
        if kind == PolynomialKind.F:
            op = OperatorKind.U if letter.is_horizontal else OperatorKind.U_TILDE
        else:
            op = OperatorKind.D if letter.is_horizontal else OperatorKind.D_TILDE
        factor = letter.weight_factor()
        vec = vector_sum(
            apply_operator(op, k, vec, n, within=within).scale(factor ** k) for k in range(top + 1)
        )
        if vec.is_zero():
            return MPoly.zero()
    logger.debug(f"作用素経路: kind={kind.value}, shape={shape}, n={n}, order={order.spec()}")
    return vec.coefficient(target)


__all__ = [
    "FockVector",
    "KappaValues",
    "OperatorKind",
    "PolynomialKind",
    "apply_operator",
    "apply_word",
    "kappa",
    "operator_polynomial",
    "vector_sum",
]
