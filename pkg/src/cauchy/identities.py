"""
Cauchy 型恒等式の検証（打ち切り級数としての比較）

和の側はタブロー経路の super_llt で各 λ の項を計算し、積の側は
expand_product_factor で展開する。どちらも q 以外の変数の総次数 D で打ち切って比べる。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Sequence, Tuple, Union

from src.algebra.poly import (
    Family,
    MPoly,
    Place,
    Q,
    Sign,
    VarId,
    expand_product_factor,
    poly_sum,
    product,
    series_truncate,
    specialize,
)
from src.algebra.symmetric import schur_bialternant
from src.combinatorics.shapes import (
    Partition,
    SkewShape,
    all_subpartitions,
    is_n_core,
    partitions_with_core,
    superpartitions,
)
from src.combinatorics.tableaux import AlphabetOrder, Letter, LetterKind, horizontal, super_llt, vertical
from src.utils.errors import ShapeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CauchySpec:
    """
    Attributes
    ----------
    n : int
        リボンのサイズ
    core : Partition
        n-コア δ
    nx, ny, nw, nz : int
        各アルファベットの変数の個数
    degree : int
        打ち切り次数 D（q 以外の変数の総次数）
    """

    n: int
    core: Partition = Partition()
    nx: int = 1
    ny: int = 1
    nw: int = 1
    nz: int = 1
    degree: int = 4

    def __post_init__(self):
        if self.n < 1:
            raise ShapeError(f"nは1以上: n={self.n}")
        if self.degree < 0:
            raise ValueError(f"打ち切り次数は0以上: D={self.degree}")
        if min(self.nx, self.ny, self.nw, self.nz) < 0:
            raise ValueError("変数の個数は0以上")
        if not is_n_core(self.core, self.n):
            raise ShapeError(f"δ が {self.n}-コアでない: {self.core}")

    def xy_order(self) -> AlphabetOrder:
        return AlphabetOrder.standard(self.nx, self.ny)

    def wz_order(self) -> AlphabetOrder:
        return AlphabetOrder.standard(self.nw, self.nz, x_family=Family.W, y_family=Family.Z)

    def variables(self, family: Family, count: int) -> List[VarId]:
        return [VarId(family, i) for i in range(1, count + 1)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "core": self.core.to_json(),
            "nx": self.nx,
            "ny": self.ny,
            "nw": self.nw,
            "nz": self.nz,
            "D": self.degree,
        }


@dataclass
class CauchyReport:
    identity: str
    spec: dict
    lhs: MPoly
    rhs: MPoly
    terms: List[Partition] = field(default_factory=list)
    margin_ok: bool = True

    @property
    def residual(self) -> MPoly:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.residual.is_zero() and self.margin_ok

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "spec": self.spec,
            "terms": [lam.to_json() for lam in self.terms],
            "residual": self.residual.to_json(),
            "marginOk": self.margin_ok,
            "passed": self.passed,
        }


def _pair_product(
    us: Sequence[VarId],
    vs: Sequence[VarId],
    sign: Sign,
    place: Place,
    n: int,
    bound: int,
) -> MPoly:
    return product(expand_product_factor(sign, place, u, v, n, bound) for u in us for v in vs)


def cauchy_product(spec: CauchySpec) -> MPoly:
    """∏ (1-q^{2t}xz)(1-q^{2t}yw) / ((1-q^{2t}xw)(1-q^{2t}yz)) を次数 D で打ち切る"""
    xs = spec.variables(Family.X, spec.nx)
    ys = spec.variables(Family.Y, spec.ny)
    ws = spec.variables(Family.W, spec.nw)
    zs = spec.variables(Family.Z, spec.nz)
    bound = spec.degree // 2
    factors = [
        _pair_product(xs, zs, Sign.MINUS, Place.NUMERATOR, spec.n, bound),
        _pair_product(ys, ws, Sign.MINUS, Place.NUMERATOR, spec.n, bound),
        _pair_product(xs, ws, Sign.MINUS, Place.DENOMINATOR, spec.n, bound),
        _pair_product(ys, zs, Sign.MINUS, Place.DENOMINATOR, spec.n, bound),
    ]
    result = MPoly.one()
    for f in factors:
        result = series_truncate(result * f, spec.degree)
    return result


def _shapes_with_core(spec: CauchySpec, ribbons: int) -> List[Partition]:
    return partitions_with_core(spec.core, spec.n, ribbons)


def _schur(shape: SkewShape, variables: Sequence[VarId]) -> MPoly:
    if shape.inner.size:
        raise ValueError("シューア多項式の独立計算は直シェイプのみ")
    return schur_bialternant(shape.outer.parts, variables)


def _cauchy_sum(spec: CauchySpec, ribbons: int, route: str) -> Tuple[MPoly, List[Partition]]:
    xy, wz = spec.xy_order(), spec.wz_order()
    terms: List[MPoly] = []
    shapes: List[Partition] = []
    for lam in _shapes_with_core(spec, ribbons):
        shape = SkewShape(lam, spec.core)
        if route == "schur":
            left = _schur(shape, spec.variables(Family.X, spec.nx))
            right = _schur(shape, spec.variables(Family.W, spec.nw))
        else:
            left = super_llt(shape, spec.n, xy)
            right = super_llt(shape, spec.n, wz)
        term = series_truncate(left * right, spec.degree)
        if not term.is_zero():
            terms.append(term)
            shapes.append(lam)
    return poly_sum(terms), shapes


def verify_cauchy(spec: CauchySpec, route: str = "tableaux") -> CauchyReport:
    """
    Σ_λ 𝒢_{λ/δ}(X/Y) 𝒢_{λ/δ}(W/Z) と積の側を次数 D で比べる。

    λ は n-コアが δ のもので、各リボンが両因子に1ずつ次数を与えるので
    |λ/δ| ≤ n·⌊D/2⌋ で十分。さらに1本多いリボンまで計算して結果が変わらないことを確かめる。
    route="schur" は n=1 かつ Y, Z が空のときのシューア多項式による独立計算。
    """
    if route == "schur" and (spec.n != 1 or spec.ny or spec.nz):
        raise ValueError("route=schur は n=1 かつ Y, Z が空のときのみ")
    ribbons = spec.degree // 2
    lhs, shapes = _cauchy_sum(spec, ribbons, route)
    margin, _ = _cauchy_sum(spec, ribbons + 1, route)
    rhs = cauchy_product(spec)
    report = CauchyReport("cauchy", spec.to_json(), lhs, rhs, shapes, margin_ok=margin == lhs)
    if not report.passed:
        logger.warning(f"Cauchy恒等式の不一致: spec={spec.to_json()}, margin_ok={report.margin_ok}")
    return report


class DualMode(str, Enum):
    LLT = "llt"
    SUPER = "super"


def _negate(p: MPoly, variables: Iterable[VarId]) -> MPoly:
    return specialize(p, {v: -MPoly.var(v) for v in variables})


def _invert_q(p: MPoly) -> MPoly:
    return specialize(p, {Q: MPoly.q_power(-1)})


def dual_llt_product(spec: CauchySpec) -> MPoly:
    """∏_{i,j} ∏_t (1 + q^{2t} x_i y_j)（有限積）"""
    xs = spec.variables(Family.X, spec.nx)
    ys = spec.variables(Family.Y, spec.ny)
    return _pair_product(xs, ys, Sign.PLUS, Place.NUMERATOR, spec.n, spec.n)


def _verify_dual_llt(spec: CauchySpec) -> CauchyReport:
    # 各 λ の項は x について k 次、y について k 次（k はリボンの本数）。積の x 次数は n·nx·ny が上限
    ribbons = spec.n * spec.nx * spec.ny
    x_order = AlphabetOrder.standard(spec.nx, 0)
    y_order = AlphabetOrder.standard(0, spec.ny)
    ys = spec.variables(Family.Y, spec.ny)

    def total(max_ribbons: int) -> Tuple[MPoly, List[Partition]]:
        parts: List[MPoly] = []
        shapes: List[Partition] = []
        for lam in _shapes_with_core(spec, max_ribbons):
            shape = SkewShape(lam, spec.core)
            left = super_llt(shape, spec.n, x_order)
            if left.is_zero():
                continue
            right = _negate(super_llt(shape, spec.n, y_order), ys)
            term = left * right
            if not term.is_zero():
                parts.append(term)
                shapes.append(lam)
        return poly_sum(parts), shapes

    lhs, shapes = total(ribbons)
    margin, _ = total(ribbons + 1)
    rhs = dual_llt_product(spec)
    return CauchyReport("dual-llt", spec.to_json(), lhs, rhs, shapes, margin_ok=margin == lhs)


def dual_super_product(spec: CauchySpec) -> MPoly:
    """∏ (1+q^{2t}xw)(1+q^{2t}yz) / ((1+q^{2t}xz)(1+q^{2t}yw)) を次数 D で打ち切る"""
    xs = spec.variables(Family.X, spec.nx)
    ys = spec.variables(Family.Y, spec.ny)
    ws = spec.variables(Family.W, spec.nw)
    zs = spec.variables(Family.Z, spec.nz)
    bound = spec.degree // 2
    factors = [
        _pair_product(xs, ws, Sign.PLUS, Place.NUMERATOR, spec.n, bound),
        _pair_product(ys, zs, Sign.PLUS, Place.NUMERATOR, spec.n, bound),
        _pair_product(xs, zs, Sign.PLUS, Place.DENOMINATOR, spec.n, bound),
        _pair_product(ys, ws, Sign.PLUS, Place.DENOMINATOR, spec.n, bound),
    ]
    result = MPoly.one()
    for f in factors:
        result = series_truncate(result * f, spec.degree)
    return result


def _verify_dual_super(spec: CauchySpec) -> CauchyReport:
    """Σ_λ q^{(n-1)k} 𝒢_{λ/δ}(X/Y;q) 𝒢_{λ'/δ'}(W/Z;q^{-1})、k = |λ/δ|/n"""
    xy, wz = spec.xy_order(), spec.wz_order()
    core_conj = spec.core.conjugate()

    def total(max_ribbons: int) -> Tuple[MPoly, List[Partition]]:
        parts: List[MPoly] = []
        shapes: List[Partition] = []
        for lam in _shapes_with_core(spec, max_ribbons):
            k = (lam.size - spec.core.size) // spec.n
            left = super_llt(SkewShape(lam, spec.core), spec.n, xy)
            if left.is_zero():
                continue
            right = _invert_q(super_llt(SkewShape(lam.conjugate(), core_conj), spec.n, wz))
            term = series_truncate(MPoly.q_power((spec.n - 1) * k) * left * right, spec.degree)
            if not term.is_zero():
                parts.append(term)
                shapes.append(lam)
        return poly_sum(parts), shapes

    ribbons = spec.degree // 2
    lhs, shapes = total(ribbons)
    margin, _ = total(ribbons + 1)
    rhs = dual_super_product(spec)
    return CauchyReport("dual-super", spec.to_json(), lhs, rhs, shapes, margin_ok=margin == lhs)


def verify_dual_cauchy(spec: CauchySpec, mode: Union[DualMode, str] = DualMode.LLT) -> CauchyReport:
    """
    双対 Cauchy 恒等式。

    mode="llt" は Σ_λ 𝒢_{λ/δ}(X/0) 𝒢_{λ/δ}(0/-Y) = ∏(1+q^{2t}xy) を打ち切りなしで比べる
    （W, Z は使わない）。mode="super" は共役と q^{-1} を使う形を次数 D で比べる。
    """
    mode = DualMode(mode)
    report = _verify_dual_llt(spec) if mode == DualMode.LLT else _verify_dual_super(spec)
    if not report.passed:
        logger.warning(f"双対Cauchy恒等式の不一致: mode={mode.value}, spec={spec.to_json()}, margin_ok={report.margin_ok}")
    return report


def _general_lhs(mu: Partition, nu: Partition, spec: CauchySpec, extra: int) -> Tuple[MPoly, List[Partition]]:
    # 次数は (2|λ| - |μ| - |ν|)/n なので |λ| ≤ (nD + |μ| + |ν|)/2
    xy, wz = spec.xy_order(), spec.wz_order()
    limit = (spec.n * spec.degree + mu.size + nu.size) // 2 + extra
    parts: List[MPoly] = []
    shapes: List[Partition] = []
    for added in range(0, max(limit - mu.size, -1) + 1):
        for lam in superpartitions(mu, added):
            if not lam.contains(nu):
                continue
            if (lam.size - mu.size) % spec.n or (lam.size - nu.size) % spec.n:
                continue
            left = super_llt(SkewShape(lam, mu), spec.n, xy)
            if left.is_zero():
                continue
            term = series_truncate(left * super_llt(SkewShape(lam, nu), spec.n, wz), spec.degree)
            if not term.is_zero():
                parts.append(term)
                shapes.append(lam)
    return poly_sum(parts), shapes


def _intersection(mu: Partition, nu: Partition) -> Partition:
    length = min(mu.length, nu.length)
    return Partition(tuple(min(mu[i], nu[i]) for i in range(length)))


def _general_rhs_sum(mu: Partition, nu: Partition, spec: CauchySpec) -> MPoly:
    xy, wz = spec.xy_order(), spec.wz_order()
    parts: List[MPoly] = []
    for lam in all_subpartitions(_intersection(mu, nu)):
        if (nu.size - lam.size) % spec.n or (mu.size - lam.size) % spec.n:
            continue
        left = super_llt(SkewShape(nu, lam), spec.n, xy)
        if left.is_zero():
            continue
        parts.append(left * super_llt(SkewShape(mu, lam), spec.n, wz))
    return poly_sum(parts)


def verify_general_cauchy(mu: Partition, nu: Partition, spec: CauchySpec) -> CauchyReport:
    """
    Σ_λ F_{λ/μ}(X/Y) G_{λ/ν}(W/Z) = [∗] Σ_λ F_{ν/λ}(X/Y) G_{μ/λ}(W/Z) を次数 D で比べる。

    右辺の和は λ ⊆ μ∩ν の有限和、[∗] は Cauchy の積。spec.core は使わない。
    """
    lhs, shapes = _general_lhs(mu, nu, spec, 0)
    margin, _ = _general_lhs(mu, nu, spec, spec.n)
    rhs = series_truncate(cauchy_product(spec) * _general_rhs_sum(mu, nu, spec), spec.degree)
    payload = dict(spec.to_json(), mu=mu.to_json(), nu=nu.to_json())
    report = CauchyReport("general-cauchy", payload, lhs, rhs, shapes, margin_ok=margin == lhs)
    if not report.passed:
        logger.warning(f"一般Cauchy恒等式の不一致: mu={mu}, nu={nu}, spec={spec.to_json()}")
    return report


def conjugate_order(order: AlphabetOrder) -> AlphabetOrder:
    """水平文字と垂直文字を入れ替える（スペクトル変数と順序は保つ）"""
    letters: List[Letter] = []
    for letter in order.letters:
        var = letter.spectral
        if letter.kind == LetterKind.HORIZONTAL:
            letters.append(vertical(var.index, var.family))
        else:
            letters.append(horizontal(var.index, var.family))
    return AlphabetOrder(tuple(letters))


def conjugate_polynomial_identity(shape: SkewShape, n: int, order: AlphabetOrder) -> Tuple[MPoly, MPoly]:
    """
    (𝒢_{λ/μ}(X/Y;q), (-1)^k q^{(n-1)k} 𝒢_{λ'/μ'}(Y/X;q^{-1}))、k = |λ/μ|/n。

    両辺は一致するはず。
    """
    lhs = super_llt(shape, n, order)
    if shape.size % n:
        return lhs, MPoly.zero()
    k = shape.size // n
    conj = _invert_q(super_llt(shape.conjugate(), n, conjugate_order(order)))
    sign = -1 if k % 2 else 1
    return lhs, (MPoly.q_power((n - 1) * k) * conj).scale(sign)


__all__ = [
    "CauchyReport",
    "CauchySpec",
    "DualMode",
    "cauchy_product",
    "conjugate_order",
    "conjugate_polynomial_identity",
    "dual_llt_product",
    "dual_super_product",
    "verify_cauchy",
    "verify_dual_cauchy",
    "verify_general_cauchy",
]
