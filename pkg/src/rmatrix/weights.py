"""
対角頂点 R^(n) の重み

R^(n) 頂点は n 個の R^(1) 頂点 r_1..r_n の組で、各 r_k は四隅 NE(I), SE(J), SW(K), NW(L) に
左右向きのラベルを持つ（ストランドは K→I, L→J）。許容な配置は6通りで、
型 N, SS, W, E, NN, S のいずれかに割り当てる。重みは各 r_k の重みの積で、
各重みは組全体の型の個数（上下の文脈）に依存する。

Cauchy 用の混合種別では、NN と SS の組を1つの NN/SS 頂点にまとめてから積を取る（事前融合）。
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import permutations, product as cartesian
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.algebra.poly import Family, MPoly, VarId, product
from src.lattice.vertices import Horizontal, RowKind
from src.utils.errors import FixtureError


class RTypeName(str, Enum):
    N = "N"
    SS = "SS"
    W = "W"
    E = "E"
    NN = "NN"
    S = "S"


class StrandOrder(str, Enum):
    """r_k と行頂点の段（W(m)/E(m) の m）の対応"""

    TOP_FIRST = "top-first"  # r_k は段 m = n+1-k
    BOTTOM_FIRST = "bottom-first"  # r_k は段 m = k


def _bit(h: Horizontal) -> str:
    return "1" if h == Horizontal.LEFT else "0"


@dataclass(frozen=True)
class R1Config:
    """R^(1) 頂点の四隅のラベル"""

    K: Horizontal
    L: Horizontal
    I: Horizontal
    J: Horizontal

    @property
    def key(self) -> str:
        """K, L, I, J の順に LEFT を 1 とした4文字"""
        return "".join(_bit(h) for h in (self.K, self.L, self.I, self.J))

    @classmethod
    def from_key(cls, key: str) -> "R1Config":
        if len(key) != 4 or set(key) - {"0", "1"}:
            raise ValueError(f"配置キーが不正: {key!r}")
        labels = [Horizontal.LEFT if c == "1" else Horizontal.RIGHT for c in key]
        return cls(*labels)

    @property
    def is_admissible(self) -> bool:
        incoming = (self.K == Horizontal.LEFT) + (self.L == Horizontal.LEFT)
        outgoing = (self.I == Horizontal.LEFT) + (self.J == Horizontal.LEFT)
        return incoming == outgoing


def admissible_configs() -> List[R1Config]:
    configs = [R1Config(*labels) for labels in cartesian(Horizontal, repeat=4)]
    return sorted((c for c in configs if c.is_admissible), key=lambda c: c.key)


# 全て > なら E、全て < なら W は事前に決まる
FIXED_TYPES: Dict[str, RTypeName] = {"0000": RTypeName.E, "1111": RTypeName.W}
FREE_TYPES: Tuple[RTypeName, ...] = (RTypeName.N, RTypeName.SS, RTypeName.NN, RTypeName.S)


@dataclass(frozen=True)
class RTypeAssignment:
    """許容な6配置から型名への全単射"""

    mapping: Tuple[Tuple[str, RTypeName], ...]

    def __post_init__(self):
        mapping = tuple(sorted((key, RTypeName(name)) for key, name in self.mapping))
        object.__setattr__(self, "mapping", mapping)
        keys = {key for key, _ in mapping}
        expected = {c.key for c in admissible_configs()}
        if keys != expected:
            raise FixtureError(f"型割り当ての配置が許容配置と一致しない: {sorted(keys)}")
        names = [name for _, name in mapping]
        if sorted(names) != sorted(RTypeName):
            raise FixtureError(f"型割り当てが全単射でない: {names}")
        for key, name in FIXED_TYPES.items():
            if dict(mapping)[key] != name:
                raise FixtureError(f"固定の型が変更されている: {key} -> {dict(mapping)[key].value}")

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Union[str, RTypeName]]) -> "RTypeAssignment":
        return cls(tuple((key, RTypeName(name)) for key, name in mapping.items()))

    def type_of(self, config: R1Config) -> Optional[RTypeName]:
        return dict(self.mapping).get(config.key)

    def to_json(self) -> Dict[str, str]:
        return {key: name.value for key, name in self.mapping}


PINNED_ASSIGNMENT = RTypeAssignment.from_mapping(
    {"0000": "E", "1111": "W", "1010": "S", "0101": "N", "1001": "SS", "0110": "NN"}
)


def candidate_assignments() -> Iterable[RTypeAssignment]:
    """E/W を固定した残り 4! 通りの割り当て"""
    free_keys = [c.key for c in admissible_configs() if c.key not in FIXED_TYPES]
    for names in permutations(FREE_TYPES):
        mapping = dict(FIXED_TYPES)
        mapping.update(zip(free_keys, names))
        yield RTypeAssignment.from_mapping(mapping)


class RKind(str, Enum):
    """R 頂点が入れ替える2行の種別（行 i, 行 j の順）"""

    HH = "HH"
    VV = "VV"
    HV = "HV"
    VT_H = "V~H"
    HT_H = "H~H"
    HT_V = "H~V"
    VT_V = "V~V"
    H_HT = "HH~"
    H_VT = "HV~"
    V_HT = "VH~"
    V_VT = "VV~"

    @property
    def rows(self) -> Tuple[RowKind, RowKind]:
        return _KIND_ROWS[self]

    @property
    def is_cauchy(self) -> bool:
        return self not in (RKind.HH, RKind.VV, RKind.HV)

    @property
    def alternate_first(self) -> bool:
        """行 i が交代模型（NN を上、SS を下で融合）"""
        return self.rows[0].is_alternate and not self.rows[1].is_alternate

    def default_spectral(self) -> Tuple[VarId, VarId]:
        first, second = self.rows
        fam_i = _ROW_FAMILY[first]
        fam_j = _ROW_FAMILY[second]
        return VarId(fam_i, 1), VarId(fam_j, 2 if fam_i == fam_j else 1)

    @classmethod
    def for_rows(cls, upper: RowKind, lower: RowKind) -> "RKind":
        for kind, rows in _KIND_ROWS.items():
            if rows == (upper, lower):
                return kind
        raise ValueError(f"対応するR頂点の種別がない: {upper.value}/{lower.value}")


_KIND_ROWS: Dict[RKind, Tuple[RowKind, RowKind]] = {
    RKind.HH: (RowKind.H, RowKind.H),
    RKind.VV: (RowKind.V, RowKind.V),
    RKind.HV: (RowKind.H, RowKind.V),
    RKind.VT_H: (RowKind.V_ALT, RowKind.H),
    RKind.HT_H: (RowKind.H_ALT, RowKind.H),
    RKind.HT_V: (RowKind.H_ALT, RowKind.V),
    RKind.VT_V: (RowKind.V_ALT, RowKind.V),
    RKind.H_HT: (RowKind.H, RowKind.H_ALT),
    RKind.H_VT: (RowKind.H, RowKind.V_ALT),
    RKind.V_HT: (RowKind.V, RowKind.H_ALT),
    RKind.V_VT: (RowKind.V, RowKind.V_ALT),
}

_ROW_FAMILY: Dict[RowKind, Family] = {
    RowKind.H: Family.X,
    RowKind.V: Family.Y,
    RowKind.H_ALT: Family.W,
    RowKind.V_ALT: Family.Z,
}


@dataclass(frozen=True)
class RVertex:
    """configs[m-1] が段 m の R^(1) 配置"""

    n: int
    kind: RKind
    configs: Tuple[R1Config, ...]

    def __post_init__(self):
        object.__setattr__(self, "configs", tuple(self.configs))
        if len(self.configs) != self.n:
            raise ValueError(f"配置の個数がnと一致しない: n={self.n}, configs={len(self.configs)}")

    @classmethod
    def from_edges(
        cls,
        kind: RKind,
        K: Sequence[Horizontal],
        L: Sequence[Horizontal],
        I: Sequence[Horizontal],
        J: Sequence[Horizontal],
    ) -> "RVertex":
        return cls(len(K), kind, tuple(R1Config(*labels) for labels in zip(K, L, I, J)))


@dataclass(frozen=True)
class StrandContext:
    """k 番目の r_k から見た他の r_t の型の個数。「下」は t > k"""

    types: Tuple[RTypeName, ...]
    k: int

    def below(self, name: RTypeName) -> int:
        return sum(1 for t in self.types[self.k + 1:] if t == name)

    def above(self, name: RTypeName) -> int:
        return sum(1 for t in self.types[: self.k] if t == name)

    def total(self, name: RTypeName) -> int:
        return sum(1 for t in self.types if t == name)

    @property
    def n(self) -> int:
        return len(self.types)

    @property
    def tau(self) -> int:
        return self.below(RTypeName.SS) + self.above(RTypeName.NN)

    @property
    def kappa(self) -> int:
        return self.above(RTypeName.SS) + self.below(RTypeName.NN)


qp = MPoly.q_power

# 事前融合した NN/SS 頂点
FUSED = "NN/SS"


def _hh(t: RTypeName, c: StrandContext, xi: MPoly, xj: MPoly) -> MPoly:
    if t == RTypeName.S:
        theta = 2 * c.below(RTypeName.S)
        sigma = c.below(RTypeName.SS) + c.above(RTypeName.NN) + c.total(RTypeName.W)
        return qp(-sigma) * xi - qp(-theta - sigma) * xj
    return {
        RTypeName.N: MPoly.zero(),
        RTypeName.SS: xj,
        RTypeName.W: xj,
        RTypeName.E: xi,
        RTypeName.NN: xi,
    }[t]


def _vv(t: RTypeName, c: StrandContext, yi: MPoly, yj: MPoly) -> MPoly:
    if t == RTypeName.N:
        theta = 2 * c.below(RTypeName.N)
        sigma = c.above(RTypeName.SS) + c.below(RTypeName.NN) + c.total(RTypeName.W)
        return qp(sigma) * (yj - qp(theta) * yi)
    return {
        RTypeName.SS: yj,
        RTypeName.W: yi,
        RTypeName.E: yj,
        RTypeName.NN: yi,
        RTypeName.S: MPoly.zero(),
    }[t]


def _hv(t: RTypeName, c: StrandContext, xi: MPoly, yj: MPoly) -> MPoly:
    theta = 2 * c.below(RTypeName.E)
    sigma = c.above(RTypeName.SS) + c.below(RTypeName.NN) + c.above(RTypeName.S) + c.below(RTypeName.S)
    if t in (RTypeName.N, RTypeName.SS):
        return -(qp(sigma) * yj)
    if t in (RTypeName.NN, RTypeName.S):
        return qp(sigma) * xi
    if t == RTypeName.W:
        return MPoly.zero()
    return qp(2 * (c.n - 1) - theta) * xi - yj


# NN/SS の融合頂点の重みは、上側の添字から見た文脈で評価する。
# 融合の重みと H~H / VV~ の E 型の指数は、n=2 の YBE が成り立つ形に合わせてある。


def _vt_h(t, c: StrandContext, xy: MPoly) -> MPoly:
    n, tau = c.n, c.tau
    W, S = c.total(RTypeName.W), c.total(RTypeName.S)
    if t == FUSED:
        return qp(2 * tau) - qp(2 * tau + 2 * W) * xy - 1
    return {
        RTypeName.W: (1 - qp(2 * c.above(RTypeName.W)) * xy) * qp(tau),
        RTypeName.S: MPoly.one(),
        RTypeName.SS: -(xy * qp(c.below(RTypeName.SS) + W)),
        RTypeName.NN: qp(c.above(RTypeName.NN) + W),
        RTypeName.N: -qp(n - 1 - S),
        RTypeName.E: qp(tau + W),
    }[t]


def _ht_h(t, c: StrandContext, xy: MPoly) -> MPoly:
    n, tau = c.n, c.tau
    W, S = c.total(RTypeName.W), c.total(RTypeName.S)
    if t == FUSED:
        return qp(2 * n - 2) * xy + qp(2 * tau + 2 * S) - qp(2 * S)
    return {
        RTypeName.W: qp(tau),
        RTypeName.S: 1 - qp(2 * n - 2 - 2 * c.below(RTypeName.S)) * xy,
        RTypeName.SS: qp(n - 1 - S) * xy,
        RTypeName.NN: qp(n - 1 - S),
        RTypeName.N: -qp(n - 1 - S),
        RTypeName.E: qp(tau + W),
    }[t]


def _ht_v(t, c: StrandContext, xy: MPoly) -> MPoly:
    n, tau = c.n, c.tau
    W, S, E = c.total(RTypeName.W), c.total(RTypeName.S), c.total(RTypeName.E)
    if t == FUSED:
        return qp(2 * tau) - qp(2 * tau + 2 * E) * xy - 1
    return {
        RTypeName.W: qp(tau),
        RTypeName.S: MPoly.one(),
        RTypeName.SS: -(xy * qp(c.below(RTypeName.SS) + E)),
        RTypeName.NN: qp(c.above(RTypeName.NN) + E),
        RTypeName.N: -qp(n - 1 - S),
        RTypeName.E: (1 - qp(2 * c.below(RTypeName.E)) * xy) * qp(tau + W),
    }[t]


def _vt_v(t, c: StrandContext, xy: MPoly) -> MPoly:
    tau = c.tau
    W, E, N = c.total(RTypeName.W), c.total(RTypeName.E), c.total(RTypeName.N)
    if t == FUSED:
        return xy + qp(2 * tau + 2 * N) - qp(2 * N)
    return {
        RTypeName.W: qp(tau),
        RTypeName.S: MPoly.one(),
        RTypeName.SS: xy,
        RTypeName.NN: MPoly.one(),
        RTypeName.N: (xy - qp(2 * c.below(RTypeName.N))) * qp(W + E),
        RTypeName.E: qp(tau + W),
    }[t]


def _h_ht(t, c: StrandContext, xy: MPoly) -> MPoly:
    n, tau, kap = c.n, c.tau, c.kappa
    W, S = c.total(RTypeName.W), c.total(RTypeName.S)
    if t == FUSED:
        return (qp(2 * n - 2 + 2 * kap) * xy - qp(2 * kap - 2 * S) + qp(-2 * S)) * qp(-tau)
    return {
        RTypeName.W: qp(-tau),
        RTypeName.S: qp(1 - n + 2 * kap) * (qp(2 * n - 2 + 2 * c.below(RTypeName.S)) * xy - 1),
        RTypeName.SS: qp(n - 1 - c.above(RTypeName.NN)),
        RTypeName.NN: xy * qp(n - 1 - c.below(RTypeName.SS)),
        RTypeName.N: qp(kap - tau + S),
        RTypeName.E: qp(-tau - W),
    }[t]


def _h_vt(t, c: StrandContext, xy: MPoly) -> MPoly:
    n, tau, kap = c.n, c.tau, c.kappa
    E, N = c.total(RTypeName.E), c.total(RTypeName.N)
    if t == FUSED:
        shift = 2 * (E - (n - 1))
        return -(qp(2 * kap) * xy) - qp(shift + 4 * kap) + qp(shift + 2 * kap)
    return {
        RTypeName.W: qp(kap - E),
        RTypeName.S: -qp(1 - n + 2 * kap + N),
        RTypeName.SS: qp(c.above(RTypeName.SS)),
        RTypeName.NN: -(xy * qp(c.below(RTypeName.NN))),
        RTypeName.N: qp(2 * kap),
        RTypeName.E: (1 - qp(2 * n - 2 - 2 * c.below(RTypeName.E)) * xy) * qp(-tau),
    }[t]


def _v_ht(t, c: StrandContext, xy: MPoly) -> MPoly:
    n, tau, kap = c.n, c.tau, c.kappa
    W, N = c.total(RTypeName.W), c.total(RTypeName.N)
    if t == FUSED:
        shift = 2 * (W - (n - 1))
        return -(qp(2 * kap) * xy) - qp(shift + 4 * kap) + qp(shift + 2 * kap)
    return {
        RTypeName.W: (1 - qp(2 * n - 2 - 2 * c.below(RTypeName.W)) * xy) * qp(-tau),
        RTypeName.S: -qp(1 - n + 2 * kap + N),
        RTypeName.SS: qp(c.above(RTypeName.SS)),
        RTypeName.NN: -(xy * qp(c.below(RTypeName.NN))),
        RTypeName.N: qp(2 * kap),
        RTypeName.E: qp(kap - W),
    }[t]


def _v_vt(t, c: StrandContext, xy: MPoly) -> MPoly:
    n, tau, kap = c.n, c.tau, c.kappa
    W, N = c.total(RTypeName.W), c.total(RTypeName.N)
    if t == FUSED:
        return (qp(2 * kap) * xy - qp(2 * kap - 2 * N) + qp(-2 * N)) * qp(-tau)
    return {
        RTypeName.W: qp(-tau),
        RTypeName.S: -qp(1 - n + kap + N - tau),
        RTypeName.SS: qp(-c.above(RTypeName.NN)),
        RTypeName.NN: xy * qp(-c.below(RTypeName.SS)),
        RTypeName.N: (1 - qp(2 * c.below(RTypeName.N)) * xy) * qp(2 * kap),
        RTypeName.E: qp(-tau - W),
    }[t]


_SECTION5 = {RKind.HH: _hh, RKind.VV: _vv, RKind.HV: _hv}
_CAUCHY = {
    RKind.VT_H: _vt_h,
    RKind.HT_H: _ht_h,
    RKind.HT_V: _ht_v,
    RKind.VT_V: _vt_v,
    RKind.H_HT: _h_ht,
    RKind.H_VT: _h_vt,
    RKind.V_HT: _v_ht,
    RKind.V_VT: _v_vt,
}


def strand_types(v: RVertex, assignment: RTypeAssignment, order: StrandOrder) -> Optional[Tuple[RTypeName, ...]]:
    """r_1..r_n の型。許容でない配置があれば None"""
    by_level = [assignment.type_of(c) if c.is_admissible else None for c in v.configs]
    if any(t is None for t in by_level):
        return None
    if StrandOrder(order) == StrandOrder.TOP_FIRST:
        by_level = list(reversed(by_level))
    return tuple(by_level)


def fusion_pair(types: Sequence[RTypeName], alternate_first: bool) -> Optional[Tuple[int, int]]:
    """
    事前融合する (上, 下) の添字組。

    行 i が交代模型なら、下に SS を持つ最初の NN と、その直下で最も近い SS。
    そうでなければ NN と SS の役割を入れ替える。
    """
    upper, lower = (RTypeName.NN, RTypeName.SS) if alternate_first else (RTypeName.SS, RTypeName.NN)
    for k, t in enumerate(types):
        if t != upper:
            continue
        for partner in range(k + 1, len(types)):
            if types[partner] == lower:
                return k, partner
    return None


def r_weight(
    v: RVertex,
    spectral: Optional[Tuple[VarId, VarId]] = None,
    assignment: Optional[RTypeAssignment] = None,
    order: Union[StrandOrder, str] = StrandOrder.TOP_FIRST,
) -> MPoly:
    """
    R^(n) 頂点の重み ∏_k wt(r_k)。

    Parameters
    ----------
    spectral : (VarId, VarId)
        行 i, 行 j のスペクトル変数。省略時は種別の既定値
    assignment : RTypeAssignment
        配置から型への割り当て。省略時は固定済みの割り当て
    """
    assignment = assignment or PINNED_ASSIGNMENT
    ui, uj = spectral or v.kind.default_spectral()
    types = strand_types(v, assignment, StrandOrder(order))
    if types is None:
        return MPoly.zero()
    pi, pj = MPoly.var(ui), MPoly.var(uj)

    if not v.kind.is_cauchy:
        formula = _SECTION5[v.kind]
        return product(formula(t, StrandContext(types, k), pi, pj) for k, t in enumerate(types))

    formula = _CAUCHY[v.kind]
    xy = pi * pj
    pair = fusion_pair(types, v.kind.alternate_first)
    factors: List[MPoly] = []
    for k, t in enumerate(types):
        if pair is not None and k == pair[1]:
            continue
        if pair is not None and k == pair[0]:
            factors.append(formula(FUSED, StrandContext(types, k), xy))
        else:
            factors.append(formula(t, StrandContext(types, k), xy))
    return product(factors)


def all_east_weight(kind: RKind, n: int, spectral: Optional[Tuple[VarId, VarId]] = None, order=StrandOrder.TOP_FIRST) -> MPoly:
    """全ての r_k が E 型の R^(n) 頂点の重み"""
    east = R1Config(Horizontal.RIGHT, Horizontal.RIGHT, Horizontal.RIGHT, Horizontal.RIGHT)
    return r_weight(RVertex(n, kind, (east,) * n), spectral, order=order)


def particle_balance(kind: RKind, configs: Sequence[R1Config]) -> Tuple[int, int]:
    """
    (入る粒子数, 出る粒子数)。

    原模型の行のストランドでは < が東端（I, J）から入って西端（K, L）へ抜ける。
    交代模型の行のストランドでは > が西端から入って東端へ抜ける。
    """
    row_i, row_j = kind.rows
    incoming = outgoing = 0
    for c in configs:
        for row, west, east in ((row_i, c.K, c.I), (row_j, c.L, c.J)):
            if row.is_alternate:
                incoming += west == Horizontal.RIGHT
                outgoing += east == Horizontal.RIGHT
            else:
                incoming += east == Horizontal.LEFT
                outgoing += west == Horizontal.LEFT
    return incoming, outgoing


__all__ = [
    "FIXED_TYPES",
    "PINNED_ASSIGNMENT",
    "R1Config",
    "RKind",
    "RTypeAssignment",
    "RTypeName",
    "RVertex",
    "StrandContext",
    "StrandOrder",
    "admissible_configs",
    "all_east_weight",
    "candidate_assignments",
    "fusion_pair",
    "particle_balance",
    "r_weight",
    "strand_types",
]
