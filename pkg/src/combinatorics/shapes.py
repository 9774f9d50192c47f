"""
分割とリボンの組合せ論

分割・歪シェイプ・β集合（粒子位置）の表現と、n-リボンのタイリング、
水平／垂直ストリップの付加・除去、n-コアの計算を行う。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from src.utils.errors import ShapeError, TilingUniquenessError

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]  # (行, 列)、0始まり、行は上から


@dataclass(frozen=True, order=True)
class Partition:
    """単調非増加な正整数列。末尾の0は取り除いて同一視する"""

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts):
            raise ShapeError(f"分割の成分が負: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ShapeError(f"分割が単調非増加でない: {parts}")
        if 0 in parts:
            raise ShapeError(f"分割の途中に0がある: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: Optional[str]) -> "Partition":
        if text is None:
            return cls()
        text = text.strip().strip("()[]")
        if not text or text in ("0", "∅"):
            return cls()
        try:
            return cls(tuple(int(t) for t in text.split(",") if t.strip()))
        except ValueError as exc:
            raise ShapeError(f"分割を解釈できない: {text!r}") from exc

    def __getitem__(self, i: int) -> int:
        # 0始まり。範囲外は0で埋める
        if i < 0:
            raise IndexError(i)
        return self.parts[i] if i < len(self.parts) else 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def first(self) -> int:
        return self.parts[0] if self.parts else 0

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def contains(self, other: "Partition") -> bool:
        """other ⊆ self"""
        if other.length > self.length:
            return False
        return all(self[i] >= other[i] for i in range(other.length))

    def cells(self) -> List[Cell]:
        return [(r, c) for r, p in enumerate(self.parts) for c in range(p)]

    def padded(self, r: int) -> Tuple[int, ...]:
        return tuple(self[i] for i in range(r))

    def to_json(self) -> List[int]:
        return list(self.parts)

    def __str__(self):
        if not self.parts:
            return "∅"
        return "(" + ",".join(str(p) for p in self.parts) + ")"


EMPTY = Partition()


def conjugate(lam: Partition) -> Partition:
    if not lam.parts:
        return EMPTY
    return Partition(tuple(sum(1 for p in lam.parts if p > c) for c in range(lam.first)))


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition = EMPTY

    def __post_init__(self):
        if not self.outer.contains(self.inner):
            raise ShapeError(f"内側が外側に含まれない: {self.outer}/{self.inner}")

    @classmethod
    def parse(cls, outer: str, inner: Optional[str] = None) -> "SkewShape":
        return cls(Partition.parse(outer), Partition.parse(inner))

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    def cells(self) -> FrozenSet[Cell]:
        return frozenset(
            (r, c) for r in range(self.outer.length) for c in range(self.inner[r], self.outer[r])
        )

    def conjugate(self) -> "SkewShape":
        return SkewShape(conjugate(self.outer), conjugate(self.inner))

    def to_json(self) -> dict:
        return {"outer": self.outer.to_json(), "inner": self.inner.to_json()}

    def __str__(self):
        if not self.inner.parts:
            return str(self.outer)
        return f"{self.outer}/{self.inner}"


@dataclass(frozen=True)
class BetaSet:
    """λ+ρ の粒子位置（1始まりの列番号）。狭義単調減少"""

    offsets: Tuple[int, ...]

    def __post_init__(self):
        offs = tuple(self.offsets)
        if any(offs[i] <= offs[i + 1] for i in range(len(offs) - 1)):
            raise ShapeError(f"β集合が狭義単調減少でない: {offs}")
        if offs and offs[-1] < 1:
            raise ShapeError(f"β集合の位置は1以上: {offs}")
        object.__setattr__(self, "offsets", offs)

    @property
    def width(self) -> int:
        return len(self.offsets)

    def mask(self, columns: int) -> Tuple[bool, ...]:
        occupied = set(self.offsets)
        return tuple((c + 1) in occupied for c in range(columns))


def to_beta(lam: Partition, r: int) -> BetaSet:
    if r < lam.length:
        raise ShapeError(f"β集合の幅が足りない: r={r} < ℓ(λ)={lam.length}")
    return BetaSet(tuple(lam[i] + r - i for i in range(r)))


def from_beta(beta: BetaSet) -> Partition:
    r = beta.width
    return Partition(tuple(b - (r - i) for i, b in enumerate(beta.offsets)))


def beta_from_mask(mask: Sequence[bool]) -> BetaSet:
    return BetaSet(tuple(sorted((c + 1 for c, on in enumerate(mask) if on), reverse=True)))


class StripMode(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    ANY = "any"


@dataclass(frozen=True)
class Tiling:
    ribbons: Tuple[Tuple[Cell, ...], ...]
    spin: int

    def to_json(self) -> dict:
        return {"ribbons": [[list(c) for c in rb] for rb in self.ribbons], "spin": self.spin}


@dataclass(frozen=True, order=True)
class StripResult:
    shape: Partition
    spin: int


def ribbon_spin(cells: Sequence[Cell]) -> int:
    """リボンのスピン = 高さ - 1"""
    return len({r for r, _ in cells}) - 1


def is_ribbon(cells: Sequence[Cell]) -> bool:
    """連結で2×2の正方形を含まないセル集合か"""
    cell_set = set(cells)
    if not cell_set:
        return False
    for r, c in cell_set:
        if {(r, c + 1), (r + 1, c), (r + 1, c + 1)} <= cell_set:
            return False
    start = next(iter(cell_set))
    seen = {start}
    stack = [start]
    while stack:
        r, c = stack.pop()
        for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if nb in cell_set and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cell_set)


def _ribbon_paths(head: Cell, n: int, cells: FrozenSet[Cell]) -> Iterator[Tuple[Cell, ...]]:
    # headから左または下に進むn個のセルの経路
    def walk(path: Tuple[Cell, ...]) -> Iterator[Tuple[Cell, ...]]:
        if len(path) == n:
            yield path
            return
        r, c = path[-1]
        for nxt in ((r, c - 1), (r + 1, c)):
            if nxt in cells:
                yield from walk(path + (nxt,))

    yield from walk((head,))


def _head_ok(ribbon: Tuple[Cell, ...], cells: FrozenSet[Cell], mode: StripMode) -> bool:
    if mode == StripMode.HORIZONTAL:
        r, c = ribbon[0]
        return (r - 1, c) not in cells
    if mode == StripMode.VERTICAL:
        r, c = ribbon[-1]
        return (r, c - 1) not in cells
    return True


@lru_cache(maxsize=None)
def _tilings(remaining: FrozenSet[Cell], full: FrozenSet[Cell], n: int, mode: StripMode) -> Tuple[Tuple[Tuple[Cell, ...], ...], ...]:
    if not remaining:
        return ((),)
    top = min(r for r, _ in remaining)
    head = (top, max(c for r, c in remaining if r == top))
    found = []
    for ribbon in _ribbon_paths(head, n, remaining):
        if not _head_ok(ribbon, full, mode):
            continue
        rest = remaining.difference(ribbon)
        for tail in _tilings(rest, full, n, mode):
            found.append((ribbon,) + tail)
    return tuple(found)


@lru_cache(maxsize=None)
def ribbon_tilings(shape: SkewShape, n: int, mode: Union[StripMode, str] = StripMode.ANY) -> Tuple[Tiling, ...]:
    """
    歪シェイプのn-リボンによるタイリングを列挙する。

    Parameters
    ----------
    shape : SkewShape
        対象の歪シェイプ
    n : int
        リボンのサイズ
    mode : StripMode
        horizontal: 各リボンの右上セルが北側境界に接する
        vertical: 各リボンの左下セルが西側境界に接する
        any: 条件なし

    Returns
    -------
    Tuple[Tiling, ...]
        タイリングの列（空ならタイリング不能）

    Raises
    ------
    TilingUniquenessError
        horizontal/verticalで2通り以上見つかった場合
    """
    mode = StripMode(mode)
    if n < 1:
        raise ShapeError(f"nは1以上: n={n}")
    if shape.size % n != 0:
        return ()
    cells = shape.cells()
    raw = _tilings(cells, cells, n, mode)
    tilings = tuple(
        Tiling(ribbons=rbs, spin=sum(ribbon_spin(rb) for rb in rbs)) for rbs in raw
    )
    if mode != StripMode.ANY and len(tilings) > 1:
        logger.error(f"ストリップのタイリングが一意でない: shape={shape}, n={n}, mode={mode.value}")
        raise TilingUniquenessError(shape, mode.value, list(tilings))
    return tilings


def strip_spin(shape: SkewShape, n: int, mode: Union[StripMode, str]) -> Optional[int]:
    """λ/μ がモードのストリップならスピンを、そうでなければNoneを返す"""
    tilings = ribbon_tilings(shape, n, mode)
    return tilings[0].spin if tilings else None


@dataclass(frozen=True)
class ShapeBound:
    """作用素やストリップ付加の探索範囲"""

    outer: Optional[Partition] = None
    inner: Optional[Partition] = None
    max_part: Optional[int] = None
    max_length: Optional[int] = None
    max_size: Optional[int] = None

    def admits(self, lam: Partition) -> bool:
        if self.outer is not None and not self.outer.contains(lam):
            return False
        if self.inner is not None and not lam.contains(self.inner):
            return False
        if self.max_part is not None and lam.first > self.max_part:
            return False
        if self.max_length is not None and lam.length > self.max_length:
            return False
        if self.max_size is not None and lam.size > self.max_size:
            return False
        return True


UNBOUNDED = ShapeBound()


def partitions_of_size(m: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """サイズmの分割を辞書式降順に列挙する"""
    if m < 0:
        return
    limit = m if max_part is None else min(m, max_part)

    def gen(rest: int, cap: int) -> Iterator[Tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, cap), 0, -1):
            for tail in gen(rest - p, p):
                yield (p,) + tail

    for parts in gen(m, limit):
        yield Partition(parts)


def superpartitions(mu: Partition, added: int, max_part: Optional[int] = None, max_length: Optional[int] = None) -> Iterator[Partition]:
    """μ ⊆ λ かつ |λ| = |μ| + added となる λ を列挙する"""
    max_part = mu.first + added if max_part is None else max_part
    max_length = mu.length + added if max_length is None else max_length

    def gen(i: int, prev: int, rest: int) -> Iterator[Tuple[int, ...]]:
        if rest == 0 and i >= mu.length:
            yield ()
            return
        if i >= max_length:
            return
        low = mu[i]
        high = min(prev, low + rest)
        for p in range(high, low - 1, -1):
            if p == 0:
                if rest == 0:
                    yield ()
                continue
            for tail in gen(i + 1, p, rest - (p - low)):
                yield (p,) + tail

    for parts in gen(0, max_part, added):
        yield Partition(parts)


def subpartitions(lam: Partition, removed: int) -> Iterator[Partition]:
    """μ ⊆ λ かつ |μ| = |λ| - removed となる μ を列挙する"""
    target = lam.size - removed
    if target < 0:
        return

    def gen(i: int, prev: int, rest: int) -> Iterator[Tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        if i >= lam.length:
            return
        # 残りの行で埋められる上限
        for p in range(min(prev, lam[i], rest), 0, -1):
            capacity = sum(min(p, lam[j]) for j in range(i + 1, lam.length))
            if p + capacity < rest:
                break
            for tail in gen(i + 1, p, rest - p):
                yield (p,) + tail

    for parts in gen(0, lam.first, target):
        yield Partition(parts)


def intermediate_partitions(inner: Partition, outer: Partition, added: int) -> Iterator[Partition]:
    """inner ⊆ γ ⊆ outer かつ |γ| = |inner| + added となる γ を列挙する"""
    if not outer.contains(inner) or added < 0:
        return

    def gen(i: int, prev: int, rest: int) -> Iterator[Tuple[int, ...]]:
        if i >= outer.length:
            if rest == 0:
                yield ()
            return
        low = inner[i]
        for p in range(min(prev, outer[i], low + rest), low - 1, -1):
            room = sum(max(0, min(p, outer[j]) - inner[j]) for j in range(i + 1, outer.length))
            if (p - low) + room < rest:
                break
            for tail in gen(i + 1, p, rest - (p - low)):
                yield (p,) + tail

    for parts in gen(0, outer.first, added):
        yield Partition(parts)


def all_subpartitions(lam: Partition) -> Iterator[Partition]:
    for size in range(lam.size, -1, -1):
        yield from subpartitions(lam, lam.size - size)


@lru_cache(maxsize=None)
def _add_strips_cached(mu: Partition, n: int, k: int, mode: StripMode) -> Tuple[StripResult, ...]:
    results = []
    for lam in superpartitions(mu, n * k):
        spin = strip_spin(SkewShape(lam, mu), n, mode)
        if spin is not None:
            results.append(StripResult(lam, spin))
    return tuple(sorted(results))


@lru_cache(maxsize=None)
def _add_strips_within(mu: Partition, outer: Partition, n: int, k: int, mode: StripMode) -> Tuple[StripResult, ...]:
    results = []
    for lam in intermediate_partitions(mu, outer, n * k):
        spin = strip_spin(SkewShape(lam, mu), n, mode)
        if spin is not None:
            results.append(StripResult(lam, spin))
    return tuple(sorted(results))


def add_strips(
    mu: Partition,
    n: int,
    k: int,
    mode: Union[StripMode, str],
    cap: ShapeBound = UNBOUNDED,
) -> List[StripResult]:
    """μ に k 本の n-リボンからなるストリップを付加した結果を列挙する"""
    mode = StripMode(mode)
    if k < 0:
        raise ShapeError(f"kは0以上: k={k}")
    if k == 0:
        return [StripResult(mu, 0)] if cap.admits(mu) else []
    if cap.outer is not None:
        candidates = _add_strips_within(mu, cap.outer, n, k, mode)
    else:
        candidates = _add_strips_cached(mu, n, k, mode)
    return [res for res in candidates if cap.admits(res.shape)]


@lru_cache(maxsize=None)
def _remove_strips_cached(lam: Partition, n: int, k: int, mode: StripMode) -> Tuple[StripResult, ...]:
    results = []
    for mu in subpartitions(lam, n * k):
        spin = strip_spin(SkewShape(lam, mu), n, mode)
        if spin is not None:
            results.append(StripResult(mu, spin))
    return tuple(sorted(results))


def remove_strips(
    lam: Partition,
    n: int,
    k: int,
    mode: Union[StripMode, str],
    floor: Optional[Partition] = None,
) -> List[StripResult]:
    """λ から k 本の n-リボンからなるストリップを除去した結果（StripResult.shape は内側）"""
    mode = StripMode(mode)
    if k < 0:
        raise ShapeError(f"kは0以上: k={k}")
    if k == 0:
        return [StripResult(lam, 0)]
    results = _remove_strips_cached(lam, n, k, mode)
    if floor is None:
        return list(results)
    return [res for res in results if res.shape.contains(floor)]


def removable_ribbons(lam: Partition, n: int) -> List[StripResult]:
    """λ から1本のn-リボンを除いて得られる分割とそのスピン（間にある粒子数）"""
    r = lam.length
    beads = set(to_beta(lam, r).offsets)
    results = []
    for b in sorted(beads, reverse=True):
        target = b - n
        if target < 1 or target in beads:
            continue
        height = sum(1 for other in beads if target < other < b)
        moved = BetaSet(tuple(sorted((beads - {b}) | {target}, reverse=True)))
        results.append(StripResult(from_beta(moved), height))
    return results


def n_core(lam: Partition, n: int) -> Partition:
    """そろばん上で各ビーズを可能な限りn下げた結果"""
    if n < 1:
        raise ShapeError(f"nは1以上: n={n}")
    r = lam.length
    beads = to_beta(lam, r).offsets
    runners = {}
    for b in beads:
        runners.setdefault(b % n, []).append(b)
    settled = []
    for residue, items in runners.items():
        # 位置は1以上なので、各ランナーの最下段は residue（0ならn）
        start = residue if residue != 0 else n
        settled.extend(start + n * i for i in range(len(items)))
    return from_beta(BetaSet(tuple(sorted(settled, reverse=True))))


def is_n_core(lam: Partition, n: int) -> bool:
    return not removable_ribbons(lam, n)


def partitions_with_core(core: Partition, n: int, max_ribbons: int) -> List[Partition]:
    """n-コアが core で、core に高々 max_ribbons 本のリボンを足した分割"""
    found = []
    for k in range(max_ribbons + 1):
        for lam in superpartitions(core, n * k):
            if n_core(lam, n) == core:
                found.append(lam)
    return found


def parse_partition(value: Union[str, Sequence[int], Partition, None]) -> Partition:
    if isinstance(value, Partition):
        return value
    if value is None or isinstance(value, str):
        return Partition.parse(value)
    return Partition(tuple(value))


__all__ = [
    "BetaSet",
    "Cell",
    "EMPTY",
    "Partition",
    "ShapeBound",
    "SkewShape",
    "StripMode",
    "StripResult",
    "Tiling",
    "UNBOUNDED",
    "add_strips",
    "all_subpartitions",
    "beta_from_mask",
    "conjugate",
    "from_beta",
    "intermediate_partitions",
    "is_n_core",
    "is_ribbon",
    "n_core",
    "parse_partition",
    "partitions_of_size",
    "partitions_with_core",
    "remove_strips",
    "removable_ribbons",
    "ribbon_spin",
    "ribbon_tilings",
    "strip_spin",
    "subpartitions",
    "superpartitions",
    "to_beta",
]
