"""
スーパーリボンタブローの列挙とスーパーLLT多項式（タブロー経路）
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

from src.algebra.poly import Family, MPoly, VarId, poly_sum
from src.combinatorics.shapes import (
    Partition,
    ShapeBound,
    SkewShape,
    StripMode,
    add_strips,
)
from src.utils.errors import AlphabetOrderError

_LETTER_PATTERN = re.compile(r"^(\d+)(['′]?)$")


class LetterKind(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"

    @property
    def strip_mode(self) -> StripMode:
        return StripMode.HORIZONTAL if self == LetterKind.HORIZONTAL else StripMode.VERTICAL


@dataclass(frozen=True)
class Letter:
    name: str
    kind: LetterKind
    spectral: VarId

    @property
    def is_horizontal(self) -> bool:
        return self.kind == LetterKind.HORIZONTAL

    def weight_factor(self) -> MPoly:
        """1本のリボンあたりの重み x_i または -y_j"""
        v = MPoly.var(self.spectral)
        return v if self.is_horizontal else -v


def horizontal(i: int, family: Family = Family.X) -> Letter:
    return Letter(str(i), LetterKind.HORIZONTAL, VarId(family, i))


def vertical(j: int, family: Family = Family.Y) -> Letter:
    return Letter(f"{j}'", LetterKind.VERTICAL, VarId(family, j))


@dataclass(frozen=True)
class AlphabetOrder:
    """二種類のアルファベット A, A' を混ぜた全順序（小さい順）"""

    letters: Tuple[Letter, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for kind in LetterKind:
            same = [l for l in self.letters if l.kind == kind]
            indices = [l.spectral.index for l in same]
            if indices != sorted(indices) or len(set(indices)) != len(indices):
                raise AlphabetOrderError(
                    f"同種文字の順序がスペクトル変数の添字順と一致しない: kind={kind.value}, letters={[l.name for l in same]}"
                )

    @classmethod
    def parse(cls, text: str, x_family: Family = Family.X, y_family: Family = Family.Y) -> "AlphabetOrder":
        """'1,1\\',2' の形式。プライム付きが垂直ストリップ文字"""
        text = (text or "").strip()
        if not text:
            return cls(())
        letters = []
        for token in text.split(","):
            token = token.strip()
            m = _LETTER_PATTERN.match(token)
            if not m:
                raise AlphabetOrderError(f"文字を解釈できない: {token!r}")
            index = int(m.group(1))
            if index < 1:
                raise AlphabetOrderError(f"文字の添字は1以上: {token!r}")
            letters.append(vertical(index, y_family) if m.group(2) else horizontal(index, x_family))
        return cls(tuple(letters))

    @classmethod
    def standard(cls, nx: int, ny: int = 0, x_family: Family = Family.X, y_family: Family = Family.Y) -> "AlphabetOrder":
        """1 < 2 < ... < nx < 1' < ... < ny'"""
        return cls(
            tuple(horizontal(i, x_family) for i in range(1, nx + 1))
            + tuple(vertical(j, y_family) for j in range(1, ny + 1))
        )

    @property
    def horizontal_count(self) -> int:
        return sum(1 for l in self.letters if l.is_horizontal)

    @property
    def vertical_count(self) -> int:
        return len(self.letters) - self.horizontal_count

    def variables(self) -> Tuple[VarId, ...]:
        return tuple(l.spectral for l in self.letters)

    def spec(self) -> str:
        return ",".join(l.name for l in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)


def interleavings(nx: int, ny: int, x_family: Family = Family.X, y_family: Family = Family.Y) -> Iterator[AlphabetOrder]:
    """同種内の順序を保つ全ての混ぜ合わせ"""
    total = nx + ny
    for slots in combinations(range(total), nx):
        chosen = set(slots)
        hi = iter(range(1, nx + 1))
        vi = iter(range(1, ny + 1))
        yield AlphabetOrder(
            tuple(horizontal(next(hi), x_family) if s in chosen else vertical(next(vi), y_family) for s in range(total))
        )


@dataclass(frozen=True)
class SuperTableau:
    order: AlphabetOrder
    chain: Tuple[Partition, ...]
    spins: Tuple[int, ...]
    counts: Tuple[int, ...]

    @property
    def spin(self) -> int:
        return sum(self.spins)

    def weight(self) -> MPoly:
        """q^{spin} ∏ x_i^{wt_i} ∏ (-y_j)^{wt'_j}"""
        result = MPoly.q_power(self.spin)
        for letter, count in zip(self.order.letters, self.counts):
            if count:
                result = result * letter.weight_factor() ** count
        return result

    def to_json(self) -> dict:
        return {
            "chain": [p.to_json() for p in self.chain],
            "spins": list(self.spins),
            "counts": list(self.counts),
            "letters": [l.name for l in self.order.letters],
        }


def enumerate_tableaux(shape: SkewShape, n: int, order: AlphabetOrder) -> List[SuperTableau]:
    """
    文字を小さい順に走査し、各文字でストリップを付加してタブローを列挙する。

    中間シェイプは外側λに含まれるものだけを探索する。
    """
    bound = ShapeBound(outer=shape.outer)
    results: List[SuperTableau] = []
    if shape.size % n != 0:
        return results

    def walk(i: int, current: Partition, chain, spins, counts):
        remaining = shape.outer.size - current.size
        if i == len(order.letters):
            if remaining == 0:
                results.append(SuperTableau(order, tuple(chain), tuple(spins), tuple(counts)))
            return
        mode = order.letters[i].kind.strip_mode
        for k in range(remaining // n + 1):
            for step in add_strips(current, n, k, mode, cap=bound):
                walk(i + 1, step.shape, chain + [step.shape], spins + [step.spin], counts + [k])

    walk(0, shape.inner, [shape.inner], [], [])
    return results


def super_llt(shape: SkewShape, n: int, order: AlphabetOrder) -> MPoly:
    """
    Σ_T q^{spin(T)} x^{wt(T)} (-y)^{wt'(T)} を文字ごとの動的計画法で求める。

    各段では「現在のシェイプ → 多項式」の辞書を更新する。
    """
    if shape.size % n != 0:
        return MPoly.zero()
    bound = ShapeBound(outer=shape.outer)
    layer: Dict[Partition, MPoly] = {shape.inner: MPoly.one()}
    for letter in order.letters:
        mode = letter.kind.strip_mode
        factor = letter.weight_factor()
        nxt: Dict[Partition, List[MPoly]] = {}
        for current, coeff in layer.items():
            remaining = shape.outer.size - current.size
            for k in range(remaining // n + 1):
                step_weight = coeff * factor ** k
                for step in add_strips(current, n, k, mode, cap=bound):
                    nxt.setdefault(step.shape, []).append(step_weight * MPoly.q_power(step.spin))
        layer = {lam: poly_sum(parts) for lam, parts in nxt.items()}
    return layer.get(shape.outer, MPoly.zero())


def tableaux_polynomial(tableaux: Sequence[SuperTableau]) -> MPoly:
    return poly_sum(t.weight() for t in tableaux)


__all__ = [
    "AlphabetOrder",
    "Letter",
    "LetterKind",
    "SuperTableau",
    "enumerate_tableaux",
    "horizontal",
    "interleavings",
    "super_llt",
    "tableaux_polynomial",
    "vertical",
]
