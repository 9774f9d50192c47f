"""
有理数係数の疎な多変数多項式（qについてのみローラン多項式）

係数はFractionで保持し、浮動小数点は一切使わない。
"""

from __future__ import annotations

import json
import re
from enum import Enum, IntEnum
from fractions import Fraction
from functools import total_ordering
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from src.utils.errors import NegativeExponentError, NonInvertibleSubstitutionError, PolynomialError


class Family(IntEnum):
    """変数の族。値の順がそのまま正準順序になる"""

    Q = 0
    X = 1
    Y = 2
    W = 3
    Z = 4
    GENERIC = 5


_FAMILY_PREFIX = {
    Family.Q: "q",
    Family.X: "x",
    Family.Y: "y",
    Family.W: "w",
    Family.Z: "z",
    Family.GENERIC: "g",
}
_PREFIX_FAMILY = {v: k for k, v in _FAMILY_PREFIX.items()}
_VAR_PATTERN = re.compile(r"^([xywzg])(\d+)$")


@total_ordering
class VarId:
    """変数識別子 (family, index)。qはindex=0の唯一のインスタンス"""

    __slots__ = ("family", "index")

    def __init__(self, family: Family, index: int = 0):
        family = Family(family)
        if family == Family.Q:
            index = 0
        elif index < 0:
            raise PolynomialError(f"変数の添字が負: family={family.name}, index={index}")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "index", index)

    def __setattr__(self, name, value):
        raise AttributeError("VarIdは不変")

    @property
    def key(self) -> Tuple[int, int]:
        return (int(self.family), self.index)

    @property
    def name(self) -> str:
        if self.family == Family.Q:
            return "q"
        return f"{_FAMILY_PREFIX[self.family]}{self.index}"

    @property
    def is_q(self) -> bool:
        return self.family == Family.Q

    @classmethod
    def parse(cls, text: str) -> "VarId":
        text = text.strip()
        if text == "q":
            return Q
        m = _VAR_PATTERN.match(text)
        if not m:
            raise PolynomialError(f"変数名を解釈できない: {text!r}")
        return cls(_PREFIX_FAMILY[m.group(1)], int(m.group(2)))

    def __eq__(self, other):
        if not isinstance(other, VarId):
            return NotImplemented
        return self.key == other.key

    def __lt__(self, other):
        if not isinstance(other, VarId):
            return NotImplemented
        return self.key < other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"VarId({self.name})"

    def __str__(self):
        return self.name


Q = VarId(Family.Q)


def x(i: int) -> VarId:
    return VarId(Family.X, i)


def y(j: int) -> VarId:
    return VarId(Family.Y, j)


def w(k: int) -> VarId:
    return VarId(Family.W, k)


def z(l: int) -> VarId:
    return VarId(Family.Z, l)


@total_ordering
class Monomial:
    """
    単項式。exps は VarId 順に整列した (VarId, 指数) のタプルで、指数0は保持しない。
    q 以外の変数の指数は非負でなければならない。
    """

    __slots__ = ("exps", "_hash")

    def __init__(self, exps: Union[Mapping[VarId, int], Iterable[Tuple[VarId, int]]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        merged: Dict[VarId, int] = {}
        for var, e in items:
            merged[var] = merged.get(var, 0) + int(e)
        cleaned = []
        for var in sorted(merged):
            e = merged[var]
            if e == 0:
                continue
            if e < 0 and not var.is_q:
                raise NegativeExponentError(f"q以外の変数に負の指数: {var.name}^{e}")
            cleaned.append((var, e))
        self.exps: Tuple[Tuple[VarId, int], ...] = tuple(cleaned)
        self._hash = hash(self.exps)

    @property
    def sort_key(self) -> Tuple[Tuple[int, int, int], ...]:
        return tuple((var.key[0], var.key[1], e) for var, e in self.exps)

    def exponent(self, var: VarId) -> int:
        for v, e in self.exps:
            if v == var:
                return e
        return 0

    @property
    def nonq_degree(self) -> int:
        """X, Y, W, Z, GENERIC 変数についての総次数"""
        return sum(e for v, e in self.exps if not v.is_q)

    @property
    def is_one(self) -> bool:
        return not self.exps

    def variables(self) -> Tuple[VarId, ...]:
        return tuple(v for v, _ in self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(list(self.exps) + list(other.exps))

    def __pow__(self, k: int) -> "Monomial":
        return Monomial((v, e * k) for v, e in self.exps)

    def inverse(self) -> "Monomial":
        return Monomial((v, -e) for v, e in self.exps)

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exps == other.exps

    def __lt__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial({self.pretty() or '1'})"

    def pretty(self) -> str:
        parts = []
        for v, e in self.exps:
            parts.append(v.name if e == 1 else f"{v.name}^{e}")
        return "*".join(parts)


ONE_MONOMIAL = Monomial()

Scalar = Union[int, Fraction]


class MPoly:
    """
    有理数係数の疎多項式。生成後は不変。

    terms は Monomial -> Fraction の辞書で、係数0の項は持たない。
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        cleaned: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    cleaned[m] = c
        self._terms = cleaned
        self._hash: Optional[int] = None

    # --- 生成 ---
    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "MPoly":
        # 係数0を含まないことが保証されている場合のみ使う
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "MPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "MPoly":
        return cls.constant(1)

    @classmethod
    def constant(cls, c: Scalar) -> "MPoly":
        c = Fraction(c)
        return cls._raw({ONE_MONOMIAL: c} if c != 0 else {})

    @classmethod
    def var(cls, v: VarId, power: int = 1) -> "MPoly":
        return cls._raw({Monomial([(v, power)]): Fraction(1)})

    @classmethod
    def q_power(cls, k: int) -> "MPoly":
        return cls.var(Q, k)

    @classmethod
    def monomial(cls, coeff: Scalar, exps: Mapping[VarId, int]) -> "MPoly":
        return cls({Monomial(exps): coeff})

    @classmethod
    def coerce(cls, value: Union["MPoly", Scalar]) -> "MPoly":
        if isinstance(value, MPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.constant(value)
        raise PolynomialError(f"MPolyに変換できない値: {value!r}")

    # --- 参照 ---
    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0].sort_key))

    def coefficient(self, m: Union[Monomial, Mapping[VarId, int]]) -> Fraction:
        if not isinstance(m, Monomial):
            m = Monomial(m)
        return self._terms.get(m, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def variables(self) -> Tuple[VarId, ...]:
        found = set()
        for m in self._terms:
            found.update(m.variables())
        return tuple(sorted(found))

    def max_nonq_degree(self) -> int:
        return max((m.nonq_degree for m in self._terms), default=0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_MONOMIAL, Fraction(0))

    # --- 演算 ---
    def __add__(self, other):
        if not isinstance(other, (MPoly, int, Fraction)):
            return NotImplemented
        other = MPoly.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        result = dict(self._terms)
        for m, c in other._terms.items():
            s = result.get(m, 0) + c
            if s == 0:
                result.pop(m, None)
            else:
                result[m] = s
        return MPoly._raw(result)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (MPoly, int, Fraction)):
            return NotImplemented
        return self + (-MPoly.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (MPoly, int, Fraction)):
            return NotImplemented
        return MPoly.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return MPoly.zero()
        result: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                s = result.get(m, 0) + c1 * c2
                if s == 0:
                    result.pop(m, None)
                else:
                    result[m] = s
        return MPoly._raw(result)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Scalar) -> "MPoly":
        c = Fraction(c)
        if c == 0:
            return MPoly.zero()
        return MPoly._raw({m: v * c for m, v in self._terms.items()})

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            return self.inverse_monomial() ** (-k)
        result = MPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse_monomial(self) -> "MPoly":
        """単項式の逆元。単項式以外は逆元を持たない"""
        if not self.is_monomial():
            raise NonInvertibleSubstitutionError(f"単項式でない多項式は逆元を持たない: {self}")
        (m, c), = self._terms.items()
        return MPoly._raw({m.inverse(): 1 / c})

    def map_monomials(self, fn: Callable[[Monomial, Fraction], Optional[Tuple[Monomial, Fraction]]]) -> "MPoly":
        result: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            out = fn(m, c)
            if out is None:
                continue
            m2, c2 = out
            result[m2] = result.get(m2, 0) + c2
        return MPoly(result)

    def filter_terms(self, keep: Callable[[Monomial], bool]) -> "MPoly":
        return MPoly._raw({m: c for m, c in self._terms.items() if keep(m)})

    # --- 比較 ---
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # --- 直列化 ---
    def to_json(self) -> List[dict]:
        out = []
        for m, c in self.items():
            coeff = f"{c.numerator}/{c.denominator}"
            out.append({"coeff": coeff, "exps": [[v.name, e] for v, e in m.exps]})
        return out

    @classmethod
    def from_json(cls, data: List[dict]) -> "MPoly":
        terms: Dict[Monomial, Fraction] = {}
        for item in data:
            m = Monomial((VarId.parse(name), int(e)) for name, e in item["exps"])
            terms[m] = terms.get(m, 0) + Fraction(item["coeff"])
        return cls(terms)

    def canonical_json(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)

    def __repr__(self):
        return f"MPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for m, c in self.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = m.pretty()
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            chunks.append((sign, text))
        first_sign, first_text = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_text
        for sign, text in chunks[1:]:
            out += f" {sign} {text}"
        return out


PolyLike = Union[MPoly, Scalar]


class ArithOp(str, Enum):
    ADD = "add"
    MUL = "mul"
    NEG = "neg"
    SCALAR_MUL = "scalar_mul"


class Sign(str, Enum):
    PLUS = "plus"
    MINUS = "minus"


class Place(str, Enum):
    NUMERATOR = "numerator"
    DENOMINATOR = "denominator"


def poly_arith(op: Union[ArithOp, str], a: MPoly, b: Optional[PolyLike] = None) -> MPoly:
    op = ArithOp(op)
    if op == ArithOp.NEG:
        return -a
    if b is None:
        raise PolynomialError(f"二項演算に右辺がない: op={op.value}")
    if op == ArithOp.ADD:
        return a + MPoly.coerce(b)
    if op == ArithOp.MUL:
        return a * MPoly.coerce(b)
    if isinstance(b, MPoly):
        if b.is_zero():
            return MPoly.zero()
        if len(b) != 1 or b.constant_term() == 0:
            raise PolynomialError("scalar_mulの右辺は定数でなければならない")
        b = b.constant_term()
    return a.scale(b)


def series_truncate(p: MPoly, bound: int) -> MPoly:
    """q以外の変数の総次数がboundを超える項を落とす"""
    if bound < 0:
        raise PolynomialError(f"打ち切り次数が負: bound={bound}")
    return p.filter_terms(lambda m: m.nonq_degree <= bound)


def truncate_in(p: MPoly, bound: int, variables: Iterable[VarId]) -> MPoly:
    """指定した変数群についての総次数がboundを超える項を落とす"""
    vs = set(variables)
    return p.filter_terms(lambda m: sum(e for v, e in m.exps if v in vs) <= bound)


def expand_product_factor(
    sign: Union[Sign, str],
    place: Union[Place, str],
    u: VarId,
    v: VarId,
    n: int,
    bound: int,
) -> MPoly:
    """
    ∏_{t=0}^{n-1} (1 ± q^{2t}uv)^{±1} を展開する。

    Parameters
    ----------
    sign : Sign
        因子内の符号
    place : Place
        分子なら多項式そのもの、分母なら幾何級数として展開
    u, v : VarId
        スペクトル変数
    n : int
        因子の個数
    bound : int
        uvについての冪の上限（uv^k, k > bound の項を落とす）

    Returns
    -------
    MPoly
    """
    sign = Sign(sign)
    place = Place(place)
    if bound < 0:
        raise PolynomialError(f"打ち切り次数が負: bound={bound}")
    if u == v:
        raise PolynomialError(f"同じ変数の積は扱わない: {u.name}")
    if n < 1:
        raise PolynomialError(f"nは1以上: n={n}")

    s = 1 if sign == Sign.PLUS else -1
    uv = MPoly.var(u) * MPoly.var(v)
    result = MPoly.one()
    for t in range(n):
        base = MPoly.q_power(2 * t) * uv
        if place == Place.NUMERATOR:
            factor = MPoly.one() + base.scale(s)
        else:
            # 1/(1 + s·b) = Σ_m (−s·b)^m
            factor = MPoly.zero()
            term = MPoly.one()
            for _ in range(bound + 1):
                factor = factor + term
                term = term * base.scale(-s)
        result = truncate_in(result * factor, 2 * bound, (u, v))
    return result


def specialize(p: MPoly, assignment: Mapping[VarId, PolyLike]) -> MPoly:
    """
    変数の同時代入。assignmentに現れない変数はそのまま残す。

    負の冪を持つ変数（q）に代入できるのは単項式のみ。
    """
    subs = {v: MPoly.coerce(val) for v, val in assignment.items()}
    power_cache: Dict[Tuple[VarId, int], MPoly] = {}

    def power(v: VarId, e: int) -> MPoly:
        key = (v, e)
        if key not in power_cache:
            val = subs[v]
            if e < 0 and not val.is_monomial():
                raise NonInvertibleSubstitutionError(
                    f"負の冪 {v.name}^{e} に単項式でない多項式を代入できない: {val}"
                )
            power_cache[key] = val ** e
        return power_cache[key]

    result = MPoly.zero()
    for m, c in p._terms.items():
        kept = []
        term = MPoly.constant(c)
        for v, e in m.exps:
            if v in subs:
                term = term * power(v, e)
                if term.is_zero():
                    break
            else:
                kept.append((v, e))
        if term.is_zero():
            continue
        if kept:
            term = term * MPoly({Monomial(kept): 1})
        result = result + term
    return result


def product(factors: Iterable[PolyLike]) -> MPoly:
    result = MPoly.one()
    for f in factors:
        result = result * MPoly.coerce(f)
    return result


def poly_sum(items: Iterable[PolyLike]) -> MPoly:
    terms: Dict[Monomial, Fraction] = {}
    for item in items:
        for m, c in MPoly.coerce(item)._terms.items():
            terms[m] = terms.get(m, 0) + c
    return MPoly(terms)
