"""
対称関数まわりの補助計算と独立オラクル

z_λ, a_k のほか、h_j / e_j の直接展開と sympy によるシューア多項式（双交代式）を提供する。
オラクル側は格子・タブロー側の実装と独立に計算する。
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import factorial
from typing import Dict, List, Sequence

import sympy as sp

from src.algebra.poly import Monomial, MPoly, VarId, poly_sum, product


def z_lambda(parts: Sequence[int]) -> int:
    """z_λ = ∏_i i^{m_i} m_i!"""
    result = 1
    for part, mult in Counter(p for p in parts if p > 0).items():
        result *= part ** mult * factorial(mult)
    return result


def a_k(n: int, k: int) -> MPoly:
    """a_k = (1 - q^{2nk}) / (1 - q^{2k}) = Σ_{t=0}^{n-1} q^{2kt}"""
    return poly_sum(MPoly.q_power(2 * k * t) for t in range(n))


def q_alphabet(n: int) -> List[MPoly]:
    """(1, q^2, ..., q^{2(n-1)})"""
    return [MPoly.q_power(2 * t) for t in range(n)]


def complete_homogeneous_at(j: int, values: Sequence[MPoly]) -> MPoly:
    """h_j を値の列で直接評価する"""
    if j == 0:
        return MPoly.one()
    return poly_sum(product(c) for c in combinations_with_replacement(values, j))


def elementary_at(j: int, values: Sequence[MPoly]) -> MPoly:
    """e_j を値の列で直接評価する"""
    if j == 0:
        return MPoly.one()
    return poly_sum(product(c) for c in combinations(values, j))


def _sympy_symbol(var: VarId) -> sp.Symbol:
    return sp.Symbol(var.name)


def sympy_to_mpoly(expr: sp.Expr, variables: Sequence[VarId]) -> MPoly:
    """sympy の多項式式を MPoly に変換する（有理数係数のみ）"""
    if not variables:
        rational = sp.Rational(sp.nsimplify(expr))
        return MPoly.constant(Fraction(int(rational.p), int(rational.q)))
    syms = [_sympy_symbol(v) for v in variables]
    poly = sp.Poly(sp.expand(expr), *syms)
    terms: Dict[Monomial, Fraction] = {}
    for exps, coeff in poly.terms():
        m = Monomial(zip(variables, exps))
        rational = sp.Rational(coeff)
        terms[m] = Fraction(int(rational.p), int(rational.q))
    return MPoly(terms)


def schur_bialternant(parts: Sequence[int], variables: Sequence[VarId]) -> MPoly:
    """
    シューア多項式 s_λ(x_1..x_r) を双交代式 det(x_i^{λ_j+r-j}) / det(x_i^{r-j}) で計算する。

    ℓ(λ) > r のときは 0。
    """
    r = len(variables)
    lam = [p for p in parts if p > 0]
    if len(lam) > r:
        return MPoly.zero()
    if r == 0:
        return MPoly.one()
    lam = lam + [0] * (r - len(lam))
    syms = [_sympy_symbol(v) for v in variables]
    numerator = sp.Matrix(r, r, lambda i, j: syms[i] ** (lam[j] + r - 1 - j)).det()
    vandermonde = sp.Matrix(r, r, lambda i, j: syms[i] ** (r - 1 - j)).det()
    quotient = sp.cancel(numerator / vandermonde)
    return sympy_to_mpoly(quotient, variables)


def q_evaluation_oracle(kind: str, j: int, n: int) -> MPoly:
    """κ(h_j), κ(e_j) の独立オラクル：(1, q^2, ..., q^{2(n-1)}) での直接評価"""
    values = q_alphabet(n)
    if kind == "h":
        return complete_homogeneous_at(j, values)
    return elementary_at(j, values)


__all__ = [
    "a_k",
    "complete_homogeneous_at",
    "elementary_at",
    "q_alphabet",
    "q_evaluation_oracle",
    "schur_bialternant",
    "sympy_to_mpoly",
    "z_lambda",
]
