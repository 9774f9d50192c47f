"""
検証スイートの登録簿

各スイートは (SuiteConfig, Budget) を受け取り SuiteReport を返す。
ケースの列挙順は決定的で、同じ設定なら同じレポートになる。
"""

from __future__ import annotations

import logging
import random
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from src.algebra.poly import Family, MPoly, VarId, specialize
from src.cauchy.identities import (
    CauchySpec,
    DualMode,
    conjugate_polynomial_identity,
    verify_cauchy,
    verify_dual_cauchy,
    verify_general_cauchy,
)
from src.cauchy.window import CauchyWindow, WindowOrder, braid_experiment, verify_window
from src.combinatorics.shapes import (
    Partition,
    SkewShape,
    all_subpartitions,
    partitions_of_size,
    ribbon_tilings,
)
from src.combinatorics.tableaux import AlphabetOrder, interleavings, super_llt
from src.fock.operators import PolynomialKind, operator_polynomial
from src.fock.relations import CommutationPair, kappa_residuals, verify_commutation
from src.lattice.branching import verify_branching
from src.lattice.system import build_alternate_system, build_original_system, partition_function
from src.rmatrix.fixture import load_fixture
from src.rmatrix.train import train_argument
from src.rmatrix.weights import RKind
from src.rmatrix.ybe import verify_ybe
from src.utils.budget import Budget
from src.verification.reports import CheckReport, SuiteReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuiteConfig:
    """
    Attributes
    ----------
    n : int
        リボンのサイズ
    kind : str, optional
        ybe スイートで検証する R 頂点の種別（省略時は全種別）
    max_size : int
        列挙する外側の分割の最大サイズ
    degree : int
        Cauchy 系の打ち切り次数 D
    max_letters : int
        アルファベットの文字数の上限
    seed : int
        ケースの間引きに使う乱数の種
    max_cases : int, optional
        1スイートあたりのケース数の上限（超えた分は seed で間引く）
    """

    n: int = 2
    kind: Optional[str] = None
    max_size: int = 6
    degree: int = 4
    max_letters: int = 2
    seed: int = 0
    max_cases: Optional[int] = None

    def to_json(self) -> dict:
        return asdict(self)


SuiteFn = Callable[[SuiteConfig, Budget], SuiteReport]
SUITES: Dict[str, SuiteFn] = {}


def register(name: str) -> Callable[[SuiteFn], SuiteFn]:
    def decorator(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = fn
        return fn

    return decorator


def suite_names() -> List[str]:
    return sorted(SUITES)


def get_suite(name: str) -> SuiteFn:
    try:
        return SUITES[name]
    except KeyError:
        raise ValueError(f"未知のスイート: {name} (候補: {', '.join(suite_names())})") from None


def run_suite(name: str, config: SuiteConfig, budget: Optional[Budget] = None) -> SuiteReport:
    budget = budget or Budget.from_config()
    logger.info(f"スイート開始: suite={name}, config={config.to_json()}")
    report = get_suite(name)(config, budget)
    logger.info(
        f"スイート終了: suite={name}, checks={len(report.gating_checks)}, "
        f"failed={len(report.failures)}, experiments={len(report.experiments)}"
    )
    return report


# ---------------------------------------------------------------------------
# ケースの列挙
# ---------------------------------------------------------------------------


def tileable_shapes(n: int, max_size: int) -> Iterator[SkewShape]:
    """|λ| ≤ max_size で n-リボンでタイリングできる空でない λ/μ（λ の大きさ順）"""
    for size in range(1, max_size + 1):
        for outer in partitions_of_size(size):
            for inner in all_subpartitions(outer):
                if inner.size == outer.size or (outer.size - inner.size) % n:
                    continue
                shape = SkewShape(outer, inner)
                if ribbon_tilings(shape, n):
                    yield shape


def alphabet_orders(max_letters: int) -> Iterator[AlphabetOrder]:
    """文字数 1..max_letters の水平・垂直の全ての混ぜ方"""
    for total in range(1, max_letters + 1):
        for nx in range(total, -1, -1):
            yield from interleavings(nx, total - nx)


def _thin(cases: List, config: SuiteConfig) -> List:
    if config.max_cases is None or len(cases) <= config.max_cases:
        return cases
    picked = sorted(random.Random(config.seed).sample(range(len(cases)), config.max_cases))
    return [cases[i] for i in picked]


def _shape_order_cases(config: SuiteConfig) -> List[Tuple[SkewShape, AlphabetOrder]]:
    cases = [(shape, order) for shape in tileable_shapes(config.n, config.max_size) for order in alphabet_orders(config.max_letters)]
    return _thin(cases, config)


def _case_key(shape: SkewShape, order: AlphabetOrder, *extra: str) -> str:
    return "/".join((str(shape), order.spec() or "-") + extra)


def _check(key: str, lhs: MPoly, rhs: MPoly, detail: Optional[dict] = None, gating: bool = True) -> CheckReport:
    residual = lhs - rhs
    return CheckReport(key, residual.is_zero(), residual, detail or {}, gating)


# ---------------------------------------------------------------------------
# スイート
# ---------------------------------------------------------------------------


@register("ybe")
def ybe_suite(config: SuiteConfig, budget: Budget) -> SuiteReport:
    """R 頂点の YBE。全ての種別がゲート対象"""
    assignment, order = load_fixture()
    kinds = [RKind(config.kind)] if config.kind else list(RKind)
    report = SuiteReport("ybe", config.to_json())
    for kind in kinds:
        result = verify_ybe(kind, config.n, assignment, order, budget=budget)
        residual = result.failures[0].lhs - result.failures[0].rhs if result.failures else MPoly.zero()
        report.add(CheckReport(f"{kind.value}/n={config.n}", result.passed, residual, result.to_json()))
    return report


@register("commutation")
def commutation_suite(config: SuiteConfig, budget: Budget) -> SuiteReport:
    report = SuiteReport("commutation", config.to_json())
    domain = [lam for size in range(config.max_size + 1) for lam in partitions_of_size(size)]
    for j, residual in enumerate(kappa_residuals(config.n, 3)):
        label = "h" if j % 2 == 0 else "e"
        report.add(CheckReport(f"kappa/{label}{j // 2}", residual.is_zero(), residual))
    for pair in CommutationPair:
        for a in range(1, 4):
            for b in range(1, 4):
                budget.tick(len(domain))
                result = verify_commutation(config.n, a, b, pair, domain)
                for case in result.cases:
                    key = f"{pair.value}/a={a}/b={b}/{case.shape}"
                    residual = case.residual if case.error is None else None
                    report.add(CheckReport(key, case.passed, residual, case.to_json(pair)))
    return report


@register("cauchy")
def cauchy_suite(config: SuiteConfig, budget: Budget) -> SuiteReport:
    report = SuiteReport("cauchy", config.to_json())
    specs = [CauchySpec(n=config.n, degree=config.degree)]
    if config.n > 1:
        specs.append(CauchySpec(n=config.n, core=Partition.of(1), degree=min(config.degree, 3)))
    for spec in specs:
        budget.tick()
        result = verify_cauchy(spec)
        report.add(_check(f"tableaux/core={spec.core}", result.lhs, result.rhs, result.to_json()))
    # n=1 では Schur 関数の経路とも比べる
    schur = verify_cauchy(CauchySpec(n=1, nx=2, ny=0, nw=2, nz=0, degree=min(config.degree, 4)), route="schur")
    report.add(_check("schur/n=1", schur.lhs, schur.rhs, schur.to_json()))
    return report


@register("dual")
def dual_suite(config: SuiteConfig, budget: Budget) -> SuiteReport:
    report = SuiteReport("dual", config.to_json())
    for nx, ny in ((1, 1), (1, 2), (2, 1)):
        budget.tick()
        result = verify_dual_cauchy(CauchySpec(n=config.n, nx=nx, ny=ny), DualMode.LLT)
        report.add(_check(f"llt/x={nx}/y={ny}", result.lhs, result.rhs, result.to_json()))
    budget.tick()
    result = verify_dual_cauchy(CauchySpec(n=config.n, degree=min(config.degree, 4)), DualMode.SUPER)
    report.add(_check("super/1111", result.lhs, result.rhs, result.to_json()))
    return report


@register("general-cauchy")
def general_cauchy_suite(config: SuiteConfig, budget: Budget) -> SuiteReport:
    report = SuiteReport("general-cauchy", config.to_json())
    pairs = [
        (Partition(), Partition()),
        (Partition.of(1), Partition.of(1)),
        (Partition.of(2), Partition.of(1, 1)),
        (Partition.of(2), Partition()),
    ]
    spec = CauchySpec(n=config.n, degree=min(config.degree, 3))
    for mu, nu in pairs:
        budget.tick()
        result = verify_general_cauchy(mu, nu, spec)
        report.add(_check(f"mu={mu}/nu={nu}", result.lhs, result.rhs, result.to_json()))
    return report


@register("branching")
def branching_suite(config: SuiteConfig, budget: Budget) -> SuiteReport:
    report = SuiteReport("branching", config.to_json())
    for shape, order in _shape_order_cases(config):
        for cut in range(1, len(order)):
            budget.tick()
            result = verify_branching(shape, config.n, order, cut, budget=budget)
            report.add(CheckReport(_case_key(shape, order, f"cut={cut}"), result.passed, result.residual, result.to_json()))
    return report


def _swap_variables(p: MPoly, a: VarId, b: VarId) -> MPoly:
    return specialize(p, {a: MPoly.var(b), b: MPoly.var(a)})


@register("symmetry")
def symmetry_suite(config: SuiteConfig, budget: Budget) -> SuiteReport:
    """X, Y の入れ替え、文字順序の変更、列車論法"""
    report = SuiteReport("symmetry", config.to_json())
    letters = max(config.max_letters, 2)
    for shape in tileable_shapes(config.n, config.max_size):
        for nx in range(letters + 1):
            ny = letters - nx
            orders = list(interleavings(nx, ny))
            base = super_llt(shape, config.n, orders[0])
            budget.tick(len(orders))
            for family, count in ((Family.X, nx), (Family.Y, ny)):
                for i, j in combinations(range(1, count + 1), 2):
                    swapped = _swap_variables(base, VarId(family, i), VarId(family, j))
                    report.add(_check(_case_key(shape, orders[0], f"swap={family.name}{i}{j}"), swapped, base))
            for order in orders[1:]:
                report.add(_check(_case_key(shape, order, "order"), super_llt(shape, config.n, order), base))
            for order in orders:
                system = build_original_system(shape, config.n, order)
                for row in range(len(order) - 1):
                    result = train_argument(system, row)
                    key = _case_key(shape, order, f"train={row}")
                    report.add(CheckReport(key, result.passed, result.lhs - result.rhs, result.to_json()))
    return report


@register("conjugation")
def conjugation_suite(config: SuiteConfig, budget: Budget) -> SuiteReport:
    report = SuiteReport("conjugation", config.to_json())
    for shape, order in _shape_order_cases(config):
        budget.tick()
        lhs, rhs = conjugate_polynomial_identity(shape, config.n, order)
        report.add(_check(_case_key(shape, order), lhs, rhs))
    return report


ROUTES = ("lattice", "lattice-alt", "operators-F", "operators-G")


def route_polynomials(shape: SkewShape, n: int, order: AlphabetOrder) -> Dict[str, MPoly]:
    """4つの経路で計算した 𝒢（タブロー経路は "tableaux"）"""
    return {
        "tableaux": super_llt(shape, n, order),
        "lattice": partition_function(build_original_system(shape, n, order)),
        "lattice-alt": partition_function(build_alternate_system(shape, n, order)),
        "operators-F": operator_polynomial(PolynomialKind.F, shape, n, order),
        "operators-G": operator_polynomial(PolynomialKind.G, shape, n, order),
    }


@register("routes")
def routes_suite(config: SuiteConfig, budget: Budget) -> SuiteReport:
    """タブロー、原模型、交代模型、作用素 F/G の一致"""
    report = SuiteReport("routes", config.to_json())
    for shape, order in _shape_order_cases(config):
        budget.tick()
        values = route_polynomials(shape, config.n, order)
        for route in ROUTES:
            report.add(_check(_case_key(shape, order, route), values[route], values["tableaux"]))
    return report


def _wz(text: str) -> AlphabetOrder:
    return AlphabetOrder.parse(text, x_family=Family.W, y_family=Family.Z)


@register("window")
def window_suite(config: SuiteConfig, budget: Budget) -> SuiteReport:
    """
    Cauchy 窓。I_B の有限和と全 H / 全 Ṽ の双対積は判定対象、
    R 頂点の押し出し実験は報告のみ。
    """
    n = config.n
    report = SuiteReport("window", config.to_json())
    small = [lam for size in range(0, 4) for lam in partitions_of_size(size)]

    for mu in small:
        for nu in small:
            for xy, wz in (("1", "1"), ("1'", "1")):
                budget.tick()
                w = CauchyWindow.build(n, mu, nu, WindowOrder.I_B, AlphabetOrder.parse(xy), _wz(wz))
                result = verify_window(w)
                report.add(CheckReport(f"B/mu={mu}/nu={nu}/{xy}|{wz}", result.passed, result.residual, result.to_json()))

    for size_n in sorted({1, n}):
        for nx, nz in ((1, 1), (1, 2), (2, 1)):
            degree = 2 * size_n * nx * nz
            budget.tick()
            w = CauchyWindow.build(
                size_n, Partition(), Partition(), WindowOrder.I_A,
                AlphabetOrder.standard(nx, 0), AlphabetOrder.standard(0, nz, Family.W, Family.Z), degree=degree,
            )
            result = verify_window(w, degree)
            residual = result.dual_residual if result.dual_residual is not None else result.residual
            report.add(CheckReport(f"dual/n={size_n}/x={nx}/z={nz}", result.passed, residual, result.to_json()))

    for mu, nu in ((Partition(), Partition()), (Partition.of(1), Partition.of(1))):
        budget.tick()
        w = CauchyWindow.build(n, mu, nu, WindowOrder.I_A, AlphabetOrder.parse("1"), _wz("1"), degree=min(config.degree, 2))
        result = verify_window(w, min(config.degree, 2))
        report.add(CheckReport(f"A/mu={mu}/nu={nu}", result.passed, result.residual, result.to_json()))

        for order, degree in ((WindowOrder.I_A, min(config.degree, 2)), (WindowOrder.I_B, None)):
            budget.tick()
            w = CauchyWindow.build(n, mu, nu, order, AlphabetOrder.parse("1"), _wz("1"), degree=degree)
            experiment = braid_experiment(w, degree)
            report.add(
                CheckReport(
                    f"braid/{order.value}/mu={mu}/nu={nu}",
                    experiment.residual.is_zero(),
                    experiment.residual,
                    experiment.to_json(),
                    gating=False,
                )
            )
    return report


__all__ = [
    "ROUTES",
    "SUITES",
    "SuiteConfig",
    "alphabet_orders",
    "get_suite",
    "route_polynomials",
    "run_suite",
    "suite_names",
    "tileable_shapes",
]
