"""
コマンドラインの入口

    python -m src compute --n 2 --outer 3,3 --x 2
    python -m src states --n 4 --outer 8,6,4,3 --inner 4,1 --order 1
    python -m src verify ybe --kind HH --n 2
    python -m src fixture pin-rtypes --check

終了コード: 0 全て成立、1 不成立あり、2 入力エラー、3 上限超過
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Dict, List, Optional, Sequence

from src.algebra.poly import MPoly
from src.combinatorics.shapes import Partition, SkewShape, ribbon_tilings
from src.combinatorics.tableaux import AlphabetOrder
from src.lattice.system import build_alternate_system, build_original_system, enumerate_states, render_state
from src.rmatrix.fixture import check_fixture, pin_strand_order, pin_type_assignment, save_fixture
from src.utils.budget import Budget
from src.utils.config import get_log_level
from src.utils.errors import BudgetExceededError, SuperLLTError
from src.verification.reports import canonical_dumps
from src.verification.suites import SuiteConfig, route_polynomials, run_suite, suite_names

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

COMPUTE_ROUTES = ("tableaux", "lattice", "lattice-alt", "operators", "all")


def _shape(args: argparse.Namespace) -> SkewShape:
    return SkewShape(Partition.parse(args.outer), Partition.parse(args.inner))


def _order(args: argparse.Namespace) -> AlphabetOrder:
    if args.order:
        return AlphabetOrder.parse(args.order)
    return AlphabetOrder.standard(args.x, args.y)


def _emit(payload: dict, pretty: str, fmt: str) -> None:
    if fmt == "json":
        print(canonical_dumps(payload))
    else:
        print(pretty)


def cmd_compute(args: argparse.Namespace) -> int:
    shape = _shape(args)
    order = _order(args)
    n = args.n
    tileable = bool(ribbon_tilings(shape, n))
    note = None if tileable else f"zero polynomial (not {n}-tileable)"

    values: Dict[str, MPoly] = route_polynomials(shape, n, order) if tileable else {}
    if tileable:
        # F と G は同じ多項式を与える
        values["operators"] = values.pop("operators-F")
        values.pop("operators-G")
    routes: List[str] = [r for r in COMPUTE_ROUTES if r != "all"] if args.route == "all" else [args.route]
    results = {r: values.get(r, MPoly.zero()) for r in routes}
    agree = len({p.canonical_json() for p in results.values()}) == 1

    payload = {
        "n": n,
        "shape": shape.to_json(),
        "order": order.spec(),
        "routes": {r: p.to_json() for r, p in results.items()},
        "polynomial": str(results[routes[0]]),
    }
    if len(routes) > 1:
        payload["agree"] = agree
    if note:
        payload["note"] = note

    lines = [f"{r}: {p}" for r, p in results.items()] if len(routes) > 1 else [str(results[routes[0]])]
    if len(routes) > 1:
        lines.append(f"agree: {agree}")
    if note:
        lines.append(note)
    _emit(payload, "\n".join(lines), args.format)
    return EXIT_OK if agree else EXIT_FAILED


def cmd_states(args: argparse.Namespace) -> int:
    shape = _shape(args)
    order = _order(args)
    build = build_alternate_system if args.alternate else build_original_system
    system = build(shape, args.n, order, width=args.width)
    budget = Budget.from_config(args.budget_states, args.budget_seconds)
    states = list(enumerate_states(system, include_zero=args.all_admissible, budget=budget))
    total = MPoly.zero()
    for state in states:
        total = total + state.weight
    payload = {
        "system": system.to_json(),
        "states": [s.to_json() for s in states],
        "partitionFunction": total.to_json(),
    }
    pretty = "\n\n".join(render_state(s) for s in states) + f"\n\nZ = {total}  ({len(states)} states)"
    _emit(payload, pretty, args.format)
    return EXIT_OK


def _suite_config(args: argparse.Namespace) -> SuiteConfig:
    return SuiteConfig(
        n=args.n,
        kind=args.kind,
        max_size=args.max_size,
        degree=args.D,
        max_letters=args.max_letters,
        seed=args.seed,
        max_cases=args.max_cases,
    )


def cmd_verify(args: argparse.Namespace) -> int:
    config = _suite_config(args)
    budget = Budget.from_config(args.budget_states, args.budget_seconds)
    if args.record:
        from src.database.session import get_db, init_db
        from src.verification.runner import VerificationRunner

        init_db()
        with get_db() as session:
            run_id, report, _ = VerificationRunner(session).run(args.suite, config, budget)
        logger.info(f"検証結果を記録: run_id={run_id}")
    else:
        report = run_suite(args.suite, config, budget)

    failed = [c.case_key for c in report.failures]
    pretty = "\n".join(
        [f"suite {report.suite}: {'pass' if report.passed else 'FAIL'} "
         f"({len(report.gating_checks) - len(failed)}/{len(report.gating_checks)} checks, "
         f"{len(report.experiments)} experiments)"]
        + [f"  failed: {key}" for key in failed]
    )
    _emit(report.to_json(), pretty, args.format)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_fixture(args: argparse.Namespace) -> int:
    if args.check:
        ok = check_fixture(args.output)
        print("fixture ok" if ok else "fixture differs from re-pinned assignment")
        return EXIT_OK if ok else EXIT_FAILED
    assignment = pin_type_assignment()
    order = pin_strand_order(assignment)
    path = save_fixture(assignment, order, args.output)
    print(path)
    return EXIT_OK


def _add_shape_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="リボンのサイズ")
    p.add_argument("--outer", required=True, help="λ（例: 3,3）")
    p.add_argument("--inner", default=None, help="μ（省略時は空）")
    p.add_argument("--x", type=int, default=1, help="水平文字の個数")
    p.add_argument("--y", type=int, default=0, help="垂直文字の個数")
    p.add_argument("--order", default=None, help="文字の全順序（例: \"1,1',2\"）。--x/--y より優先")
    p.add_argument("--format", choices=("pretty", "json"), default="pretty")


def _add_budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-states", type=int, default=None)
    p.add_argument("--budget-seconds", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superllt", description="super LLT 多項式の計算と検証")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="𝒢_{λ/μ}(X/Y;q) を計算する")
    _add_shape_args(compute)
    compute.add_argument("--route", choices=COMPUTE_ROUTES, default="tableaux")
    compute.set_defaults(func=cmd_compute)

    states = sub.add_parser("states", help="格子系の状態を列挙する")
    _add_shape_args(states)
    states.add_argument("--alternate", action="store_true", help="交代模型 B~ を使う")
    states.add_argument("--all-admissible", action="store_true", help="重み0の許容状態も出力する")
    states.add_argument("--width", type=int, default=None, help="粒子数（β集合の幅）")
    _add_budget_args(states)
    states.set_defaults(func=cmd_states)

    verify = sub.add_parser("verify", help="検証スイートを実行する")
    verify.add_argument("suite", choices=suite_names())
    verify.add_argument("--n", type=int, default=2)
    verify.add_argument("--kind", default=None, help="ybe の R 頂点の種別（例: HH, V~H）")
    verify.add_argument("--max-size", type=int, default=6)
    verify.add_argument("--D", type=int, default=4, help="打ち切り次数")
    verify.add_argument("--max-letters", type=int, default=2)
    verify.add_argument("--max-cases", type=int, default=None)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--record", action="store_true", help="結果をデータベースに記録する")
    verify.add_argument("--format", choices=("pretty", "json"), default="pretty")
    _add_budget_args(verify)
    verify.set_defaults(func=cmd_verify)

    fixture = sub.add_parser("fixture", help="R 型割り当てフィクスチャ")
    fixture_sub = fixture.add_subparsers(dest="fixture_command", required=True)
    pin = fixture_sub.add_parser("pin-rtypes", help="型割り当てと段の対応を固定して保存する")
    pin.add_argument("--output", default=None, help="保存先（既定は SUPERLLT_RTYPES_FIXTURE または同梱の位置）")
    pin.add_argument("--check", action="store_true", help="保存済みフィクスチャが再固定の結果と一致するか確認する")
    pin.set_defaults(func=cmd_fixture)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        level=get_log_level(),
        format="%(asctime)s %(levelname)s [%(name)s] %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as e:
        logger.error(f"上限超過: {e}")
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (SuperLLTError, ValueError) as e:
        logger.error(f"入力エラー: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


__all__ = ["build_parser", "main"]
