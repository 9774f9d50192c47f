"""コマンドラインのテスト"""
import json
from contextlib import contextmanager
from unittest.mock import Mock

import pytest

from src.algebra.poly import MPoly, x
from src.cli import EXIT_BUDGET, EXIT_FAILED, EXIT_INPUT, EXIT_OK, build_parser, main
from src.combinatorics.shapes import Partition, SkewShape
from src.combinatorics.tableaux import AlphabetOrder, super_llt
from src.verification.reports import CheckReport, SuiteReport


def _json_out(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


class TestParser:
    """引数解析のテスト"""

    def test_compute_defaults(self):
        """compute の既定値"""
        args = build_parser().parse_args(["compute", "--n", "2", "--outer", "3,3"])
        assert args.route == "tableaux"
        assert args.x == 1
        assert args.y == 0
        assert args.format == "pretty"

    def test_unknown_suite(self):
        """未知のスイート名は argparse が拒否する"""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["verify", "nope"])


class TestCompute:
    """compute サブコマンドのテスト"""

    def test_tableaux(self, capsys):
        """タブロー経路の多項式をJSONで出力する"""
        code = main(["compute", "--n", "2", "--outer", "3,3", "--x", "2", "--format", "json"])
        payload = _json_out(capsys)
        expected = super_llt(SkewShape(Partition.of(3, 3)), 2, AlphabetOrder.standard(2, 0))
        assert code == EXIT_OK
        assert payload["routes"]["tableaux"] == expected.to_json()
        assert payload["order"] == "1,2"
        assert "agree" not in payload

    def test_all_routes_agree(self, capsys):
        """全経路の一致"""
        code = main(["compute", "--n", "2", "--outer", "2", "--order", "1,1'", "--route", "all", "--format", "json"])
        payload = _json_out(capsys)
        assert code == EXIT_OK
        assert payload["agree"] is True
        assert set(payload["routes"]) == {"tableaux", "lattice", "lattice-alt", "operators"}

    def test_not_tileable(self, capsys):
        """タイリングできないシェイプは0多項式と注記"""
        code = main(["compute", "--n", "2", "--outer", "2,1", "--format", "json"])
        payload = _json_out(capsys)
        assert code == EXIT_OK
        assert payload["routes"]["tableaux"] == MPoly.zero().to_json()
        assert "not 2-tileable" in payload["note"]

    def test_pretty(self, capsys):
        """pretty 出力は多項式の文字列"""
        main(["compute", "--n", "1", "--outer", "1"])
        assert capsys.readouterr().out.strip() == str(MPoly.var(x(1)))

    def test_bad_partition(self, capsys):
        """解釈できない分割は入力エラー"""
        assert main(["compute", "--n", "2", "--outer", "a,b"]) == EXIT_INPUT
        assert "error" in capsys.readouterr().err

    def test_bad_order(self, capsys):
        """同種文字の順序違反は入力エラー"""
        assert main(["compute", "--n", "1", "--outer", "1", "--order", "2,1"]) == EXIT_INPUT

    def test_inner_not_contained(self, capsys):
        """μ ⊄ λ は入力エラー"""
        assert main(["compute", "--n", "1", "--outer", "1", "--inner", "2"]) == EXIT_INPUT


class TestStates:
    """states サブコマンドのテスト"""

    def test_single_domino(self, capsys):
        """水平ドミノ1枚の状態は1つ"""
        code = main(["states", "--n", "2", "--outer", "2", "--format", "json"])
        payload = _json_out(capsys)
        assert code == EXIT_OK
        assert len(payload["states"]) == 1
        assert payload["partitionFunction"] == MPoly.var(x(1)).to_json()

    def test_pretty_summary(self, capsys):
        """pretty 出力の最終行は分配関数"""
        main(["states", "--n", "2", "--outer", "2"])
        last = capsys.readouterr().out.strip().splitlines()[-1]
        assert last == f"Z = {MPoly.var(x(1))}  (1 states)"

    def test_budget_exceeded(self, capsys):
        """状態数の上限を超えたら終了コード3"""
        code = main(["states", "--n", "2", "--outer", "3,3", "--x", "2", "--budget-states", "0"])
        assert code == EXIT_BUDGET
        assert "budget exceeded" in capsys.readouterr().err


class TestVerify:
    """verify サブコマンドのテスト"""

    def test_ybe_single_kind(self, capsys):
        """n=1 の HH は成立"""
        code = main(["verify", "ybe", "--n", "1", "--kind", "HH", "--format", "json"])
        payload = _json_out(capsys)
        assert code == EXIT_OK
        assert payload["suite"] == "ybe"
        assert payload["checksTotal"] == 1

    def test_failed_exit_code(self, mocker, capsys):
        """不成立があれば終了コード1"""
        report = SuiteReport("ybe", {})
        report.add(CheckReport("HH/n=1", False, MPoly.var(x(1))))
        mocker.patch("src.cli.run_suite", return_value=report)

        assert main(["verify", "ybe"]) == EXIT_FAILED
        out = capsys.readouterr().out
        assert "FAIL" in out
        assert "failed: HH/n=1" in out

    def test_record(self, mocker, capsys):
        """--record では runner 経由で記録する"""
        report = SuiteReport("ybe", {})
        report.add(CheckReport("HH/n=1", True, MPoly.zero()))
        session = Mock()

        @contextmanager
        def fake_db():
            yield session

        init_db = mocker.patch("src.database.session.init_db")
        mocker.patch("src.database.session.get_db", side_effect=fake_db)
        runner_cls = mocker.patch("src.verification.runner.VerificationRunner")
        runner_cls.return_value.run.return_value = ("run-1", report, None)

        assert main(["verify", "ybe", "--n", "1", "--record"]) == EXIT_OK
        init_db.assert_called_once()
        runner_cls.assert_called_once_with(session)
        assert runner_cls.return_value.run.call_args.args[0] == "ybe"


class TestFixture:
    """fixture サブコマンドのテスト"""

    def test_check_ok(self, mocker, capsys):
        """一致すれば終了コード0"""
        mocker.patch("src.cli.check_fixture", return_value=True)
        assert main(["fixture", "pin-rtypes", "--check"]) == EXIT_OK
        assert "fixture ok" in capsys.readouterr().out

    def test_check_differs(self, mocker, capsys):
        """異なれば終了コード1"""
        mocker.patch("src.cli.check_fixture", return_value=False)
        assert main(["fixture", "pin-rtypes", "--check"]) == EXIT_FAILED

    def test_pin(self, mocker, capsys, tmp_path):
        """再固定して保存先を出力する"""
        assignment, order = Mock(), Mock()
        mocker.patch("src.cli.pin_type_assignment", return_value=assignment)
        mocker.patch("src.cli.pin_strand_order", return_value=order)
        target = tmp_path / "r_types.json"
        save = mocker.patch("src.cli.save_fixture", return_value=target)

        assert main(["fixture", "pin-rtypes", "--output", str(target)]) == EXIT_OK
        save.assert_called_once_with(assignment, order, str(target))
        assert capsys.readouterr().out.strip() == str(target)
