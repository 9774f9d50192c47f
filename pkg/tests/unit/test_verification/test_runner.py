"""VerificationRunnerのテスト"""
from unittest.mock import Mock

import pytest

from src.algebra.poly import MPoly, x
from src.database.models import CheckResult, VerificationRun
from src.utils.budget import Budget
from src.utils.errors import BudgetExceededError
from src.verification.reports import CheckReport, SuiteReport
from src.verification.runner import VerificationMetrics, VerificationRunner
from src.verification.suites import SuiteConfig


@pytest.fixture
def mock_session():
    """モックセッション"""
    return Mock()


@pytest.fixture
def repos(mocker):
    """リポジトリをモックに差し替える"""
    run_repo = mocker.patch("src.verification.runner.VerificationRunRepository").return_value
    check_repo = mocker.patch("src.verification.runner.CheckResultRepository").return_value
    return run_repo, check_repo


def _report(passed: bool) -> SuiteReport:
    report = SuiteReport("ybe", {"n": 1})
    report.add(CheckReport("HH/n=1", True, MPoly.zero()))
    report.add(CheckReport("VV/n=1", passed, MPoly.zero() if passed else MPoly.var(x(1))))
    report.add(CheckReport("braid", False, MPoly.var(x(1)), gating=False))
    return report


class TestVerificationMetrics:
    """VerificationMetricsのテスト"""

    def test_defaults(self):
        """開始前は0"""
        metrics = VerificationMetrics()
        assert metrics.duration_sec == 0.0
        assert metrics.failure_rate == 0.0

    def test_absorb(self):
        """レポートと予算から集計する"""
        metrics = VerificationMetrics()
        budget = Budget.unlimited()
        budget.tick(5)
        metrics.absorb(_report(False), budget)
        assert metrics.checks_total == 2
        assert metrics.checks_failed == 1
        assert metrics.experiments == 1
        assert metrics.states == 5
        assert metrics.failure_rate == 0.5


class TestVerificationRunner:
    """VerificationRunnerのテスト"""

    def test_success(self, mocker, mock_session, repos):
        """全て成立すれば success で記録する"""
        run_repo, check_repo = repos
        mocker.patch("src.verification.runner.run_suite", return_value=_report(True))

        runner = VerificationRunner(mock_session, code_version="abc123")
        run_id, report, metrics = runner.run("ybe", SuiteConfig(n=1), Budget.unlimited())

        created = run_repo.create.call_args.args[0]
        assert isinstance(created, VerificationRun)
        assert created.run_id == run_id
        assert created.status == "partial"
        assert created.code_version == "abc123"
        assert created.config == SuiteConfig(n=1).to_json()

        results = list(check_repo.bulk_create.call_args.args[0])
        assert [r.case_key for r in results] == ["HH/n=1", "VV/n=1", "braid"]
        assert all(isinstance(r, CheckResult) and r.run_id == run_id for r in results)
        assert results[2].gating is False

        kwargs = run_repo.update_status.call_args.kwargs
        assert kwargs["run_id"] == run_id
        assert kwargs["status"] == "success"
        assert kwargs["checks_total"] == 2
        assert kwargs["checks_failed"] == 0
        assert report.passed
        assert metrics.checks_total == 2

    def test_failed_checks(self, mocker, mock_session, repos):
        """不成立があれば failed で記録し、残差を保存する"""
        run_repo, check_repo = repos
        mocker.patch("src.verification.runner.run_suite", return_value=_report(False))

        VerificationRunner(mock_session).run("ybe", SuiteConfig(n=1), Budget.unlimited())

        assert run_repo.update_status.call_args.kwargs["status"] == "failed"
        assert run_repo.update_status.call_args.kwargs["checks_failed"] == 1
        results = list(check_repo.bulk_create.call_args.args[0])
        assert results[1].passed is False
        assert results[1].residual is not None

    def test_exception_marks_failed(self, mocker, mock_session, repos):
        """スイートが例外を出したら failed を確定させて再送出する"""
        run_repo, check_repo = repos
        mocker.patch("src.verification.runner.run_suite", side_effect=BudgetExceededError("上限"))

        with pytest.raises(BudgetExceededError):
            VerificationRunner(mock_session).run("ybe", SuiteConfig(n=1), Budget.unlimited())

        kwargs = run_repo.update_status.call_args.kwargs
        assert kwargs["status"] == "failed"
        assert "BudgetExceededError" in kwargs["error_message"]
        check_repo.bulk_create.assert_not_called()
        assert mock_session.commit.call_count == 2

    def test_code_version_from_env(self, mock_session, repos, monkeypatch):
        """コードのバージョンは環境変数からも取る"""
        monkeypatch.setenv("SUPERLLT_CODE_VERSION", "v9")
        assert VerificationRunner(mock_session).code_version == "v9"
