"""検証スイートの実行と結果の永続化"""

from __future__ import annotations

import logging
import os
from datetime import datetime
from typing import Optional
from uuid import UUID, uuid4

from sqlalchemy.orm import Session

from src.database.models import CheckResult, VerificationRun
from src.database.repositories import CheckResultRepository, VerificationRunRepository
from src.utils.budget import Budget
from src.verification.reports import SuiteReport
from src.verification.suites import SuiteConfig, run_suite

logger = logging.getLogger(__name__)


class VerificationMetrics:
    """検証実行のメトリクスを保持するクラス"""

    def __init__(self):
        self.checks_total = 0
        self.checks_failed = 0
        self.experiments = 0
        self.states = 0
        self.start_time: Optional[datetime] = None
        self.end_time: Optional[datetime] = None

    @property
    def duration_sec(self) -> float:
        """処理時間（秒）"""
        if self.start_time and self.end_time:
            return (self.end_time - self.start_time).total_seconds()
        return 0.0

    @property
    def failure_rate(self) -> float:
        if self.checks_total == 0:
            return 0.0
        return self.checks_failed / self.checks_total

    def absorb(self, report: SuiteReport, budget: Budget) -> None:
        self.checks_total = len(report.gating_checks)
        self.checks_failed = len(report.failures)
        self.experiments = len(report.experiments)
        self.states = budget.states


class VerificationRunner:
    """スイートを実行し、VerificationRun と CheckResult に記録する"""

    def __init__(self, session: Session, code_version: Optional[str] = None):
        self.session = session
        self.code_version = code_version or os.getenv("SUPERLLT_CODE_VERSION")
        self.run_repo = VerificationRunRepository(session)
        self.check_repo = CheckResultRepository(session)

    def run(
        self,
        suite: str,
        config: SuiteConfig,
        budget: Optional[Budget] = None,
    ) -> tuple[UUID, SuiteReport, VerificationMetrics]:
        """
        スイートを実行して結果を保存する。

        Parameters
        ----------
        suite : str
            スイート名（例: "ybe"）
        config : SuiteConfig
            スイートの設定
        budget : Budget, optional
            状態数と時間の上限

        Returns
        -------
        tuple
            (run_id, SuiteReport, VerificationMetrics)
        """
        budget = budget or Budget.from_config()
        metrics = VerificationMetrics()
        metrics.start_time = datetime.now()

        # 1. 開始時は partial で作成
        run_id = uuid4()
        self.run_repo.create(
            VerificationRun(
                run_id=run_id,
                suite=suite,
                status="partial",
                config=config.to_json(),
                code_version=self.code_version,
            )
        )
        self.session.commit()
        logger.info(f"VerificationRun作成: run_id={run_id}, suite={suite}")

        try:
            # 2. スイート実行
            report = run_suite(suite, config, budget)
        except Exception as e:
            logger.error(f"スイート実行エラー: suite={suite}, run_id={run_id}: {e}", exc_info=True)
            metrics.end_time = datetime.now()
            self.run_repo.update_status(
                run_id=run_id,
                status="failed",
                finished_at=metrics.end_time,
                duration_sec=metrics.duration_sec,
                error_message=f"{type(e).__name__}: {e}",
            )
            # 呼び出し側のロールバックで失われないように確定させる
            self.session.commit()
            raise

        # 3. ケースごとの結果を保存
        self.check_repo.bulk_create(
            CheckResult(
                run_id=run_id,
                case_key=check.case_key,
                passed=check.passed,
                gating=check.gating,
                residual=check.residual_json,
                detail=check.detail,
            )
            for check in report.checks
        )

        # 4. ステータス更新
        metrics.end_time = datetime.now()
        metrics.absorb(report, budget)
        status = "success" if report.passed else "failed"
        self.run_repo.update_status(
            run_id=run_id,
            status=status,
            finished_at=metrics.end_time,
            duration_sec=metrics.duration_sec,
            checks_total=metrics.checks_total,
            checks_failed=metrics.checks_failed,
        )
        logger.info(
            f"VerificationRun更新完了: run_id={run_id}, status={status}, "
            f"checks_total={metrics.checks_total}, checks_failed={metrics.checks_failed}, "
            f"duration_sec={metrics.duration_sec:.1f}"
        )
        return run_id, report, metrics


__all__ = ["VerificationMetrics", "VerificationRunner"]
