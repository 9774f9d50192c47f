from datetime import datetime
from typing import Iterable, Optional
from uuid import UUID

from sqlalchemy import and_, desc, func
from sqlalchemy.orm import Session

from src.database.models import CheckResult, VerificationRun


class VerificationRunRepository:
    def __init__(self, session: Session):
        self.session = session

    def create(self, run: VerificationRun) -> VerificationRun:
        self.session.add(run)
        self.session.flush()
        return run

    def get_by_id(self, run_id: UUID) -> Optional[VerificationRun]:
        return self.session.query(VerificationRun).filter(
            VerificationRun.run_id == run_id
        ).first()

    def update_status(
        self,
        run_id: UUID,
        status: str,
        finished_at: Optional[datetime] = None,
        duration_sec: Optional[float] = None,
        checks_total: Optional[int] = None,
        checks_failed: Optional[int] = None,
        error_message: Optional[str] = None,
    ) -> Optional[VerificationRun]:
        run = self.get_by_id(run_id)
        if run:
            run.status = status
            if finished_at:
                run.finished_at = finished_at
            if duration_sec is not None:
                run.duration_sec = duration_sec
            if checks_total is not None:
                run.checks_total = checks_total
            if checks_failed is not None:
                run.checks_failed = checks_failed
            if error_message is not None:
                run.error_message = error_message
            self.session.flush()
        return run

    def list_by_suite(self, suite: str, limit: Optional[int] = None) -> list[VerificationRun]:
        query = self.session.query(VerificationRun).filter(
            VerificationRun.suite == suite
        ).order_by(desc(VerificationRun.started_at))

        if limit:
            query = query.limit(limit)

        return query.all()

    def latest_by_suite(self, suite: str, status: Optional[str] = None) -> Optional[VerificationRun]:
        query = self.session.query(VerificationRun).filter(VerificationRun.suite == suite)
        if status:
            query = query.filter(VerificationRun.status == status)
        return query.order_by(desc(VerificationRun.started_at)).first()


class CheckResultRepository:
    def __init__(self, session: Session):
        self.session = session

    def create(self, result: CheckResult) -> CheckResult:
        self.session.add(result)
        self.session.flush()
        return result

    def bulk_create(self, results: Iterable[CheckResult]) -> list[CheckResult]:
        results = list(results)
        self.session.add_all(results)
        self.session.flush()
        return results

    def list_by_run(self, run_id: UUID, failed_only: bool = False) -> list[CheckResult]:
        query = self.session.query(CheckResult).filter(CheckResult.run_id == run_id)
        if failed_only:
            query = query.filter(CheckResult.passed.is_(False))
        return query.order_by(CheckResult.case_key).all()

    def count_failed(self, run_id: UUID) -> int:
        return self.session.query(func.count(CheckResult.check_id)).filter(
            and_(
                CheckResult.run_id == run_id,
                CheckResult.passed.is_(False),
                CheckResult.gating.is_(True),
            )
        ).scalar() or 0
