from datetime import datetime
from typing import Optional
from uuid import UUID, uuid4

from sqlalchemy import (
    Boolean,
    CheckConstraint,
    Double,
    ForeignKey,
    Index,
    Integer,
    JSON,
    String,
    Text,
    UniqueConstraint,
    Uuid,
    func,
)
from sqlalchemy.orm import DeclarativeBase, Mapped, mapped_column, relationship


class Base(DeclarativeBase):
    pass


class VerificationRun(Base):
    __tablename__ = "verification_runs"

    run_id: Mapped[UUID] = mapped_column(
        Uuid(as_uuid=True),
        primary_key=True,
        default=uuid4,
    )
    suite: Mapped[str] = mapped_column(Text, nullable=False)
    status: Mapped[str] = mapped_column(
        String(20),
        nullable=False,
    )
    config: Mapped[dict] = mapped_column(JSON, nullable=False)
    started_at: Mapped[datetime] = mapped_column(
        server_default=func.now(),
        nullable=False,
    )
    finished_at: Mapped[Optional[datetime]] = mapped_column(
        nullable=True,
    )
    duration_sec: Mapped[Optional[float]] = mapped_column(Double, nullable=True)
    checks_total: Mapped[int] = mapped_column(Integer, nullable=False, default=0)
    checks_failed: Mapped[int] = mapped_column(Integer, nullable=False, default=0)
    code_version: Mapped[Optional[str]] = mapped_column(Text, nullable=True)
    error_message: Mapped[Optional[str]] = mapped_column(Text, nullable=True)
    created_at: Mapped[datetime] = mapped_column(
        server_default=func.now(),
        nullable=False,
    )

    __table_args__ = (
        CheckConstraint(
            "status IN ('success', 'failed', 'partial')",
            name="check_verification_runs_status",
        ),
        CheckConstraint("checks_total >= 0", name="check_verification_runs_checks_total"),
        CheckConstraint("checks_failed >= 0", name="check_verification_runs_checks_failed"),
        Index("ix_verification_runs_suite_started", "suite", "started_at"),
    )

    # リレーション
    checks: Mapped[list["CheckResult"]] = relationship(
        "CheckResult",
        back_populates="run",
    )


class CheckResult(Base):
    __tablename__ = "check_results"

    check_id: Mapped[int] = mapped_column(
        Integer,
        primary_key=True,
        autoincrement=True,
    )
    run_id: Mapped[UUID] = mapped_column(
        Uuid(as_uuid=True),
        ForeignKey("verification_runs.run_id"),
        nullable=False,
    )
    case_key: Mapped[str] = mapped_column(Text, nullable=False)
    passed: Mapped[bool] = mapped_column(Boolean, nullable=False)
    gating: Mapped[bool] = mapped_column(Boolean, nullable=False, default=True)
    # 多項式の正準JSON
    residual: Mapped[Optional[str]] = mapped_column(Text, nullable=True)
    detail: Mapped[Optional[dict]] = mapped_column(JSON, nullable=True)
    created_at: Mapped[datetime] = mapped_column(
        server_default=func.now(),
        nullable=False,
    )

    __table_args__ = (
        UniqueConstraint("run_id", "case_key", name="uq_check_results_run_case"),
        CheckConstraint(
            "passed OR residual IS NOT NULL",
            name="check_check_results_residual",
        ),
    )

    run: Mapped["VerificationRun"] = relationship("VerificationRun", back_populates="checks")
