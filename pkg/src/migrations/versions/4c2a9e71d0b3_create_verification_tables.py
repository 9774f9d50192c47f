"""create verification tables

Revision ID: 4c2a9e71d0b3
Revises: 
Create Date: 2026-10-17 10:12:40.518233

"""
from typing import Sequence, Union

from alembic import op
import sqlalchemy as sa

# revision identifiers, used by Alembic.
revision: str = '4c2a9e71d0b3'
down_revision: Union[str, Sequence[str], None] = None
branch_labels: Union[str, Sequence[str], None] = None
depends_on: Union[str, Sequence[str], None] = None


def upgrade() -> None:
    """Upgrade schema."""
    op.create_table('verification_runs',
    sa.Column('run_id', sa.Uuid(), nullable=False),
    sa.Column('suite', sa.Text(), nullable=False),
    sa.Column('status', sa.String(length=20), nullable=False),
    sa.Column('config', sa.JSON(), nullable=False),
    sa.Column('started_at', sa.DateTime(), server_default=sa.func.now(), nullable=False),
    sa.Column('finished_at', sa.DateTime(), nullable=True),
    sa.Column('duration_sec', sa.Double(), nullable=True),
    sa.Column('checks_total', sa.Integer(), nullable=False),
    sa.Column('checks_failed', sa.Integer(), nullable=False),
    sa.Column('code_version', sa.Text(), nullable=True),
    sa.Column('error_message', sa.Text(), nullable=True),
    sa.Column('created_at', sa.DateTime(), server_default=sa.func.now(), nullable=False),
    sa.CheckConstraint("status IN ('success', 'failed', 'partial')", name='check_verification_runs_status'),
    sa.CheckConstraint('checks_total >= 0', name='check_verification_runs_checks_total'),
    sa.CheckConstraint('checks_failed >= 0', name='check_verification_runs_checks_failed'),
    sa.PrimaryKeyConstraint('run_id')
    )
    op.create_index('ix_verification_runs_suite_started', 'verification_runs', ['suite', 'started_at'])
    op.create_table('check_results',
    sa.Column('check_id', sa.Integer(), autoincrement=True, nullable=False),
    sa.Column('run_id', sa.Uuid(), nullable=False),
    sa.Column('case_key', sa.Text(), nullable=False),
    sa.Column('passed', sa.Boolean(), nullable=False),
    sa.Column('gating', sa.Boolean(), nullable=False),
    sa.Column('residual', sa.Text(), nullable=True),
    sa.Column('detail', sa.JSON(), nullable=True),
    sa.Column('created_at', sa.DateTime(), server_default=sa.func.now(), nullable=False),
    sa.CheckConstraint('passed OR residual IS NOT NULL', name='check_check_results_residual'),
    sa.ForeignKeyConstraint(['run_id'], ['verification_runs.run_id'], ),
    sa.PrimaryKeyConstraint('check_id'),
    sa.UniqueConstraint('run_id', 'case_key', name='uq_check_results_run_case')
    )


def downgrade() -> None:
    """Downgrade schema."""
    op.drop_table('check_results')
    op.drop_index('ix_verification_runs_suite_started', table_name='verification_runs')
    op.drop_table('verification_runs')
