from src.database.models import (
    CheckResult,
    VerificationRun,
)
from src.database.session import get_session, get_db
from src.database.repositories import (
    CheckResultRepository,
    VerificationRunRepository,
)

__all__ = [
    "CheckResult",
    "VerificationRun",
    "get_session",
    "get_db",
    "CheckResultRepository",
    "VerificationRunRepository",
]
