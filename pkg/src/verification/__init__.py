from src.verification.reports import CheckReport, SuiteReport, canonical_dumps
from src.verification.runner import VerificationMetrics, VerificationRunner
from src.verification.suites import SuiteConfig, get_suite, run_suite, suite_names

__all__ = [
    "CheckReport",
    "SuiteConfig",
    "SuiteReport",
    "VerificationMetrics",
    "VerificationRunner",
    "canonical_dumps",
    "get_suite",
    "run_suite",
    "suite_names",
]
