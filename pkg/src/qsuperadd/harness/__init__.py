"""Seeded verification suites, reports and the ``verify`` command."""
from .report import Report, SuiteConfig, run_suite
from .suites import REGISTRY

__all__ = ["REGISTRY", "Report", "SuiteConfig", "run_suite"]
