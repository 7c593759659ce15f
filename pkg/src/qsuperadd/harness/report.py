"""Running a suite and writing its report (JSON, optionally CSV)."""
from __future__ import annotations

import csv
import json
import os
import tempfile
import time
from dataclasses import asdict, dataclass, field, replace

from .. import __version__
from ..linalg import RngSeed, ValidationError
from ..records import FAIL, HEURISTIC_PASS, INFINITE_SKIP, PASS, CheckRecord, encode_float
from .suites import REGISTRY, Context, trial_seed

MIN_DIM, MAX_DIM = 2, 8


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    dims: tuple = (2,)
    trials: int = 10
    seed: int = 0
    tolerance: float | None = None
    d_k: int = 2
    restarts: int = 4
    timings: bool = False
    output_path: str | None = None
    csv_path: str | None = None

    def __post_init__(self):
        if self.suite not in REGISTRY:
            raise ValidationError(f"unknown suite {self.suite!r}; known: {', '.join(sorted(REGISTRY))}")
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(not MIN_DIM <= d <= MAX_DIM for d in dims):
            raise ValidationError(f"dims must lie in [{MIN_DIM}, {MAX_DIM}], got {dims}")
        if not MIN_DIM <= self.d_k <= MAX_DIM:
            raise ValidationError(f"d_k must lie in [{MIN_DIM}, {MAX_DIM}], got {self.d_k}")
        if self.trials < 1 or self.restarts < 1:
            raise ValidationError("trials and restarts must be positive")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValidationError("tolerance must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "dims", dims)

    def echo(self) -> dict:
        out = asdict(self)
        out["dims"] = list(self.dims)
        for key in ("output_path", "csv_path"):
            out.pop(key)
        return out


@dataclass
class Report:
    config: SuiteConfig
    records: list = field(default_factory=list)
    runtime_ms: float = 0.0

    @property
    def summary(self) -> dict:
        counts = {v: 0 for v in (PASS, HEURISTIC_PASS, FAIL, INFINITE_SKIP)}
        for r in self.records:
            counts[r.verdict] += 1
        slacks = [r.slack for r in self.records if r.slack is not None]
        residuals = [abs(r.slack) for r in self.records if r.relation == "eq" and r.slack is not None]
        return {
            "pass": counts[PASS],
            "heuristic_pass": counts[HEURISTIC_PASS],
            "fail": counts[FAIL],
            "infinite_skip": counts[INFINITE_SKIP],
            "min_slack": encode_float(min(slacks)) if slacks else None,
            "max_residual": encode_float(max(residuals)) if residuals else None,
        }

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def to_json(self) -> dict:
        return {
            "version": __version__,
            "config": self.config.echo(),
            "records": [r.to_json() for r in self.records],
            "summary": self.summary,
            "runtime_ms": self.runtime_ms,
        }


def run_suite(cfg: SuiteConfig) -> Report:
    """Run every ``(d, trial)`` of the suite; records come out ordered by ``(d, trial)``."""
    fn = REGISTRY[cfg.suite]
    ctx = Context(cfg.suite, cfg.d_k, cfg.tolerance, cfg.restarts, cfg.timings)
    root = RngSeed(cfg.seed)
    start = time.perf_counter()
    records: list[CheckRecord] = []
    for d in cfg.dims:
        for trial in range(cfg.trials):
            records.extend(fn(ctx, d, trial, trial_seed(root, cfg.suite, d, trial)))
    records = [replace(r, instance_id=i) for i, r in enumerate(records)]
    report = Report(cfg, records, (time.perf_counter() - start) * 1e3)
    if cfg.output_path:
        write_json(report, cfg.output_path)
    if cfg.csv_path:
        write_csv(report, cfg.csv_path)
    return report


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(report: Report, path: str):
    _atomic_write(path, json.dumps(report.to_json(), indent=2) + "\n")


def write_csv(report: Report, path: str):
    import io

    buf = io.StringIO()
    names = list(CheckRecord.__dataclass_fields__)
    writer = csv.DictWriter(buf, fieldnames=names)
    writer.writeheader()
    for r in report.records:
        writer.writerow(r.to_json())
    _atomic_write(path, buf.getvalue())


def records_section(report_json: dict) -> str:
    """Canonical text of the records, the part that must replay byte for byte."""
    return json.dumps(report_json["records"], indent=2, sort_keys=True)
