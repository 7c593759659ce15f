"""Acceptance criteria 1 to 11 at their stated sizes and tolerances.

Each test prints one ``PASS``/``FAIL`` line for its criterion, even under
output capture.
"""
import itertools

import numpy as np
import pytest

from qsuperadd.harness import REGISTRY, SuiteConfig, run_suite
from qsuperadd.harness.report import records_section
from qsuperadd.harness.samplers import random_restricted_weyl
from qsuperadd.decompositions import decompose_depolarizing, decompose_restricted_weyl
from qsuperadd.channels import identity_channel
from qsuperadd.linalg import RngSeed
from qsuperadd.optimize import OptimizerConfig, maximize_holevo, minimize_avg_output_entropy, minimize_output_entropy
from qsuperadd.records import FAIL, INFINITE_SKIP
from qsuperadd.zoo import DepolarizingSpec, PhaseDampingSpec, build_depolarizing, build_phase_damping, weyl_operator

SEED = 20240611


@pytest.fixture
def announce(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    return emit


def run(suite, dims, trials, **kw):
    return run_suite(SuiteConfig(suite, dims=dims, trials=trials, seed=SEED, **kw))


def fails(report):
    return [r for r in report.records if r.verdict == FAIL]


def test_criterion_01_monotonicity(announce):
    report = run("monotonicity", (2, 3), 1000)
    bad = [r for r in report.records if r.slack is not None and r.slack > 1e-8]
    skips = [r for r in report.records if r.verdict == INFINITE_SKIP]
    infinite = [r for r in report.records if not (np.isfinite(r.lhs) and np.isfinite(r.rhs))]
    ok = not bad and not fails(report) and skips == infinite and len(skips) > 0
    announce(1, ok, f"{len(report.records)} records, slack>1e-8: {len(bad)}, infinite-skip: {len(skips)}")
    assert ok


def test_criterion_02_relative_entropy_properties(announce):
    report = run("entropy-properties", (2, 3, 4), 200)
    eq = [abs(r.slack) for r in report.records if r.relation == "eq"]
    violations = [r for r in report.records if r.relation != "eq" and r.verdict == FAIL]
    ok = max(eq) < 1e-8 and not violations and len(report.records) == 4 * 600
    announce(2, ok, f"max identity residual {max(eq):.2e}, inequality violations {len(violations)}")
    assert ok


def test_criterion_03_weyl_commutation(announce):
    worst = {}
    for d in (2, 3, 5):
        ops = {(m, n): weyl_operator(d, m, n) for m in range(d) for n in range(d)}
        worst[d] = max(
            np.max(np.abs(ops[a] @ ops[b] - np.exp(2j * np.pi * (b[0] * a[1] - a[0] * b[1]) / d) * ops[b] @ ops[a]))
            for a, b in itertools.product(ops, repeat=2)
        )
    ok = all(w < 1e-12 for w in worst.values())
    announce(3, ok, "max commutation residual " + ", ".join(f"d={d}: {w:.1e}" for d, w in worst.items()))
    assert ok


def test_criterion_04_mub(announce):
    report = run("mub", (2, 3, 5), 3)
    bad = sorted({r.note.split(":")[0] for r in report.records if not r.slack < 1e-10})
    ok = not bad and not fails(report)
    detail = f"{len(report.records)} records, max residual {report.summary['max_residual']:.1e}"
    announce(4, ok, detail + (f", failing (d,k): {bad}" if bad else ", no failing (d,k)"))
    assert ok


def test_criterion_05_decompositions(announce):
    rng = np.random.default_rng(SEED)
    weyl = max(
        (lambda mix: mix.residual(mix.meta["target"]))(decompose_restricted_weyl(random_restricted_weyl(rng, d, 1e-3)))
        for d in (3, 5) for _ in range(20)
    )
    grid = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
    dep = max(
        (lambda mix: mix.residual(mix.meta["target"]))(decompose_depolarizing(DepolarizingSpec(d, p)))
        for d in (2, 3) for p in grid + [d * d / (d * d - 1)]
    )
    ok = weyl < 1e-10 and dep < 1e-9
    announce(5, ok, f"restricted Weyl residual {weyl:.1e}, depolarizing residual {dep:.1e}")
    assert ok


def test_criterion_06_optimizer_calibration(announce):
    cfg = OptimizerConfig(seed=RngSeed(SEED))
    dep = build_depolarizing(DepolarizingSpec(2, 0.5))
    s_min = minimize_output_entropy(dep, cfg).value
    c1 = maximize_holevo(dep, cfg).value
    c1_id = maximize_holevo(identity_channel(2), cfg).value
    ok = abs(s_min - 0.8112781) < 1e-6 and c1 >= 0.1887219 - 1e-6 and abs(c1_id - 1) < 1e-6
    announce(6, ok, f"S_min {s_min:.9f}, C1 depolarizing {c1:.9f}, C1 noiseless {c1_id:.9f}")
    assert ok


def test_criterion_07_phase_damping_bound(announce):
    phi = build_phase_damping(PhaseDampingSpec(np.eye(3), [0.5, 0.3, 0.2]))
    h = minimize_avg_output_entropy(phi, np.eye(3) / 3, OptimizerConfig(seed=RngSeed(SEED))).value
    ok = h <= 1.4854753 + 1e-6
    announce(7, ok, f"H_Phi(I/3) estimate {h:.9f}, bound 1.4854753")
    assert ok


def test_criterion_08_exact_inequalities(announce):
    parts = []
    for suite in ("prop2", "lemma-qc", "lemma-erasure"):
        for d in (2, 3):
            report = run(suite, (d,), 200, d_k=2, tolerance=1e-8)
            parts.append((suite, d, len(fails(report)), report.summary["min_slack"]))
    ok = all(n == 0 for _, _, n, _ in parts)
    announce(8, ok, "; ".join(f"{s} (d={d},dK=2) fails={n} min_slack={m:.3g}" for s, d, n, m in parts))
    assert ok


def test_criterion_09_proof_replay(announce):
    report = run("proof-replay", (2, 3), 50)
    kinds = {}
    for r in report.records:
        kind = r.note.split(":")[0]
        kinds[kind] = max(kinds.get(kind, 0.0), abs(r.slack))
    ok = all(v < 1e-9 for v in kinds.values()) and not fails(report)
    announce(9, ok, ", ".join(f"{k} max residual {v:.1e}" for k, v in sorted(kinds.items())))
    assert ok


SUPERADD = ("thm-noiseless", "thm-qc", "thm-erasure", "thm-depolarizing", "thm-phase", "thm-weyl")


def test_criterion_10_strong_superadditivity(announce):
    parts = []
    for suite in SUPERADD:
        report = run(suite, (2,), 100, tolerance=1e-6)
        escalated = sum("escalated" in r.note for r in report.records)
        parts.append((suite, len(fails(report)), escalated, report.summary["min_slack"]))
    ok = all(n == 0 for _, n, _, _ in parts)
    announce(10, ok, "; ".join(f"{s} violations={n} escalated={e} min_slack={m:.2g}" for s, n, e, m in parts))
    assert ok


def test_criterion_11_reproducibility(announce):
    differing = []
    for suite in sorted(REGISTRY):
        cfg = SuiteConfig(suite, dims=(2, 3), trials=2, seed=SEED, restarts=2)
        if records_section(run_suite(cfg).to_json()) != records_section(run_suite(cfg).to_json()):
            differing.append(suite)
    ok = not differing
    announce(11, ok, f"{len(REGISTRY)} suites replayed, differing: {differing or 'none'}")
    assert ok
