"""Heuristic check of ``H_{Phi x Omega}(rho) >= H_Phi(Tr_K rho) + H_Omega(Tr_H rho)``.

All three quantities are upper estimates from :mod:`.optimize`.  An
overestimated left side can hide a violation and an overestimated right
side can fake one, so every verdict is labelled heuristic and an
apparent violation is re-examined with four times the restarts before
it is recorded.
"""
from __future__ import annotations

import time

import numpy as np

from .channels import KrausChannel, channel_tensor
from .linalg import ValidationError, ptrace_h, ptrace_k
from .optimize import OptimizerConfig, minimize_avg_output_entropy
from .records import CheckRecord, digest, make_record

OPTIMIZER_TOL = 1e-6


def _estimates(phi, omega, joint, rho, d_h, d_k, cfg):
    lhs = minimize_avg_output_entropy(joint, rho, cfg).value
    h_phi = minimize_avg_output_entropy(phi, ptrace_k(rho, d_h, d_k), cfg).value
    h_omega = minimize_avg_output_entropy(omega, ptrace_h(rho, d_h, d_k), cfg).value
    return lhs, h_phi, h_omega


def check_strong_superadditivity(
    phi: KrausChannel,
    omega: KrausChannel,
    rho,
    cfg: OptimizerConfig | None = None,
    tolerance: float = OPTIMIZER_TOL,
    suite: str = "strong-superadd",
    instance_id: int = 0,
    timings: bool = False,
) -> CheckRecord:
    cfg = cfg or OptimizerConfig()
    rho = np.asarray(rho, dtype=complex)
    d_h, d_k = phi.din, omega.din
    if rho.shape != (d_h * d_k, d_h * d_k):
        raise ValidationError(f"state of size {rho.shape[0]} does not match {d_h}x{d_k}")
    start = time.perf_counter()
    joint = channel_tensor(phi, omega)
    lhs, h_phi, h_omega = _estimates(phi, omega, joint, rho, d_h, d_k, cfg)
    note = "upper estimates on both sides"
    if lhs - (h_phi + h_omega) < -tolerance:
        # every value is an upper bound, so the smaller of two runs is still one
        again = _estimates(phi, omega, joint, rho, d_h, d_k, cfg.escalated())
        lhs, h_phi, h_omega = (min(a, b) for a, b in zip((lhs, h_phi, h_omega), again))
        note += "; escalated x4"
    note += f"; H_Phi={h_phi:.12g}, H_Omega={h_omega:.12g}"
    wall = (time.perf_counter() - start) * 1e3 if timings else None
    return make_record(
        suite, instance_id, digest(phi, omega, rho), "ge", lhs, h_phi + h_omega,
        tolerance, heuristic=True, wall_ms=wall, note=note,
    )
