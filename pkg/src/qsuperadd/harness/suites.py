"""Suite registry.  Each suite turns ``(d, trial, seed)`` into check records."""
from __future__ import annotations

import math
import time
import zlib
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from ..channels import (
    KrausChannel,
    channel_compose,
    channel_tensor,
    choi_distance,
    choi_of_map,
    from_choi,
    identity_channel,
    is_cptp,
    unitary_channel,
)
from ..decompositions import decompose_depolarizing, decompose_restricted_weyl, is_prime, king_bases
from ..entropy import relative_entropy, shannon_entropy, von_neumann_entropy
from ..linalg import (
    RngSeed,
    ValidationError,
    density_from,
    haar_unitary_from,
    kron,
    projector,
    ptrace_h,
    ptrace_k,
    random_povm_from,
)
from ..optimize import OptimizerConfig, minimize_avg_output_entropy
from ..records import CheckRecord, digest, make_record
from ..superadditivity import check_strong_superadditivity
from ..zoo import (
    DepolarizingSpec,
    ErasureSpec,
    PhaseDampingSpec,
    QcSpec,
    build_depolarizing,
    build_erasure,
    build_phase_damping,
    build_qc,
    build_restricted_weyl,
    conditional_expectation,
    cyclic_unitary,
    embed_in_erasure_space,
    erasure_flag,
)
from . import samplers

IDENTITY_TOL = 1e-8
OPTIMIZER_TOL = 1e-6
REPLAY_TOL = 1e-9
MUB_TOL = 1e-10
WEYL_DECOMP_TOL = 1e-10
DEPOL_DECOMP_TOL = 1e-9

ERASURE_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
DEPOL_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
DECOMP_P_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


@dataclass
class Context:
    """Per-run settings shared by every trial of a suite."""

    suite: str
    d_k: int = 2
    tolerance: float | None = None
    restarts: int = 4
    timings: bool = False

    def tol(self, default: float) -> float:
        return default if self.tolerance is None else self.tolerance

    def optimizer(self, seed: RngSeed) -> OptimizerConfig:
        return OptimizerConfig(restarts=self.restarts, seed=seed)


class Recorder:
    """Collects records for one trial, timing each one if asked to."""

    def __init__(self, ctx: Context):
        self.ctx = ctx
        self.records: list[CheckRecord] = []
        self._t = time.perf_counter()

    def add(self, inputs, relation, lhs, rhs, tolerance, heuristic=False, note=""):
        wall = None
        if self.ctx.timings:
            now = time.perf_counter()
            wall, self._t = (now - self._t) * 1e3, now
        self.records.append(
            make_record(self.ctx.suite, 0, digest(*inputs), relation, lhs, rhs, tolerance,
                        heuristic=heuristic, wall_ms=wall, note=note)
        )


def trial_seed(root: RngSeed, suite: str, d: int, trial: int) -> RngSeed:
    """Sub-seed depending only on ``(root, suite, d, trial)``."""
    stream = zlib.crc32(suite.encode())
    return RngSeed(root.seed, stream).child(d).child(trial)


def _random_basis(rng, d):
    return haar_unitary_from(rng, d)


def _h_of(ch: KrausChannel, rho, seed: RngSeed, ctx: Context) -> float:
    return minimize_avg_output_entropy(ch, rho, ctx.optimizer(seed)).value


def _escalating_rhs(terms, seed: RngSeed, ctx: Context, lhs: float, tol: float):
    """Sum of ``H`` estimates for ``(channel, state)`` pairs; re-run with 4x restarts if it beats ``lhs``."""
    values = [_h_of(ch, st, seed.child(i), ctx) for i, (ch, st) in enumerate(terms)]
    note = "rhs upper estimates"
    if lhs - sum(values) < -tol:
        cfg = ctx.optimizer(seed).escalated()
        again = [minimize_avg_output_entropy(ch, st, replace(cfg, seed=seed.child(i))).value
                 for i, (ch, st) in enumerate(terms)]
        values = [min(a, b) for a, b in zip(values, again)]
        note += "; escalated x4"
    return sum(values), note + "; " + ", ".join(f"{v:.12g}" for v in values)


# -- entropy suites -------------------------------------------------------------

def suite_monotonicity(ctx: Context, d: int, trial: int, seed: RngSeed) -> list[CheckRecord]:
    rng = seed.generator()
    rec = Recorder(ctx)
    if trial == 0:
        phi = unitary_channel(haar_unitary_from(rng, d))
    else:
        phi = samplers.random_channel(rng, d)
    sigma = density_from(rng, d)
    # every 50th instance uses a singular rho so that S(sigma||rho) is infinite
    rho = density_from(rng, d, d - 1 if trial % 50 == 49 else d)
    lhs = relative_entropy(phi(sigma), phi(rho))
    rhs = relative_entropy(sigma, rho)
    rec.add((phi, sigma, rho), "le", lhs, rhs, ctx.tol(IDENTITY_TOL), note=phi.kind)
    return rec.records


def suite_entropy_properties(ctx: Context, d: int, trial: int, seed: RngSeed) -> list[CheckRecord]:
    rng = seed.generator()
    rec = Recorder(ctx)
    tol = ctx.tol(IDENTITY_TOL)
    dk = ctx.d_k
    sigma, rho = density_from(rng, d), density_from(rng, d)
    u = haar_unitary_from(rng, d)
    base = relative_entropy(sigma, rho)
    rec.add((u, sigma, rho), "eq", relative_entropy(u @ sigma @ u.conj().T, u @ rho @ u.conj().T), base, tol,
            note="unitary invariance")
    rec.add((sigma, rho), "ge", base, 0.0, tol, note="nonnegativity")
    big_s, big_r = density_from(rng, d * dk), density_from(rng, d * dk)
    rec.add((big_s, big_r), "le", relative_entropy(ptrace_k(big_s, d, dk), ptrace_k(big_r, d, dk)),
            relative_entropy(big_s, big_r), tol, note="partial trace")
    s2, r2 = density_from(rng, dk), density_from(rng, dk)
    rec.add((sigma, rho, s2, r2), "eq", relative_entropy(kron(sigma, s2), kron(rho, r2)),
            base + relative_entropy(s2, r2), tol, note="additivity")
    return rec.records


# -- phase damping -----------------------------------------------------------------

def _random_phase_damping(rng, d):
    spec = PhaseDampingSpec(_random_basis(rng, d), samplers.random_spectrum(rng, d))
    return spec, build_phase_damping(spec)


def suite_prop1(ctx: Context, d: int, trial: int, seed: RngSeed) -> list[CheckRecord]:
    rng = seed.generator()
    rec = Recorder(ctx)
    spec, phi = _random_phase_damping(rng, d)
    rho = ptrace_k(samplers.hull_mixture_state(rng, spec.basis, 1), d, 1)
    est = _h_of(phi, rho, seed.child(0), ctx)
    # an upper estimate below the bound certifies it, so this is not heuristic
    rec.add((phi, rho), "le", est, shannon_entropy(spec.spectrum), ctx.tol(OPTIMIZER_TOL))
    return rec.records


def block_states(rho, basis, d, d_k):
    """``(p_j, rho_j)`` with ``p_j rho_j = Tr_H((|e_j><e_j| (x) I) rho)``; ``rho_j`` is ``None`` when ``p_j ~ 0``."""
    rotated = kron(basis.conj().T, np.eye(d_k)) @ rho @ kron(basis, np.eye(d_k))
    blocks = rotated.reshape(d, d_k, d, d_k)
    out = []
    for j in range(d):
        b = blocks[j, :, j, :]
        p = float(np.trace(b).real)
        out.append((p, b / p if p > 1e-12 else None))
    return out


def prop2_sides(phi_spec: PhaseDampingSpec, rho, d_k: int):
    d = phi_spec.d
    phi = build_phase_damping(phi_spec)
    lhs = von_neumann_entropy(channel_tensor(phi, identity_channel(d_k))(rho))
    rho_j = [d * p * r for p, r in block_states(rho, phi_spec.basis, d, d_k) if r is not None]
    rhs = shannon_entropy(phi_spec.spectrum) + sum(von_neumann_entropy(r) for r in rho_j) / d
    return lhs, rhs


def suite_prop2(ctx: Context, d: int, trial: int, seed: RngSeed) -> list[CheckRecord]:
    rng = seed.generator()
    rec = Recorder(ctx)
    spec, _ = _random_phase_damping(rng, d)
    rho = samplers.unbiased_hull_state(rng, spec.basis, ctx.d_k, trial % 2)
    lhs, rhs = prop2_sides(spec, rho, ctx.d_k)
    rec.add((spec.basis, spec.spectrum, rho), "ge", lhs, rhs, ctx.tol(IDENTITY_TOL))
    return rec.records


def suite_thm_phase(ctx: Context, d: int, trial: int, seed: RngSeed) -> list[CheckRecord]:
    rng = seed.generator()
    rec = Recorder(ctx)
    dk = ctx.d_k
    spec, phi = _random_phase_damping(rng, d)
    omega = samplers.random_channel(rng, dk)
    rho = samplers.unbiased_hull_state(rng, spec.basis, dk, trial % 2)
    tol = ctx.tol(OPTIMIZER_TOL)
    lhs = von_neumann_entropy(channel_tensor(phi, omega)(rho))
    rhs, note = _escalating_rhs([(phi, ptrace_k(rho, d, dk)), (omega, ptrace_h(rho, d, dk))],
                                seed.child(1), ctx, lhs, tol)
    rec.add((phi, omega, rho), "ge", lhs, rhs, tol, heuristic=True, note=note)
    return rec.records


def suite_thm_weyl(ctx: Context, d: int, trial: int, seed: RngSeed) -> list[CheckRecord]:
    if not is_prime(d):
        raise ValidationError(f"thm-weyl needs a prime dimension, got d={d}")
    rng = seed.generator()
    rec = Recorder(ctx)
    dk = ctx.d_k
    phi = build_restricted_weyl(samplers.random_restricted_weyl(rng, d))
    omega = samplers.random_channel(rng, dk)
    rho = samplers.diagonal_marginal_state(rng, d, dk)
    tol = ctx.tol(OPTIMIZER_TOL)
    lhs = von_neumann_entropy(channel_tensor(phi, omega)(rho))
    rhs, note = _escalating_rhs([(phi, ptrace_k(rho, d, dk)), (omega, ptrace_h(rho, d, dk))],
                                seed.child(1), ctx, lhs, tol)
    rec.add((phi, omega, rho), "ge", lhs, rhs, tol, heuristic=True, note=note)
    return rec.records


# -- unrestricted strong superadditivity ----------------------------------------------

def _superadd(ctx, phi, d, trial, seed, rng, note=""):
    omega = samplers.random_channel(rng, ctx.d_k)
    rho = samplers.random_density(rng, d * ctx.d_k, full_rank=False)
    record = check_strong_superadditivity(
        phi, omega, rho, ctx.optimizer(seed.child(1)), ctx.tol(OPTIMIZER_TOL),
        suite=ctx.suite, timings=ctx.timings,
    )
    if note:
        record = replace(record, note=f"{note}; {record.note}")
    return [record]


def suite_thm_noiseless(ctx, d, trial, seed):
    return _superadd(ctx, identity_channel(d), d, trial, seed, seed.generator())


def suite_thm_qc(ctx, d, trial, seed):
    rng = seed.generator()
    if trial == 0:
        povm = [projector(np.eye(d)[j]) for j in range(d)]
    else:
        povm = random_povm_from(rng, d, d)
    return _superadd(ctx, build_qc(QcSpec(povm)), d, trial, seed, rng)


def suite_thm_erasure(ctx, d, trial, seed):
    rng = seed.generator()
    eps = ERASURE_GRID[trial % len(ERASURE_GRID)] if trial % 2 == 0 else float(rng.random())
    return _superadd(ctx, build_erasure(ErasureSpec(d, eps)), d, trial, seed, rng, note=f"eps={eps:.6g}")


def suite_thm_depolarizing(ctx, d, trial, seed):
    rng = seed.generator()
    grid = DEPOL_GRID + (d * d / (d * d - 1),)
    p = grid[trial % len(grid)]
    return _superadd(ctx, build_depolarizing(DepolarizingSpec(d, p)), d, trial, seed, rng, note=f"p={p:.6g}")


def suite_strong_superadd(ctx, d, trial, seed):
    rng = seed.generator()
    return _superadd(ctx, samplers.random_channel(rng, d), d, trial, seed, rng)


# -- exact lemmas ---------------------------------------------------------------------

def qc_lemma_sides(povm, rho, d, d_k):
    """Both sides of ``S((Phi (x) Id)(rho)) >= S(Phi(Tr_K rho)) + sum_j lambda_j S(rho_j)``."""
    phi = build_qc(QcSpec(povm))
    lhs = von_neumann_entropy(channel_tensor(phi, identity_channel(d_k))(rho))
    marginal = ptrace_k(rho, d, d_k)
    rhs = von_neumann_entropy(phi(marginal))
    for m in povm:
        lam = float(np.trace(m @ marginal).real)
        if lam < 1e-12:
            continue
        rho_j = ptrace_h(kron(m, np.eye(d_k)) @ rho, d, d_k) / lam
        rhs += lam * von_neumann_entropy((rho_j + rho_j.conj().T) / 2)
    return lhs, rhs


def erasure_lemma_sides(eps, rho, d, d_k):
    """Both sides of ``S((Phi (x) Id)(rho)) >= eps S(Tr_H rho) + (1-eps) S(rho) + S(Phi(Tr_K rho))``."""
    phi = build_erasure(ErasureSpec(d, eps))
    lhs = von_neumann_entropy(channel_tensor(phi, identity_channel(d_k))(rho))
    rhs = (eps * von_neumann_entropy(ptrace_h(rho, d, d_k)) + (1 - eps) * von_neumann_entropy(rho)
           + von_neumann_entropy(phi(ptrace_k(rho, d, d_k))))
    return lhs, rhs


def suite_lemma_qc(ctx, d, trial, seed):
    rng = seed.generator()
    rec = Recorder(ctx)
    if trial == 0:
        povm = [projector(np.eye(d)[j]) for j in range(d)]
    else:
        povm = random_povm_from(rng, d, d)
    rho = samplers.random_density(rng, d * ctx.d_k, full_rank=False)
    lhs, rhs = qc_lemma_sides(povm, rho, d, ctx.d_k)
    rec.add((povm, rho), "ge", lhs, rhs, ctx.tol(IDENTITY_TOL))
    return rec.records


def suite_lemma_erasure(ctx, d, trial, seed):
    rng = seed.generator()
    rec = Recorder(ctx)
    eps = ERASURE_GRID[trial % len(ERASURE_GRID)] if trial % 2 == 0 else float(rng.random())
    rho = samplers.random_density(rng, d * ctx.d_k, full_rank=False)
    lhs, rhs = erasure_lemma_sides(eps, rho, d, ctx.d_k)
    purity = float(np.trace(np.linalg.matrix_power(ptrace_k(rho, d, ctx.d_k), 2)).real)
    rec.add((eps, rho), "ge", lhs, rhs, ctx.tol(IDENTITY_TOL),
            note=f"eps={eps:.6g}; purity of Tr_K rho={purity:.6g}")
    return rec.records


# -- proof replay -----------------------------------------------------------------------

def _cptp_defect(ch: KrausChannel) -> float:
    report = is_cptp(ch)
    return max(report.completeness_residual, max(0.0, -report.choi_min_eigenvalue))


def xi_map(rho, phi_spec: PhaseDampingSpec, d_k: int):
    """``sigma -> sum_j Tr((|e_j><e_j| (x) I) sigma) (V^j (x) I) rho (V^j (x) I)*``."""
    d = phi_spec.d
    v = cyclic_unitary(phi_spec.basis)
    shifted = []
    for j in range(d):
        w = kron(np.linalg.matrix_power(v, j), np.eye(d_k))
        shifted.append(w @ rho @ w.conj().T)
    probes = [kron(projector(phi_spec.basis[:, j]), np.eye(d_k)) for j in range(d)]
    return lambda sigma: sum(np.trace(p @ sigma) * s for p, s in zip(probes, shifted))


def sigma_qc_map(povm, rho, d, d_k):
    """``sigma -> sum_j <e_j|sigma|e_j> |e_j><e_j| (x) rho_j`` (``rho_j = I/d_k`` when ``lambda_j = 0``)."""
    marginal = ptrace_k(rho, d, d_k)
    states = []
    for m in povm:
        lam = float(np.trace(m @ marginal).real)
        rj = ptrace_h(kron(m, np.eye(d_k)) @ rho, d, d_k) / lam if lam > 1e-12 else np.eye(d_k) / d_k
        states.append(kron(projector(np.eye(d)[len(states)]), rj))
    return lambda sigma: sum(sigma[j, j] * s for j, s in enumerate(states))


def sigma_erasure_map(rho, d, d_k):
    """``sigma -> <w|sigma|w> |w><w| (x) Tr_H rho + Tr(P_H sigma) rho`` on ``C^{d+1}``."""
    flag = erasure_flag(d)
    flagged = kron(flag, ptrace_h(rho, d, d_k))
    embed = kron(np.eye(d + 1, d), np.eye(d_k))
    lifted = embed @ rho @ embed.conj().T
    return lambda sigma: sigma[d, d] * flagged + np.trace(sigma[:d, :d]) * lifted


def _as_channel(linear_map, din, dout, kind):
    return from_choi(choi_of_map(linear_map, din), din, dout, kind=kind)


def replay_xi_phase(ctx, d, trial, seed, rec):
    rng = seed.generator()
    dk = ctx.d_k
    tol = ctx.tol(REPLAY_TOL)
    spec, phi = _random_phase_damping(rng, d)
    if trial % 3 == 2:
        spec = PhaseDampingSpec(spec.basis, np.full(d, 1 / d))
        phi = build_phase_damping(spec)
    rho = samplers.unbiased_hull_state(rng, spec.basis, dk, trial % 2)
    xi = _as_channel(xi_map(rho, spec, dk), d * dk, d * dk, "xi")
    y = density_from(rng, dk)
    sigma = sum(l * kron(projector(spec.basis[:, j]), y) for j, l in enumerate(spec.spectrum))
    sigma_bar = kron(np.eye(d) / d, y)
    e_tilde = channel_tensor(conditional_expectation(spec.basis), identity_channel(dk))
    phi_id = channel_tensor(phi, identity_channel(dk))
    inputs = ("xi-phase", spec.basis, spec.spectrum, rho, y)
    rec.add(inputs, "eq", _cptp_defect(xi), 0.0, tol, note="xi-phase: CPTP defect")
    rec.add(inputs, "eq", float(np.max(np.abs(xi(sigma) - phi_id(rho)))), 0.0, tol,
            note="xi-phase: Xi(sigma) = (Phi x Id)(rho)")
    rec.add(inputs, "eq", float(np.max(np.abs(xi(sigma_bar) - e_tilde(rho)))), 0.0, tol,
            note="xi-phase: Xi(sigma_bar) = E~(rho)")
    rec.add(inputs, "eq", choi_distance(channel_compose(e_tilde, phi_id), e_tilde), 0.0, tol,
            note="xi-phase: E~ o (Phi x Id) = E~")
    blocks = block_states(rho, spec.basis, d, dk)
    rec.add(inputs, "eq", von_neumann_entropy(e_tilde(rho)),
            math.log2(d) + sum(von_neumann_entropy(r) for _, r in blocks if r is not None) / d, tol,
            note="xi-phase: S(E~(rho)) = log d + mean S(rho_j)")


def replay_sigma_qc(ctx, d, trial, seed, rec):
    rng = seed.generator()
    dk = ctx.d_k
    tol = ctx.tol(REPLAY_TOL)
    povm = [projector(np.eye(d)[j]) for j in range(d)] if trial == 0 else random_povm_from(rng, d, d)
    rho = samplers.random_density(rng, d * dk, full_rank=False)
    phi = build_qc(QcSpec(povm))
    sig = _as_channel(sigma_qc_map(povm, rho, d, dk), d, d * dk, "sigma-qc")
    phi_id = channel_tensor(phi, identity_channel(dk))
    marginal = ptrace_k(rho, d, dk)
    inputs = ("sigma-qc", povm, rho)
    rec.add(inputs, "eq", _cptp_defect(sig), 0.0, tol, note="sigma-qc: CPTP defect")
    rec.add(inputs, "eq", float(np.max(np.abs(sig(phi(marginal)) - phi_id(rho)))), 0.0, tol,
            note="sigma-qc: Sigma(Phi(Tr_K rho)) = (Phi x Id)(rho)")
    expected = sigma_qc_map(povm, rho, d, dk)(np.eye(d) / d)
    rec.add(inputs, "eq", float(np.max(np.abs(sig(np.eye(d) / d) - expected))), 0.0, tol,
            note="sigma-qc: Sigma(I/d) = mean |e_j><e_j| x rho_j")


def replay_sigma_erasure(ctx, d, trial, seed, rec):
    rng = seed.generator()
    dk = ctx.d_k
    tol = ctx.tol(REPLAY_TOL)
    eps = 0.5 if trial == 0 else float(rng.random())
    rho = samplers.random_density(rng, d * dk, full_rank=False)
    phi = build_erasure(ErasureSpec(d, eps))
    sig = _as_channel(sigma_erasure_map(rho, d, dk), d + 1, (d + 1) * dk, "sigma-erasure")
    phi_id = channel_tensor(phi, identity_channel(dk))
    marginal = ptrace_k(rho, d, dk)
    _, vecs = np.linalg.eigh(marginal)
    e = embed_in_erasure_space(projector(vecs[:, -1]))
    mixed_in = 0.5 * erasure_flag(d) + 0.5 * e
    embed = kron(np.eye(d + 1, d), np.eye(dk))
    mixed_out = 0.5 * kron(erasure_flag(d), ptrace_h(rho, d, dk)) + 0.5 * embed @ rho @ embed.conj().T
    inputs = ("sigma-erasure", eps, rho)
    rec.add(inputs, "eq", _cptp_defect(sig), 0.0, tol, note="sigma-erasure: CPTP defect")
    rec.add(inputs, "eq", float(np.max(np.abs(sig(phi(marginal)) - phi_id(rho)))), 0.0, tol,
            note="sigma-erasure: Sigma(Phi(Tr_K rho)) = (Phi x Id)(rho)")
    rec.add(inputs, "eq", float(np.max(np.abs(sig(mixed_in) - mixed_out))), 0.0, tol,
            note="sigma-erasure: Sigma(w/2 + e/2) = w x Tr_H rho / 2 + rho / 2")


def suite_proof_replay(ctx, d, trial, seed):
    rec = Recorder(ctx)
    replay_xi_phase(ctx, d, trial, seed.child(0), rec)
    replay_sigma_qc(ctx, d, trial, seed.child(1), rec)
    replay_sigma_erasure(ctx, d, trial, seed.child(2), rec)
    return rec.records


# -- structural suites ----------------------------------------------------------------

def suite_decompositions(ctx, d, trial, seed):
    rng = seed.generator()
    rec = Recorder(ctx)
    if is_prime(d):
        spec = samplers.random_restricted_weyl(rng, d, min_lambda0=1e-3)
        mix = decompose_restricted_weyl(spec)
        rec.add(("weyl", spec.r, spec.p), "eq", mix.residual(mix.meta["target"]), 0.0,
                ctx.tol(WEYL_DECOMP_TOL), note=f"restricted Weyl d={d}; total weight {mix.total_weight:.15g}")
    grid = DECOMP_P_GRID + (d * d / (d * d - 1),)
    p = grid[trial % len(grid)]
    spec = DepolarizingSpec(d, p)
    mix = decompose_depolarizing(spec)
    literal = decompose_depolarizing(spec, literal=True)
    rec.add(("depolarizing", d, p), "eq", mix.residual(mix.meta["target"]), 0.0, ctx.tol(DEPOL_DECOMP_TOL),
            note=(f"depolarizing d={d} p={p:.6g}; convex={mix.convex}; "
                  f"clock range 1..d-1 residual {literal.residual(literal.meta['target']):.6g}"))
    return rec.records


def suite_mub(ctx, d, trial, seed):
    rng = seed.generator()
    rec = Recorder(ctx)
    tol = ctx.tol(MUB_TOL)
    reference = None if trial == 0 else haar_unitary_from(rng, d)
    fam = king_bases(d, reference)
    ortho = fam.orthonormality_residuals()
    overlap = fam.overlap_residuals()
    mixed = np.eye(d) / d
    for k in range(1, len(fam.bases) + 1):
        e_k = fam.expectation(k)
        spread = max(float(np.max(np.abs(e_k(projector(fam.reference[:, j])) - mixed))) for j in range(d))
        inputs = ("mub", fam.reference, k)
        rec.add(inputs, "eq", float(ortho[k - 1]), 0.0, tol, note=f"d={d} k={k}: orthonormality")
        rec.add(inputs, "eq", float(overlap[k - 1]), 0.0, tol, note=f"d={d} k={k}: overlaps 1/d")
        rec.add(inputs, "eq", spread, 0.0, tol, note=f"d={d} k={k}: E_k(|f_j><f_j|) = I/d")
    return rec.records


SuiteFn = Callable[[Context, int, int, RngSeed], list]

REGISTRY: dict[str, SuiteFn] = {
    "monotonicity": suite_monotonicity,
    "entropy-properties": suite_entropy_properties,
    "prop1": suite_prop1,
    "prop2": suite_prop2,
    "thm-phase": suite_thm_phase,
    "thm-weyl": suite_thm_weyl,
    "thm-noiseless": suite_thm_noiseless,
    "thm-qc": suite_thm_qc,
    "thm-erasure": suite_thm_erasure,
    "thm-depolarizing": suite_thm_depolarizing,
    "lemma-qc": suite_lemma_qc,
    "lemma-erasure": suite_lemma_erasure,
    "proof-replay": suite_proof_replay,
    "decompositions": suite_decompositions,
    "mub": suite_mub,
    "strong-superadd": suite_strong_superadd,
}
