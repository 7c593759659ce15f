"""One-sided estimates of H_Phi(rho), S_min(Phi) and the one-shot Holevo capacity.

All three are nonconvex problems.  Minimizations return upper bounds (the
value of an explicit witness ensemble); the capacity search returns a
lower bound.  Each restart runs a Riemannian conjugate-gradient descent; the best
point is then polished by a compass (pattern) search over Givens
rotations, which needs no derivatives and is robust where output
spectra are degenerate.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .channels import KrausChannel
from .entropy import entropies, holevo_chi, von_neumann_entropy
from .ensembles import Ensemble, hjw_vectors, scaled_eigenvectors
from .linalg import RngSeed, ValidationError, as_seed, haar_unitary_from, pure_from

LOG_FLOOR = 1e-16
ARMIJO = 1e-4


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    max_iterations: int = 500
    tolerance: float = 1e-8
    ensemble_cap: int | None = None
    seed: RngSeed = field(default_factory=lambda: RngSeed(0))
    initial_step: float = 0.3
    shrink: float = 0.5
    min_step: float = 1e-6

    def __post_init__(self):
        object.__setattr__(self, "seed", as_seed(self.seed))
        if self.restarts < 1 or self.max_iterations < 1 or self.tolerance <= 0:
            raise ValidationError("optimizer settings must be positive")
        if self.ensemble_cap is not None and self.ensemble_cap < 1:
            raise ValidationError("ensemble cap must be positive")

    def escalated(self, factor: int = 4) -> "OptimizerConfig":
        return replace(self, restarts=self.restarts * factor)


@dataclass(frozen=True, eq=False)
class Estimate:
    """Optimizer output: a value certified by ``witness``.

    ``direction`` is ``"upper"`` for minimizations and ``"lower"`` for the
    capacity search; ``trace`` holds the best value of each restart.
    """

    value: float
    direction: str
    witness: Ensemble
    trace: list

    @property
    def best_so_far(self) -> list:
        pick = min if self.direction == "upper" else max
        out, best = [], None
        for v in self.trace:
            best = v if best is None else pick(best, v)
            out.append(best)
        return out


def _g(outputs: np.ndarray) -> np.ndarray:
    """``Tr(Y) * S(Y / Tr Y)`` for each unnormalized output ``Y`` in a stack."""
    w = np.clip(np.linalg.eigvalsh(outputs), 0.0, None)
    tr = w.sum(axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        xlx = np.where(w > 0, w * np.log2(np.where(w > 0, w, 1.0)), 0.0).sum(axis=-1)
        tlt = np.where(tr > 0, tr * np.log2(np.where(tr > 0, tr, 1.0)), 0.0)
    return np.maximum(tlt - xlx, 0.0)


class _PushForward:
    """Images ``Phi(psi psi*)`` of unnormalized vectors, batched."""

    def __init__(self, channel: KrausChannel):
        n, self.dout, self.din = channel.kraus.shape
        self.n = n
        self.flat = channel.kraus.reshape(n * self.dout, self.din)
        self.flat_h = self.flat.conj().T

    def images(self, vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """``vectors`` holds one vector per column; returns ``(A_a psi_j, outputs)``."""
        m = vectors.shape[1]
        kv = (self.flat @ vectors).reshape(self.n, self.dout, m).transpose(2, 0, 1)
        return kv, np.matmul(kv.transpose(0, 2, 1), kv.conj())

    def gradient(self, vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Per-member values ``g_j`` and ``2 Phi^dag(-log2(Y_j/TrY_j)) psi_j`` as columns."""
        kv, outputs = self.images(vectors)
        w, v = np.linalg.eigh(outputs)
        w = np.clip(w, 0.0, None)
        tr = w.sum(axis=-1, keepdims=True)
        rel = np.where(tr > 0, w / np.where(tr > 0, tr, 1.0), 0.0)
        neg_log = -np.log2(np.maximum(rel, LOG_FLOOR))
        gmat = np.matmul(v * neg_log[:, None, :], v.conj().transpose(0, 2, 1))
        # (G_j A_a psi_j) stacked over a, then contracted with A_a*
        t = np.matmul(kv, gmat.transpose(0, 2, 1))
        grads = 2 * (self.flat_h @ t.reshape(len(t), -1).T)
        return _g(outputs), grads


def _givens_pairs(k: int) -> np.ndarray:
    i, j = np.triu_indices(k, 1)
    return np.stack([i, j], axis=1)


def _candidate_moves(pairs: np.ndarray, step: float):
    """Every (pair, rotation kind, signed angle) explored by one compass sweep."""
    n = len(pairs)
    kinds = np.tile(np.repeat([0, 1], n), 2)
    angles = np.repeat([step, -step], 2 * n)
    idx = np.tile(np.arange(n), 4)
    return idx, kinds, angles


def _apply_rotations(x: np.ndarray, pairs, kinds, angles) -> tuple[np.ndarray, np.ndarray]:
    """New rows for each candidate move; returns stacks of shape ``(n_moves, r)`` for rows i and j."""
    xi, xj = x[pairs[:, 0]], x[pairs[:, 1]]
    c = np.cos(angles)[:, None]
    s = np.sin(angles)[:, None]
    off = np.where(kinds == 1, 1j, 1.0)[:, None]
    # real: [[c, -s], [s, c]]; complex: [[c, i s], [i s, c]]
    top = np.where(kinds[:, None] == 1, 1j * s, -s)
    new_i = c * xi + top * xj
    new_j = off * s * xi + c * xj
    return new_i, new_j


class _AverageEntropyProblem:
    """``min sum_j g(Phi(psi_j psi_j*))`` over ``psi_j = sum_i X_ji sqrt(w_i) v_i`` with ``X* X = I``."""

    def __init__(self, channel: KrausChannel, rho):
        self.push = _PushForward(channel)
        self.scaled = scaled_eigenvectors(rho)
        self.rank = self.scaled.shape[1]

    def members(self, x: np.ndarray) -> np.ndarray:
        return _g(self.push.images(hjw_vectors(self.scaled, x))[1])

    def value_and_gradient(self, x: np.ndarray):
        values, grads = self.push.gradient(hjw_vectors(self.scaled, x))
        # d f / d conj(X_ji) = (W* g_j)_i
        return values, (self.scaled.conj().T @ grads).T

    def witness(self, x: np.ndarray) -> Ensemble:
        return Ensemble.from_vectors(hjw_vectors(self.scaled, x))


def _skew_exp(d_skew: np.ndarray):
    """Spectral data of the skew-Hermitian ``D`` so that ``exp(-t D)`` is cheap for any ``t``."""
    mu, q = np.linalg.eigh(1j * d_skew)
    return lambda t: (q * np.exp(1j * t * mu)) @ q.conj().T


def _riemannian_descent(problem, x: np.ndarray, cfg: OptimizerConfig):
    """Conjugate gradient on the Stiefel manifold, moving by left multiplication with ``exp(-t P)``.

    Directions live in the Lie algebra of skew-Hermitian ``k x k``
    matrices, so consecutive directions combine without transport
    (Polak-Ribiere with restarts).
    """
    def algebra_gradient(x, grad):
        b = x @ grad.conj().T
        return b.conj().T - b

    members, grad = problem.value_and_gradient(x)
    f = float(members.sum())
    g = algebra_gradient(x, grad)
    direction = g
    g_norm2 = float(np.vdot(g, g).real)
    t, stalls = 1.0, 0
    for _ in range(cfg.max_iterations):
        if g_norm2 < 1e-24:
            break
        # directional derivative of f along exp(-t P) X at t = 0
        slope = -0.5 * float(np.vdot(g, direction).real)
        if slope >= 0:
            direction, slope = g, -0.5 * g_norm2
        step = _skew_exp(direction)
        t = min(t * 4, 10.0)
        while True:
            x_new = step(t) @ x
            f_new = float(problem.members(x_new).sum())
            if f_new <= f + ARMIJO * t * slope or t < 1e-14:
                break
            t *= 0.5
        if f_new >= f:
            if direction is g:
                break
            direction = g
            continue
        improvement = f - f_new
        x = x_new
        members, grad = problem.value_and_gradient(x)
        f = float(members.sum())
        g_new = algebra_gradient(x, grad)
        g_new_norm2 = float(np.vdot(g_new, g_new).real)
        beta = max(0.0, float(np.vdot(g_new, g_new - g).real) / g_norm2)
        direction = g_new + beta * direction
        g, g_norm2 = g_new, g_new_norm2
        stalls = stalls + 1 if improvement < cfg.tolerance * max(1.0, abs(f)) else 0
        if stalls >= 3:
            break
    return x, f


def _sufficient_decrease(step: float, cfg: OptimizerConfig) -> float:
    """Least gain for a compass move to count as progress."""
    return max(1e-4 * step**2, 1e-3 * cfg.tolerance)


def _compass_rows(row_values, x: np.ndarray, cfg: OptimizerConfig):
    """Pattern search over Givens rotations mixing two rows of ``x``.

    ``row_values(rows)`` returns the objective contribution of each row;
    the objective is their sum, so moves on disjoint row pairs improve it
    additively and several can be accepted per sweep.
    """
    k = x.shape[0]
    if k < 2:
        return x, float(row_values(x).sum())
    pairs_all = _givens_pairs(k)
    contrib = row_values(x)
    step = cfg.initial_step
    sweeps = 0
    while step >= cfg.min_step and sweeps < cfg.max_iterations:
        sweeps += 1
        idx, kinds, angles = _candidate_moves(pairs_all, step)
        pairs = pairs_all[idx]
        new_i, new_j = _apply_rotations(x, pairs, kinds, angles)
        vals = row_values(np.concatenate([new_i, new_j]))
        n = len(idx)
        gain = contrib[pairs[:, 0]] + contrib[pairs[:, 1]] - vals[:n] - vals[n:]
        order = np.argsort(-gain)
        used = np.zeros(k, dtype=bool)
        accepted = 0
        threshold = _sufficient_decrease(step, cfg)
        for m in order:
            if gain[m] <= threshold:
                break
            i, j = pairs[m]
            if used[i] or used[j]:
                continue
            used[i] = used[j] = True
            x[i], x[j] = new_i[m], new_j[m]
            contrib[i], contrib[j] = vals[m], vals[n + m]
            accepted += 1
        if accepted == 0:
            step *= cfg.shrink
    return x, float(contrib.sum())


def _initial_mixer(rng: np.random.Generator, k: int, r: int, restart: int) -> np.ndarray:
    if restart == 0:
        return np.eye(k, r, dtype=complex)
    return haar_unitary_from(rng, k)[:, :r]


def _ensemble_value(channel: KrausChannel, ensemble: Ensemble) -> float:
    return float(sum(w * von_neumann_entropy(channel(s)) for w, s in zip(ensemble.weights, ensemble.states)))


def minimize_avg_output_entropy(channel: KrausChannel, rho, cfg: OptimizerConfig | None = None) -> Estimate:
    """Upper estimate of ``H_Phi(rho)``, the least average output entropy over decompositions of ``rho``.

    Searches pure-state ensembles of at most ``cfg.ensemble_cap`` members
    (default ``din**2``) through the HJW mixer.  Restart 0 starts from the
    eigen-decomposition of ``rho``; later restarts from Haar-random mixers.
    """
    cfg = cfg or OptimizerConfig()
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (channel.din, channel.din):
        raise ValidationError(f"state of size {rho.shape[0]} does not match channel din={channel.din}")
    problem = _AverageEntropyProblem(channel, rho)
    k = max(cfg.ensemble_cap or channel.din**2, problem.rank)

    def row_values(rows):
        return problem.members(rows)

    trace, best = [], (np.inf, -1, None)
    for restart in range(cfg.restarts):
        rng = cfg.seed.child(restart).generator()
        x = _initial_mixer(rng, k, problem.rank, restart)
        x, f = _riemannian_descent(problem, x, cfg)
        trace.append(f)
        if f < best[0]:
            best = (f, restart, x)
    # only the winning restart is polished; the others rarely change rank
    _, winner, x = best
    x, f = _compass_rows(row_values, x.copy(), cfg)
    trace[winner] = min(trace[winner], f)
    witness = problem.witness(x)
    return Estimate(_ensemble_value(channel, witness), "upper", witness, trace)


# -- minimum output entropy ---------------------------------------------------------

def _sphere_descent(push: _PushForward, psi: np.ndarray, cfg: OptimizerConfig):
    f_of = lambda v: float(_g(push.images(v[:, None])[1])[0])
    values, grads = push.gradient(psi[:, None])
    f, g = float(values[0]), grads[:, 0]
    t, stalls = 1.0, 0
    for _ in range(cfg.max_iterations):
        g = g - np.vdot(psi, g) * psi
        norm2 = float(np.vdot(g, g).real)
        if norm2 < 1e-24:
            break
        t = min(t * 4, 10.0)
        while True:
            cand = psi - t * g
            cand /= np.linalg.norm(cand)
            f_new = f_of(cand)
            if f_new <= f - ARMIJO * t * norm2 or t < 1e-14:
                break
            t *= 0.5
        if f_new >= f:
            break
        improvement = f - f_new
        psi = cand
        values, grads = push.gradient(psi[:, None])
        f, g = float(values[0]), grads[:, 0]
        stalls = stalls + 1 if improvement < cfg.tolerance * max(1.0, abs(f)) else 0
        if stalls >= 3:
            break
    return psi, f


def _compass_vector(value, psi: np.ndarray, cfg: OptimizerConfig, batch_value):
    """Pattern search over Givens rotations of pairs of coordinates of a unit vector."""
    d = len(psi)
    f = value(psi)
    if d < 2:
        return psi, f
    pairs_all = _givens_pairs(d)
    step = cfg.initial_step
    sweeps = 0
    while step >= cfg.min_step and sweeps < cfg.max_iterations:
        sweeps += 1
        cands = _moves_on_vector(psi, pairs_all, step)
        vals = batch_value(cands.T)
        best = int(np.argmin(vals))
        if vals[best] < f - _sufficient_decrease(step, cfg):
            psi, f = cands[best], float(vals[best])
        else:
            step *= cfg.shrink
    return psi, f


def minimize_output_entropy(channel: KrausChannel, cfg: OptimizerConfig | None = None) -> Estimate:
    """Upper estimate of ``S_min(Phi)`` over pure inputs."""
    cfg = cfg or OptimizerConfig()
    push = _PushForward(channel)
    batch_value = lambda vs: _g(push.images(vs)[1])
    value = lambda v: float(batch_value(v[:, None])[0])
    trace, best_psi, best_f = [], None, np.inf
    for restart in range(cfg.restarts):
        rng = cfg.seed.child(restart).generator()
        psi = np.eye(channel.din, dtype=complex)[0] if restart == 0 else pure_from(rng, channel.din)
        psi, _ = _sphere_descent(push, psi, cfg)
        psi, f = _compass_vector(value, psi, cfg, batch_value)
        trace.append(f)
        if f < best_f:
            best_f, best_psi = f, psi.copy()
    witness = Ensemble.from_vectors(best_psi[:, None])
    return Estimate(_ensemble_value(channel, witness), "upper", witness, trace)


# -- Holevo capacity ----------------------------------------------------------------

def _chi(weights: np.ndarray, outputs: np.ndarray) -> float:
    avg = np.einsum("j,jab->ab", weights, outputs)
    return float(entropies(avg[None])[0] - weights @ entropies(outputs))


def _divergences(outputs: np.ndarray, avg: np.ndarray, out_entropy: np.ndarray) -> np.ndarray:
    """``S(Y_j || avg)`` for every output; directions outside the support of ``avg`` are floored."""
    w, v = np.linalg.eigh(avg)
    log_avg = (v * np.log2(np.maximum(w, LOG_FLOOR))) @ v.conj().T
    cross = np.einsum("jab,ba->j", outputs, log_avg).real
    return -out_entropy - cross


def refine_weights(states, channel: KrausChannel, cfg: OptimizerConfig | None = None) -> np.ndarray:
    """Weights maximizing chi for fixed input states.

    Multiplicative updates ``pi_j <- pi_j 2^{S(Phi(x_j) || Phi(avg))}``,
    renormalized, from uniform weights; at most 200 iterations, stopping
    when the relative gain in chi drops below ``cfg.tolerance``.  The best
    weights seen are returned.
    """
    cfg = cfg or OptimizerConfig()
    outputs = np.stack([channel(s) for s in states])
    return _refine(outputs, cfg.tolerance)


def _refine(outputs: np.ndarray, tolerance: float) -> np.ndarray:
    n = len(outputs)
    out_entropy = entropies(outputs)
    weights = np.full(n, 1 / n)
    best_w, best_chi = weights, _chi(weights, outputs)
    for _ in range(200):
        avg = np.einsum("j,jab->ab", weights, outputs)
        div = _divergences(outputs, avg, out_entropy)
        new = weights * np.exp2(div - div.max())
        weights = new / new.sum()
        chi = _chi(weights, outputs)
        gain = chi - best_chi
        if chi > best_chi:
            best_w, best_chi = weights, chi
        if gain < tolerance * max(best_chi, 1e-300):
            break
    return best_w


def _moves_on_vector(psi: np.ndarray, pairs_all: np.ndarray, step: float) -> np.ndarray:
    """Candidate unit vectors, one per compass move, as rows."""
    idx, kinds, angles = _candidate_moves(pairs_all, step)
    pairs = pairs_all[idx]
    cands = np.repeat(psi[None, :], len(idx), axis=0)
    ni, nj = _apply_rotations(psi[:, None], pairs, kinds, angles)
    rows = np.arange(len(idx))
    cands[rows, pairs[:, 0]] = ni[:, 0]
    cands[rows, pairs[:, 1]] = nj[:, 0]
    return cands


def maximize_holevo(channel: KrausChannel, cfg: OptimizerConfig | None = None) -> Estimate:
    """Lower estimate of the one-shot capacity ``C_1``.

    Alternates the weight refinement with a compass search over Givens
    rotations of each input vector.  Restart 0 starts from the input basis
    padded with random vectors; later restarts are fully random.
    """
    cfg = cfg or OptimizerConfig()
    d = channel.din
    k = cfg.ensemble_cap or d * d
    push = _PushForward(channel)
    pairs_all = _givens_pairs(d)

    trace, best = [], (-np.inf, None, None)
    for restart in range(cfg.restarts):
        rng = cfg.seed.child(restart).generator()
        vecs = np.stack([pure_from(rng, d) for _ in range(k)], axis=1)
        if restart == 0:
            vecs[:, : min(d, k)] = np.eye(d, dtype=complex)[:, : min(d, k)]
        outputs = push.images(vecs)[1]
        weights = _refine(outputs, cfg.tolerance)
        chi = _chi(weights, outputs)
        step, sweeps = cfg.initial_step, 0
        while d > 1 and step >= cfg.min_step and sweeps < cfg.max_iterations:
            sweeps += 1
            improved = False
            out_entropy = entropies(outputs)
            for j in np.flatnonzero(weights > 0):
                cands = _moves_on_vector(vecs[:, j], pairs_all, step)
                cand_out = push.images(cands.T)[1]
                avg = np.einsum("j,jab->ab", weights, outputs)
                avg_c = avg[None] + weights[j] * (cand_out - outputs[j][None])
                cand_entropy = entropies(cand_out)
                mean_c = weights @ out_entropy + weights[j] * (cand_entropy - out_entropy[j])
                scores = entropies(avg_c) - mean_c
                m = int(np.argmax(scores))
                if scores[m] > chi + _sufficient_decrease(step, cfg):
                    vecs[:, j], outputs[j] = cands[m], cand_out[m]
                    out_entropy[j] = cand_entropy[m]
                    chi = float(scores[m])
                    improved = True
            new_w = _refine(outputs, cfg.tolerance)
            new_chi = _chi(new_w, outputs)
            if new_chi > chi + 1e-15:
                weights, chi, improved = new_w, new_chi, True
            if not improved:
                step *= cfg.shrink
        trace.append(chi)
        if chi > best[0]:
            best = (chi, vecs.copy(), weights.copy())
    _, vecs, weights = best
    states = np.einsum("aj,bj->jab", vecs, vecs.conj())
    witness = Ensemble(weights, states)
    return Estimate(holevo_chi(witness, channel).chi, "lower", witness, trace)
