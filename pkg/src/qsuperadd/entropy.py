"""Entropies in bits: Shannon, von Neumann, Umegaki relative entropy, Holevo chi."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import STATE_TOL, ValidationError, check_probability, clamp_eigenvalues, hermitian_eig

#: eigenvalues at or below this are treated as outside the support
SUPPORT_TOL = 1e-10


def _xlogx(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    pos = p > 0
    out[pos] = p[pos] * np.log2(p[pos])
    return out


def shannon_entropy(p) -> float:
    """``-sum p log2 p`` with ``0 log 0 = 0``.

    >>> round(shannon_entropy([0.75, 0.25]), 7)
    0.8112781
    """
    p = check_probability(p, tol=1e-9)
    return max(float(-_xlogx(p).sum()), 0.0)


def binary_entropy(x: float) -> float:
    return shannon_entropy([x, 1 - x])


def spectrum(rho, tol: float = STATE_TOL) -> np.ndarray:
    """Clamped eigenvalues of a (near) positive semidefinite matrix, ascending."""
    w, _ = hermitian_eig(rho)
    return clamp_eigenvalues(w, tol)


def von_neumann_entropy(rho) -> float:
    """``S(rho) = -Tr rho log2 rho``, computed from the clamped spectrum."""
    w = spectrum(rho)
    return max(float(-_xlogx(w).sum()), 0.0)


def entropies(rhos: np.ndarray) -> np.ndarray:
    """Batched von Neumann entropy of a stack ``(n, d, d)`` of PSD matrices.

    No validation; the trace is not renormalized.
    """
    w = np.linalg.eigvalsh(rhos)
    w = np.clip(w, 0.0, None)
    return -_xlogx(w).sum(axis=-1)


def relative_entropy(sigma, rho) -> float:
    """Umegaki relative entropy ``S(sigma || rho) = Tr sigma (log2 sigma - log2 rho)``.

    Evaluated in the eigenbasis of ``rho``.  If ``sigma`` puts more than
    ``SUPPORT_TOL`` weight on the kernel of ``rho`` the result is
    ``math.inf``.
    """
    sigma = np.asarray(sigma, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    if sigma.shape != rho.shape:
        raise ValidationError(f"dimension mismatch: {sigma.shape} vs {rho.shape}")
    w_rho, v_rho = hermitian_eig(rho)
    w_rho = clamp_eigenvalues(w_rho)
    rotated = np.real(np.diagonal(v_rho.conj().T @ sigma @ v_rho))
    support = w_rho > SUPPORT_TOL
    if rotated[~support].sum() > SUPPORT_TOL:
        return math.inf
    cross = float(np.dot(rotated[support], np.log2(w_rho[support])))
    value = float(_xlogx(spectrum(sigma)).sum()) - cross
    # rounding noise only; larger negatives are left visible
    return 0.0 if -1e-9 < value < 0 else value


@dataclass(frozen=True)
class HolevoQuantity:
    """Holevo chi of an ensemble pushed through a channel, both evaluation routes."""

    chi: float
    chi_relative: float
    ensemble: object
    channel: object

    @property
    def residual(self) -> float:
        return abs(self.chi - self.chi_relative)


def holevo_chi(ensemble, channel) -> HolevoQuantity:
    """``chi = S(Phi(avg)) - sum pi_j S(Phi(x_j))``, also as ``sum pi_j S(Phi(x_j) || Phi(avg))``."""
    weights = np.asarray(ensemble.weights, dtype=float)
    if weights.size == 0:
        raise ValidationError("empty ensemble")
    outputs = [channel(x) for x in ensemble.states]
    avg_out = sum(w * y for w, y in zip(weights, outputs))
    chi = von_neumann_entropy(avg_out) - sum(w * von_neumann_entropy(y) for w, y in zip(weights, outputs))
    chi_rel = sum(w * relative_entropy(y, avg_out) for w, y in zip(weights, outputs) if w > 0)
    return HolevoQuantity(max(chi, 0.0), chi_rel, ensemble, channel)
