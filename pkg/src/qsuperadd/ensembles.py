"""Ensembles of states and the HJW parameterization of decompositions of a fixed state."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import ValidationError, projector

#: ensemble members lighter than this are dropped
MIN_WEIGHT = 1e-14
#: eigenvalues below this do not count towards the rank
RANK_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Weights ``pi_j`` paired with states ``rho_j`` (stored as an ``(n, d, d)`` stack)."""

    weights: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        s = np.asarray(self.states, dtype=complex)
        if s.ndim == 2:
            s = s[None]
        if len(w) != len(s):
            raise ValidationError("weights and states differ in length")
        keep = w >= MIN_WEIGHT
        if not keep.any():
            raise ValidationError("ensemble has no member with positive weight")
        object.__setattr__(self, "weights", w[keep])
        object.__setattr__(self, "states", s[keep])

    def __len__(self):
        return len(self.weights)

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    def average(self) -> np.ndarray:
        return np.einsum("j,jab->ab", self.weights, self.states)

    @classmethod
    def from_vectors(cls, vectors) -> "Ensemble":
        """Build from unnormalized vectors: ``pi_j = |v_j|^2`` and ``rho_j = v_j v_j* / pi_j``.

        ``vectors`` has one vector per column.
        """
        vectors = np.asarray(vectors, dtype=complex)
        norms = np.sum(np.abs(vectors) ** 2, axis=0)
        keep = norms >= MIN_WEIGHT
        states = [projector(v / np.sqrt(n)) for v, n in zip(vectors.T[keep], norms[keep])]
        if not states:
            raise ValidationError("all vectors vanish")
        return cls(norms[keep], np.stack(states))


def scaled_eigenvectors(rho) -> np.ndarray:
    """Columns ``sqrt(w_i) v_i`` over the support of ``rho`` (eigenvalues > 1e-14), largest first."""
    rho = np.asarray(rho, dtype=complex)
    w, v = np.linalg.eigh((rho + rho.conj().T) / 2)
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    keep = w > RANK_TOL
    return v[:, keep] * np.sqrt(w[keep])


def hjw_vectors(scaled, mixer) -> np.ndarray:
    """``psi_j = sum_i M_ji sqrt(w_i) v_i`` returned as columns."""
    return scaled @ np.asarray(mixer).T


def hjw_ensemble(rho, mixer) -> Ensemble:
    """Pure-state ensemble averaging to ``rho``, selected by a ``k x r`` mixer.

    ``r`` is the rank of ``rho`` and the mixer's columns must be
    orthonormal (``M* M = I_r``); member ``j`` is built from row ``j``.
    """
    scaled = scaled_eigenvectors(rho)
    mixer = np.asarray(mixer, dtype=complex)
    r = scaled.shape[1]
    if mixer.ndim != 2 or mixer.shape[1] != r or mixer.shape[0] < r:
        raise ValidationError(f"mixer must be k x {r} with k >= {r}, got shape {mixer.shape}")
    if np.max(np.abs(mixer.conj().T @ mixer - np.eye(r))) > 1e-10:
        raise ValidationError("mixer columns are not orthonormal")
    return Ensemble.from_vectors(hjw_vectors(scaled, mixer))
