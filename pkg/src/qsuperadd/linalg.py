"""Dense complex linear algebra for small Hilbert spaces.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Density
matrices, unitaries and probability vectors are validated by the ``check_*``
helpers rather than wrapped in classes.  Every stochastic routine takes an
explicit :class:`RngSeed`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

HERMITIAN_TOL = 1e-8
STATE_TOL = 1e-10
UNITARY_TOL = 1e-10
PROB_TOL = 1e-12


class ValidationError(ValueError):
    """Raised when an input violates a structural invariant."""


@dataclass(frozen=True)
class RngSeed:
    """Root seed plus stream id; sub-seeds depend only on these two numbers."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.stream < 0:
            raise ValidationError("stream id must be nonnegative")

    def child(self, stream: int) -> "RngSeed":
        """Derive an independent seed for sub-task ``stream``."""
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream, stream))
        return RngSeed(int(seq.generate_state(1, np.uint64)[0]))

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(self.stream,)))


def as_seed(seed) -> RngSeed:
    if isinstance(seed, RngSeed):
        return seed
    return RngSeed(int(seed))


def _square(a, name="matrix") -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {a.shape}")
    return a


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def hermitian_eig(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix.

    The input is symmetrized as ``(H + H*)/2`` before factorizing.

    Returns
    -------
    w : ndarray
        Real eigenvalues in ascending order.
    v : ndarray
        Unitary whose columns are the matching eigenvectors.

    Raises
    ------
    ValidationError
        If ``h`` is not square or deviates from Hermiticity by more than 1e-8.
    """
    h = _square(h)
    if h.size and np.max(np.abs(h - h.conj().T)) > HERMITIAN_TOL:
        raise ValidationError("matrix is not Hermitian within 1e-8")
    return np.linalg.eigh((h + h.conj().T) / 2)


def kron(*ops) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for op in ops:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def partial_trace(rho, dims: Sequence[int], keep: int) -> np.ndarray:
    """Trace out one factor of a bipartite operator on ``H (x) K``.

    ``dims`` is ``(dH, dK)``; ``keep`` is ``0`` to keep H and ``1`` to keep K.
    """
    rho = _square(rho, "rho")
    d_h, d_k = dims
    if rho.shape[0] != d_h * d_k:
        raise ValidationError(f"operator of size {rho.shape[0]} does not match dims {dims}")
    t = rho.reshape(d_h, d_k, d_h, d_k)
    if keep == 0:
        return np.einsum("ikjk->ij", t)
    if keep == 1:
        return np.einsum("kikj->ij", t)
    raise ValidationError("keep must be 0 (first factor) or 1 (second factor)")


def ptrace_h(rho, d_h: int, d_k: int) -> np.ndarray:
    """Return ``Tr_H rho``, the marginal on K."""
    return partial_trace(rho, (d_h, d_k), keep=1)


def ptrace_k(rho, d_h: int, d_k: int) -> np.ndarray:
    """Return ``Tr_K rho``, the marginal on H."""
    return partial_trace(rho, (d_h, d_k), keep=0)


def projector(vec) -> np.ndarray:
    vec = np.asarray(vec, dtype=complex)
    return np.outer(vec, vec.conj())


def basis_vector(d: int, i: int) -> np.ndarray:
    e = np.zeros(d, dtype=complex)
    e[i] = 1
    return e


def fourier_matrix(d: int) -> np.ndarray:
    """Unitary with columns ``(1/sqrt d) sum_s exp(2 pi i j s/d) |s>``."""
    s = np.arange(d)
    return np.exp(2j * np.pi * np.outer(s, s) / d) / np.sqrt(d)


def maximally_entangled(d: int) -> np.ndarray:
    """Projector onto ``(1/sqrt d) sum_s |s>|s>``."""
    v = np.eye(d, dtype=complex).reshape(d * d) / np.sqrt(d)
    return projector(v)


# -- validation ---------------------------------------------------------------

def is_hermitian(a, tol: float = STATE_TOL) -> bool:
    a = np.asarray(a)
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol)


def is_unitary(u, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) <= tol)


def is_density(rho, tol: float = STATE_TOL) -> bool:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if not is_hermitian(rho, tol) or abs(np.trace(rho) - 1) > tol:
        return False
    return bool(np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0] >= -tol)


def check_density(rho, tol: float = STATE_TOL, name: str = "rho") -> np.ndarray:
    rho = _square(rho, name)
    if not is_density(rho, tol):
        raise ValidationError(f"{name} is not a density matrix within {tol:g}")
    return rho


def check_probability(p, tol: float = PROB_TOL) -> np.ndarray:
    p = np.asarray(p, dtype=float).ravel()
    if p.size == 0:
        raise ValidationError("probability vector is empty")
    if np.any(p < 0):
        raise ValidationError("probability vector has a negative weight")
    if abs(p.sum() - 1) > tol:
        raise ValidationError(f"weights sum to {p.sum()!r}, not 1")
    return p


def clamp_eigenvalues(w: np.ndarray, tol: float = STATE_TOL) -> np.ndarray:
    """Zero out tiny negative eigenvalues; reject anything more negative than ``-tol``."""
    if w.size and w.min() < -tol:
        raise ValidationError(f"operator is not positive semidefinite (eigenvalue {w.min():.3e})")
    return np.clip(w, 0.0, None)


# -- sampling -----------------------------------------------------------------

def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def haar_unitary_from(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar unitary from QR of a complex Gaussian matrix, R diagonal made positive."""
    q, r = np.linalg.qr(_ginibre(rng, d, d))
    diag = np.diagonal(r)
    phases = np.where(np.abs(diag) > 0, diag / np.abs(diag), 1.0)
    return q * phases


def sample_haar_unitary(d: int, seed) -> np.ndarray:
    if d < 1:
        raise ValidationError("dimension must be positive")
    return haar_unitary_from(as_seed(seed).generator(), d)


def density_from(rng: np.random.Generator, d: int, rank: int | None = None) -> np.ndarray:
    rank = d if rank is None else rank
    if not 1 <= rank <= d:
        raise ValidationError(f"rank must lie in [1, {d}], got {rank}")
    g = _ginibre(rng, d, rank)
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def sample_density(d: int, rank: int, seed) -> np.ndarray:
    """Random state ``G G* / Tr(G G*)`` with ``G`` a ``d x rank`` complex Gaussian."""
    return density_from(as_seed(seed).generator(), d, rank)


def pure_from(rng: np.random.Generator, d: int) -> np.ndarray:
    v = _ginibre(rng, d, 1)[:, 0]
    return v / np.linalg.norm(v)


def unbiased_vector_from(rng: np.random.Generator, basis: np.ndarray) -> np.ndarray:
    basis = np.asarray(basis, dtype=complex)
    d = basis.shape[0]
    phases = np.exp(2j * np.pi * rng.random(d))
    return basis @ phases / np.sqrt(d)


def sample_unbiased_pure(basis, seed) -> np.ndarray:
    """Pure state with equal overlap ``1/d`` against every column of ``basis``."""
    basis = np.asarray(basis, dtype=complex)
    if not is_unitary(basis):
        raise ValidationError("basis columns are not orthonormal")
    return projector(unbiased_vector_from(as_seed(seed).generator(), basis))


def random_povm_from(rng: np.random.Generator, d: int, n_outcomes: int) -> list[np.ndarray]:
    """POVM ``{S^{-1/2} B_j S^{-1/2}}`` from random positive blocks ``B_j``, ``S = sum B_j``."""
    blocks = []
    for _ in range(n_outcomes):
        u = haar_unitary_from(rng, d)
        blocks.append(u @ np.diag(rng.random(d) + 1e-3) @ u.conj().T)
    w, v = np.linalg.eigh(sum(blocks))
    s_inv_half = v @ np.diag(w**-0.5) @ v.conj().T
    povm = [s_inv_half @ b @ s_inv_half for b in blocks]
    return [(m + m.conj().T) / 2 for m in povm]
