"""Random inputs for the verification suites.

Two families of restricted bipartite states are kept apart on purpose:

* ``unbiased_hull_state`` -- the ``H`` marginal is a convex combination of
  pure states unbiased to a given basis;
* ``diagonal_marginal_state`` -- the ``H`` marginal is diagonal in the
  computational basis.
"""
from __future__ import annotations

import numpy as np

from ..channels import KrausChannel, random_channel_from
from ..linalg import (
    density_from,
    haar_unitary_from,
    kron,
    maximally_entangled,
    projector,
    unbiased_vector_from,
)
from ..zoo import RestrictedWeylSpec


def random_spectrum(rng: np.random.Generator, d: int) -> np.ndarray:
    return rng.dirichlet(np.ones(d))


def random_density(rng: np.random.Generator, d: int, full_rank: bool = True) -> np.ndarray:
    rank = d if full_rank else int(rng.integers(1, d + 1))
    return density_from(rng, d, rank)


def random_channel(rng: np.random.Generator, d: int) -> KrausChannel:
    """Haar isometry into an environment of dimension ``d^2``, sliced into Kraus operators."""
    return random_channel_from(rng, d)


def hull_mixture_state(rng: np.random.Generator, basis: np.ndarray, d_k: int) -> np.ndarray:
    """``sum_i q_i psi_i (x) tau_i`` with every ``psi_i`` unbiased to ``basis``."""
    d = basis.shape[0]
    n = int(rng.integers(1, d * d_k + 1))
    q = rng.dirichlet(np.ones(n))
    terms = [
        qi * kron(projector(unbiased_vector_from(rng, basis)), random_density(rng, d_k, full_rank=False))
        for qi in q
    ]
    return sum(terms)


def rotated_entangled_state(rng: np.random.Generator, d: int) -> np.ndarray:
    """``(U (x) W) |Omega><Omega| (U (x) W)*``; its marginal is ``I/d``, inside every hull."""
    u = kron(haar_unitary_from(rng, d), haar_unitary_from(rng, d))
    return u @ maximally_entangled(d) @ u.conj().T


def unbiased_hull_state(rng: np.random.Generator, basis: np.ndarray, d_k: int, variant: int = 0) -> np.ndarray:
    """Variant 0: product mixture; variant 1: rotated maximally entangled state (needs ``d_k == d``)."""
    if variant == 1 and d_k == basis.shape[0]:
        return rotated_entangled_state(rng, d_k)
    return hull_mixture_state(rng, basis, d_k)


def pinch_h(rho: np.ndarray, d: int, d_k: int) -> np.ndarray:
    """``(E_diag (x) Id)(rho)``: drop blocks off the diagonal of the ``H`` index."""
    blocks = rho.reshape(d, d_k, d, d_k)
    out = np.zeros_like(blocks)
    for i in range(d):
        out[i, :, i, :] = blocks[i, :, i, :]
    return out.reshape(d * d_k, d * d_k)


def diagonal_marginal_state(rng: np.random.Generator, d: int, d_k: int) -> np.ndarray:
    return pinch_h(random_density(rng, d * d_k, full_rank=False), d, d_k)


def random_restricted_weyl(rng: np.random.Generator, d: int, min_lambda0: float = 0.0) -> RestrictedWeylSpec:
    """Uniform draw on the constraint ``d sum(p) + sum(r) = 1``, optionally with ``1 - d sum(p) > min_lambda0``."""
    while True:
        x = rng.dirichlet(np.ones(2 * d - 1))
        r, p = x[:d], x[d:] / d
        if 1 - d * p.sum() > min_lambda0:
            return RestrictedWeylSpec(d, r, p)
