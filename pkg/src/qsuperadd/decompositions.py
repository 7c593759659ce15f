"""Mixtures of conjugated phase-damping channels.

Two identities are implemented as structured mixtures so that callers can
reach individual components:

* restricted Weyl channel at prime ``d`` as ``sum_k sum_m c_m U_{m,0} Psi_k U_{m,0}*``;
* depolarizing channel as a combination of ``2 d^2`` phase dampings built
  from a family of bases unbiased to a reference basis, and their
  conjugates by powers of the reference clock ``U``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import KrausChannel, choi, choi_distance
from .linalg import ValidationError
from .zoo import (
    DepolarizingSpec,
    PhaseDampingSpec,
    RestrictedWeylSpec,
    build_depolarizing,
    build_phase_damping,
    build_restricted_weyl,
    conditional_expectation,
    cyclic_unitary,
    weyl_operator,
)


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n**0.5) + 1))


@dataclass(frozen=True, eq=False)
class MixtureTerm:
    """``weight * (conjugator . component(rho) . conjugator*)``."""

    weight: float
    conjugator: np.ndarray
    component: KrausChannel
    spectrum: np.ndarray
    label: tuple = ()

    def channel(self) -> KrausChannel:
        ops = np.einsum("ok,akl->aol", self.conjugator, self.component.kraus)
        return KrausChannel(ops, "conjugated_" + self.component.kind)

    def choi(self) -> np.ndarray:
        return choi(self.channel())


@dataclass(frozen=True, eq=False)
class Mixture:
    terms: list
    meta: dict = field(default_factory=dict)

    @property
    def total_weight(self) -> float:
        return float(sum(t.weight for t in self.terms))

    @property
    def convex(self) -> bool:
        return all(t.weight >= -1e-15 for t in self.terms)

    def choi(self) -> np.ndarray:
        """Weighted sum of component Choi matrices (an affine combination if a weight is negative)."""
        return sum(t.weight * t.choi() for t in self.terms)

    def as_channel(self) -> KrausChannel:
        if not self.convex:
            raise ValidationError("mixture has negative weights and is not a convex combination of channels")
        ops = [np.sqrt(t.weight) * a for t in self.terms if t.weight > 0 for a in t.channel().kraus]
        return KrausChannel(np.stack(ops), "mixture")

    def residual(self, target: KrausChannel) -> float:
        return choi_distance(self.choi(), choi(target))


# -- restricted Weyl ----------------------------------------------------------

def decompose_restricted_weyl(spec: RestrictedWeylSpec) -> Mixture:
    """Shift-conjugated phase dampings ``Psi_k(rho) = sum_n lambda_n U_{nk,n} rho U_{nk,n}*``.

    Needs ``d`` prime so that ``{U_{nk,n}}`` walks every shift, and
    ``1 - d sum(p) > 1e-12`` for the shift weights to be defined.
    """
    d = spec.d
    if not is_prime(d):
        raise ValidationError(f"decomposition needs a prime dimension, got d={d}")
    lam0 = 1 - d * spec.p.sum()
    if lam0 <= 1e-12:
        raise ValidationError("degenerate decomposition: 1 - d*sum(p) must be positive")
    lam = spec.lambdas
    c = spec.shift_weights
    terms = []
    for k in range(d):
        ops = [np.sqrt(lam[n]) * weyl_operator(d, (n * k) % d, n) for n in range(d)]
        psi_k = KrausChannel(np.stack(ops), "phase_damping", {"d": d, "k": k, "spectrum": lam.tolist()})
        for m in range(d):
            terms.append(MixtureTerm(float(c[m]), weyl_operator(d, m, 0), psi_k, lam, (k, m)))
    return Mixture(terms, {"target": build_restricted_weyl(spec)})


# -- unbiased basis family ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class MubFamily:
    """Reference basis ``f`` and ``2 d^2`` bases ``e^k`` each unbiased to it.

    ``bases[k-1][:, j]`` is ``|e_j^k>`` for ``k = 1..2d^2``.
    """

    reference: np.ndarray
    bases: np.ndarray
    clock: np.ndarray
    generators: np.ndarray

    @property
    def d(self) -> int:
        return self.reference.shape[0]

    def expectation(self, k: int) -> KrausChannel:
        """Conditional expectation ``E_k`` onto the algebra fixed by ``V_k`` (``k`` is 1-based)."""
        return conditional_expectation(self.bases[k - 1])

    def orthonormality_residuals(self) -> np.ndarray:
        eye = np.eye(self.d)
        return np.array([np.max(np.abs(b.conj().T @ b - eye)) for b in self.bases])

    def overlap_residuals(self) -> np.ndarray:
        """``max_{j,s} | |<e_j^k|f_s>|^2 - 1/d |`` for each ``k``."""
        overlaps = np.abs(np.einsum("kaj,as->kjs", self.bases.conj(), self.reference)) ** 2
        return np.max(np.abs(overlaps - 1 / self.d), axis=(1, 2))


def king_bases(d: int, reference=None) -> MubFamily:
    """Bases ``|e_j^k> = d^{-1/2} sum_s exp(2 pi i s^2 k / 2d^2) exp(2 pi i j s / d) |f_s>``.

    The ``1/sqrt(d)`` factor and the ``j s`` Fourier phase make each ``e^k``
    an orthonormal basis; a phase ``exp(2 pi i j/d)`` independent of ``s``
    would make all ``d`` vectors parallel.
    """
    if d < 2:
        raise ValidationError("need d >= 2")
    f = np.eye(d, dtype=complex) if reference is None else np.asarray(reference, dtype=complex)
    s = np.arange(d)
    fourier = np.exp(2j * np.pi * np.outer(s, s) / d) / np.sqrt(d)
    bases = []
    for k in range(1, 2 * d * d + 1):
        chirp = np.exp(2j * np.pi * s**2 * k / (2 * d * d))
        bases.append(f @ (chirp[:, None] * fourier))
    bases = np.stack(bases)
    generators = np.stack([cyclic_unitary(b) for b in bases])
    return MubFamily(f, bases, cyclic_unitary(f), generators)


# -- depolarizing -------------------------------------------------------------

def depolarizing_mixture_weights(d: int, p: float) -> tuple[float, float]:
    """Per-term weights ``((1-p)/N / 2d, p/N / 2d^3)`` with ``N = 1 + (d-1)(1-p)``."""
    n = 1 + (d - 1) * (1 - p)
    return (1 - p) / n / (2 * d), p / n / (2 * d**3)


def decompose_depolarizing(spec: DepolarizingSpec, family: MubFamily | None = None, literal: bool = False) -> Mixture:
    """Depolarizing channel as phase dampings ``Psi_k`` and their ``U^j`` conjugates.

    ``Psi_k`` has spectrum ``(1 - (d-1)p/d, p/d, ..., p/d)`` in the basis
    ``e^k``.  The clock powers run over ``j = 0..d-1``; with
    ``literal=True`` they run over ``j = 1..d-1`` instead, a variant whose
    weights sum to ``1 - p/(N d)`` rather than 1 and which therefore does
    not reproduce the channel (its residual is reported, not corrected).

    For ``p > 1`` the first group of weights is negative: the identity
    still holds as an affine combination and ``Mixture.convex`` is False.
    """
    d, p = spec.d, spec.p
    family = family or king_bases(d)
    lam = np.full(d, p / d)
    lam[0] = 1 - (d - 1) * p / d
    w_direct, w_clock = depolarizing_mixture_weights(d, p)
    components = [
        build_phase_damping(PhaseDampingSpec(basis, lam)) for basis in family.bases
    ]
    eye = np.eye(d, dtype=complex)
    terms = [MixtureTerm(w_direct, eye, psi, lam, ("direct", k + 1)) for k, psi in enumerate(components)]
    clock_powers = range(1, d) if literal else range(d)
    for j in clock_powers:
        u_j = np.linalg.matrix_power(family.clock, j)
        terms.extend(
            MixtureTerm(w_clock, u_j, psi, lam, ("clock", j, k + 1)) for k, psi in enumerate(components)
        )
    return Mixture(terms, {"target": build_depolarizing(spec), "literal": literal})
