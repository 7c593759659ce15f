"""Concrete channels: phase damping, pinching, Weyl, q-c, erasure, depolarizing."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, from_kraus, identity_channel
from .linalg import ValidationError, check_probability, hermitian_eig, is_unitary, projector

#: Kraus operators scaled by a zero weight are dropped
ZERO_KRAUS = 1e-15


def _omega_diag(d: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(d) / d)


def cyclic_unitary(basis) -> np.ndarray:
    """``V = sum_s exp(2 pi i s/d) |e_s><e_s|`` for the columns ``e_s`` of ``basis``."""
    basis = np.asarray(basis, dtype=complex)
    return (basis * _omega_diag(basis.shape[0])) @ basis.conj().T


def _check_basis(basis) -> np.ndarray:
    basis = np.asarray(basis, dtype=complex)
    if not is_unitary(basis):
        raise ValidationError("basis columns are not orthonormal")
    return basis


def is_unbiased(psi, basis, tol: float = 1e-10) -> tuple[bool, float]:
    """Whether the pure state ``psi`` has ``|<psi|e_s>|^2 = 1/d`` for every basis vector.

    ``psi`` may be a vector or a rank-one density matrix.  Returns the
    verdict and the largest deviation from ``1/d``.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim == 2:
        if abs(np.trace(psi @ psi).real - 1) > 1e-10:
            raise ValidationError("state is not pure")
        w, v = np.linalg.eigh((psi + psi.conj().T) / 2)
        psi = v[:, -1]
    basis = _check_basis(basis)
    overlaps = np.abs(basis.conj().T @ (psi / np.linalg.norm(psi))) ** 2
    deviation = float(np.max(np.abs(overlaps - 1 / len(psi))))
    return deviation <= tol, deviation


# -- phase damping ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PhaseDampingSpec:
    basis: np.ndarray
    spectrum: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "basis", _check_basis(self.basis))
        lam = check_probability(self.spectrum, tol=1e-12)
        if lam.size != self.basis.shape[0]:
            raise ValidationError("spectrum length must equal the dimension")
        object.__setattr__(self, "spectrum", lam)

    @property
    def d(self) -> int:
        return self.basis.shape[0]


def build_phase_damping(spec: PhaseDampingSpec) -> KrausChannel:
    """``rho -> sum_j lambda_j V^j rho V^{*j}`` with Kraus operators ``sqrt(lambda_j) V^j``."""
    v = cyclic_unitary(spec.basis)
    ops, power = [], np.eye(spec.d, dtype=complex)
    for lam in spec.spectrum:
        ops.append(np.sqrt(lam) * power)
        power = v @ power
    return from_kraus(ops, "phase_damping", _pd_params(spec), drop_tol=ZERO_KRAUS)


def _pd_params(spec: PhaseDampingSpec) -> dict:
    return {
        "d": spec.d,
        "spectrum": spec.spectrum.tolist(),
        "basis": np.stack([spec.basis.real, spec.basis.imag], axis=-1).tolist(),
    }


def conditional_expectation(basis) -> KrausChannel:
    """Projection onto the algebra fixed by ``V``: ``(1/d) sum_j V^j rho V^{*j}``.

    Equals the pinching ``sum_s |e_s><e_s| rho |e_s><e_s|``.
    """
    basis = _check_basis(basis)
    d = basis.shape[0]
    spec = PhaseDampingSpec(basis, np.full(d, 1 / d))
    ch = build_phase_damping(spec)
    return KrausChannel(ch.kraus, "conditional_expectation", ch.params)


# -- Weyl ---------------------------------------------------------------------

def weyl_operator(d: int, m: int, n: int) -> np.ndarray:
    """``U_{m,n} = sum_k exp(2 pi i k n/d) |k+m mod d><k|``."""
    if not (0 <= m < d and 0 <= n < d):
        raise ValidationError(f"Weyl indices ({m}, {n}) out of range for d={d}")
    k = np.arange(d)
    u = np.zeros((d, d), dtype=complex)
    u[(k + m) % d, k] = np.exp(2j * np.pi * k * n / d)
    return u


@dataclass(frozen=True, eq=False)
class WeylSpec:
    d: int
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (self.d, self.d):
            raise ValidationError(f"Weyl weights must be {self.d}x{self.d}")
        check_probability(w.ravel(), tol=1e-12)
        object.__setattr__(self, "weights", w)


def build_weyl(spec: WeylSpec) -> KrausChannel:
    d = spec.d
    ops = [
        np.sqrt(spec.weights[m, n]) * weyl_operator(d, m, n)
        for m in range(d)
        for n in range(d)
    ]
    return from_kraus(ops, "weyl", {"d": d, "weights": spec.weights.tolist()}, drop_tol=ZERO_KRAUS)


@dataclass(frozen=True, eq=False)
class RestrictedWeylSpec:
    """Shift weights ``r_0..r_{d-1}`` and phase weights ``p_1..p_{d-1}``.

    Constraint: ``d * sum(p) + sum(r) = 1``.
    """

    d: int
    r: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        p = np.asarray(self.p, dtype=float)
        if r.shape != (self.d,) or p.shape != (self.d - 1,):
            raise ValidationError("need d shift weights r and d-1 phase weights p")
        if np.any(r < 0) or np.any(r > 1) or np.any(p < 0) or np.any(p > 1):
            raise ValidationError("restricted Weyl weights must lie in [0, 1]")
        total = self.d * p.sum() + r.sum()
        if abs(total - 1) > 1e-10:
            raise ValidationError(f"d*sum(p) + sum(r) = {total!r}, expected 1")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "p", p)

    def weyl_weights(self) -> np.ndarray:
        w = np.empty((self.d, self.d))
        w[:, 0] = self.r
        w[:, 1:] = self.p[None, :]
        return w

    @property
    def lambdas(self) -> np.ndarray:
        return np.concatenate([[1 - self.d * self.p.sum()], self.d * self.p])

    @property
    def shift_weights(self) -> np.ndarray:
        """``c_m = r_m / (d (1 - d sum p))``."""
        return self.r / (self.d * (1 - self.d * self.p.sum()))


def build_restricted_weyl(spec: RestrictedWeylSpec) -> KrausChannel:
    ch = build_weyl(WeylSpec(spec.d, spec.weyl_weights()))
    params = {"d": spec.d, "r": spec.r.tolist(), "p": spec.p.tolist()}
    return KrausChannel(ch.kraus, "restricted_weyl", params)


# -- q-c, erasure, depolarizing, noiseless -----------------------------------------

@dataclass(frozen=True, eq=False)
class QcSpec:
    povm: list
    out_basis: np.ndarray | None = None

    def __post_init__(self):
        povm = [np.asarray(m, dtype=complex) for m in self.povm]
        d = povm[0].shape[0]
        for m in povm:
            if np.max(np.abs(m - m.conj().T)) > 1e-10 or np.linalg.eigvalsh((m + m.conj().T) / 2)[0] < -1e-10:
                raise ValidationError("POVM element is not positive semidefinite")
        if np.max(np.abs(sum(povm) - np.eye(d))) > 1e-10:
            raise ValidationError("POVM does not resolve the identity")
        out = np.eye(len(povm), dtype=complex) if self.out_basis is None else _check_basis(self.out_basis)
        if out.shape[0] != len(povm):
            raise ValidationError("output basis size must equal the number of POVM elements")
        object.__setattr__(self, "povm", povm)
        object.__setattr__(self, "out_basis", out)

    @property
    def d(self) -> int:
        return self.povm[0].shape[0]


def build_qc(spec: QcSpec) -> KrausChannel:
    """Measure-and-prepare ``rho -> sum_j Tr(M_j rho) |e_j><e_j|``.

    Kraus operators ``sqrt(mu_jk) |e_j><psi_jk|`` from ``M_j = sum_k mu_jk |psi_jk><psi_jk|``.
    """
    ops = []
    for j, m in enumerate(spec.povm):
        mu, psi = hermitian_eig(m)
        for mu_k, psi_k in zip(np.clip(mu, 0, None), psi.T):
            ops.append(np.sqrt(mu_k) * np.outer(spec.out_basis[:, j], psi_k.conj()))
    params = {
        "d": spec.d,
        "povm": [np.stack([m.real, m.imag], axis=-1).tolist() for m in spec.povm],
        "out_basis": np.stack([spec.out_basis.real, spec.out_basis.imag], axis=-1).tolist(),
    }
    return from_kraus(ops, "qc", params, drop_tol=ZERO_KRAUS)


@dataclass(frozen=True)
class ErasureSpec:
    d: int
    eps: float

    def __post_init__(self):
        if not 0 <= self.eps <= 1:
            raise ValidationError(f"erasure probability must lie in [0, 1], got {self.eps}")


def build_erasure(spec: ErasureSpec) -> KrausChannel:
    """``rho -> eps |w><w| + (1-eps) rho`` into ``d+1`` dimensions; flag ``|w>`` is the last basis vector."""
    d = spec.d
    embed = np.eye(d + 1, d, dtype=complex)
    ops = [np.sqrt(1 - spec.eps) * embed]
    for j in range(d):
        a = np.zeros((d + 1, d), dtype=complex)
        a[d, j] = np.sqrt(spec.eps)
        ops.append(a)
    return from_kraus(ops, "erasure", {"d": d, "eps": spec.eps}, drop_tol=ZERO_KRAUS)


def erasure_flag(d: int) -> np.ndarray:
    return projector(np.eye(d + 1)[d])


def embed_in_erasure_space(rho) -> np.ndarray:
    d = rho.shape[0]
    out = np.zeros((d + 1, d + 1), dtype=complex)
    out[:d, :d] = rho
    return out


@dataclass(frozen=True)
class DepolarizingSpec:
    d: int
    p: float

    def __post_init__(self):
        if not 0 <= self.p <= self.p_max + 1e-12:
            raise ValidationError(f"p={self.p} outside the CP range [0, {self.p_max}]")

    @property
    def p_max(self) -> float:
        return self.d**2 / (self.d**2 - 1)


def depolarizing_weyl_weights(spec: DepolarizingSpec) -> np.ndarray:
    """Weyl-twirl weights: ``1 - p + p/d^2`` on the identity, ``p/d^2`` elsewhere."""
    d, p = spec.d, spec.p
    w = np.full((d, d), p / d**2)
    w[0, 0] = 1 - p + p / d**2
    return np.clip(w, 0.0, None)


def build_depolarizing(spec: DepolarizingSpec) -> KrausChannel:
    ch = build_weyl(WeylSpec(spec.d, depolarizing_weyl_weights(spec)))
    return KrausChannel(ch.kraus, "depolarizing", {"d": spec.d, "p": spec.p})


def build_noiseless(d: int) -> KrausChannel:
    return identity_channel(d)


def build_from_parameters(kind: str, params: dict) -> KrausChannel:
    """Inverse of the ``params`` recorded by each constructor."""
    def complex_array(raw):
        raw = np.asarray(raw, dtype=float)
        return raw[..., 0] + 1j * raw[..., 1]

    if kind == "noiseless":
        return build_noiseless(params["d"])
    if kind == "depolarizing":
        return build_depolarizing(DepolarizingSpec(params["d"], params["p"]))
    if kind == "erasure":
        return build_erasure(ErasureSpec(params["d"], params["eps"]))
    if kind == "weyl":
        return build_weyl(WeylSpec(params["d"], params["weights"]))
    if kind == "restricted_weyl":
        return build_restricted_weyl(RestrictedWeylSpec(params["d"], params["r"], params["p"]))
    if kind == "phase_damping":
        return build_phase_damping(PhaseDampingSpec(complex_array(params["basis"]), params["spectrum"]))
    if kind == "qc":
        out = params.get("out_basis")
        return build_qc(QcSpec([complex_array(m) for m in params["povm"]], None if out is None else complex_array(out)))
    raise ValidationError(f"cannot rebuild channel of kind {kind!r} without explicit Kraus operators")
