"""Kraus-form channels and their algebra: apply, tensor, compose, Choi, CPTP checks.

Choi convention: unnormalized, input index first,
``C = sum_ij |i><j| (x) Phi(|i><j|)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .linalg import ValidationError

COMPLETENESS_TOL = 1e-10
CHOI_PSD_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Completely positive trace preserving map ``rho -> sum_i A_i rho A_i*``.

    ``kraus`` is stored as a stacked array of shape ``(n, dout, din)``.
    ``kind`` and ``params`` record how the channel was built and travel
    with it through serialization.
    """

    kraus: np.ndarray
    kind: str = "kraus"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        k = np.asarray(self.kraus, dtype=complex)
        if k.ndim == 2:
            k = k[None]
        if k.ndim != 3 or k.shape[0] == 0:
            raise ValidationError(f"Kraus operators must stack to (n, dout, din), got {k.shape}")
        object.__setattr__(self, "kraus", k)

    @property
    def din(self) -> int:
        return self.kraus.shape[2]

    @property
    def dout(self) -> int:
        return self.kraus.shape[1]

    def __call__(self, rho) -> np.ndarray:
        return channel_apply(self, rho)

    def adjoint(self, x) -> np.ndarray:
        """Heisenberg-picture map ``X -> sum A_i* X A_i``."""
        return np.einsum("aoi,op,apj->ij", self.kraus.conj(), x, self.kraus)

    def __repr__(self):
        return f"KrausChannel(kind={self.kind!r}, din={self.din}, dout={self.dout}, n_kraus={len(self.kraus)})"


def from_kraus(ops, kind: str = "kraus", params: dict | None = None, drop_tol: float = 0.0) -> KrausChannel:
    """Stack ``ops`` into a channel, discarding operators with Frobenius norm <= ``drop_tol``."""
    ops = [np.asarray(a, dtype=complex) for a in ops]
    kept = [a for a in ops if np.linalg.norm(a) > drop_tol] or ops[:1]
    return KrausChannel(np.stack(kept), kind, dict(params or {}))


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel(np.eye(d, dtype=complex)[None], "noiseless", {"d": d})


def unitary_channel(u) -> KrausChannel:
    u = np.asarray(u, dtype=complex)
    return KrausChannel(u[None], "unitary")


def channel_apply(channel: KrausChannel, rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[-1] != channel.din or rho.shape[-2] != channel.din:
        raise ValidationError(f"input of size {rho.shape[-1]} does not match channel din={channel.din}")
    k = channel.kraus
    return np.einsum("aoi,...ij,apj->...op", k, rho, k.conj())


def channel_tensor(phi: KrausChannel, omega: KrausChannel) -> KrausChannel:
    """``Phi (x) Omega`` with Kraus set ``{A_i (x) B_j}``."""
    a, b = phi.kraus, omega.kraus
    ops = np.einsum("aoi,bpj->abopij", a, b).reshape(
        len(a) * len(b), phi.dout * omega.dout, phi.din * omega.din
    )
    return KrausChannel(ops, f"{phi.kind}*{omega.kind}")


def channel_compose(phi: KrausChannel, psi: KrausChannel) -> KrausChannel:
    """``Phi o Psi`` (apply ``psi`` first)."""
    if psi.dout != phi.din:
        raise ValidationError(f"cannot compose: inner dout={psi.dout}, outer din={phi.din}")
    ops = np.einsum("aok,bki->aboi", phi.kraus, psi.kraus).reshape(-1, phi.dout, psi.din)
    return KrausChannel(ops, f"{phi.kind}o{psi.kind}")


def choi(channel: KrausChannel) -> np.ndarray:
    k = channel.kraus
    c = np.einsum("aoi,apj->iojp", k, k.conj())
    n = channel.din * channel.dout
    return c.reshape(n, n)


def choi_of_map(linear_map: Callable[[np.ndarray], np.ndarray], din: int) -> np.ndarray:
    """Choi matrix of an arbitrary linear map given as a Python callable."""
    blocks = []
    for i in range(din):
        row = []
        for j in range(din):
            e_ij = np.zeros((din, din), dtype=complex)
            e_ij[i, j] = 1
            row.append(np.asarray(linear_map(e_ij), dtype=complex))
        blocks.append(row)
    return np.block(blocks)


def from_choi(c, din: int, dout: int, kind: str = "choi", tol: float = CHOI_PSD_TOL) -> KrausChannel:
    """Kraus form from the eigen-decomposition of a PSD Choi matrix.

    Raises if the Choi matrix has an eigenvalue below ``-tol``.
    """
    c = np.asarray(c, dtype=complex)
    w, v = np.linalg.eigh((c + c.conj().T) / 2)
    if w[0] < -tol:
        raise ValidationError(f"Choi matrix is not PSD (min eigenvalue {w[0]:.3e})")
    keep = w > tol * max(1.0, w[-1])
    ops = [np.sqrt(wi) * v[:, a].reshape(din, dout).T for a, wi in zip(np.flatnonzero(keep), w[keep])]
    if not ops:
        ops = [np.zeros((dout, din), dtype=complex)]
    return KrausChannel(np.stack(ops), kind)


def choi_distance(a, b) -> float:
    """Max absolute entrywise difference between two Choi matrices (or channels)."""
    ca = choi(a) if isinstance(a, KrausChannel) else np.asarray(a)
    cb = choi(b) if isinstance(b, KrausChannel) else np.asarray(b)
    if ca.shape != cb.shape:
        raise ValidationError(f"Choi shapes differ: {ca.shape} vs {cb.shape}")
    return float(np.max(np.abs(ca - cb)))


@dataclass(frozen=True)
class CptpReport:
    completeness_residual: float
    choi_min_eigenvalue: float

    @property
    def trace_preserving(self) -> bool:
        return self.completeness_residual <= COMPLETENESS_TOL

    @property
    def completely_positive(self) -> bool:
        return self.choi_min_eigenvalue >= -CHOI_PSD_TOL

    def __bool__(self) -> bool:
        return self.trace_preserving and self.completely_positive


def is_cptp(channel: KrausChannel) -> CptpReport:
    k = channel.kraus
    gram = np.einsum("aoi,aoj->ij", k.conj(), k)
    residual = float(np.max(np.abs(gram - np.eye(channel.din))))
    min_eig = float(np.linalg.eigvalsh(choi(channel))[0])
    return CptpReport(residual, min_eig)


def is_unital(channel: KrausChannel, tol: float = 1e-12) -> bool:
    if channel.din != channel.dout:
        return False
    d = channel.din
    return bool(np.max(np.abs(channel(np.eye(d) / d) - np.eye(d) / d)) <= tol)


# -- serialization ------------------------------------------------------------

def _encode(a: np.ndarray) -> list:
    return np.stack([a.real, a.imag], axis=-1).tolist()


def to_dict(channel: KrausChannel, include_kraus: bool = True) -> dict:
    out = {
        "kind": channel.kind,
        "d": channel.din,
        "dout": channel.dout,
        "parameters": channel.params,
    }
    if include_kraus:
        out["kraus"] = _encode(channel.kraus)
    return out


def from_dict(data: dict) -> KrausChannel:
    """Rebuild a channel from :func:`to_dict` output.

    When explicit Kraus matrices are absent the channel is reconstructed from
    ``kind`` and ``parameters`` via the zoo constructors.
    """
    if data.get("kraus") is not None:
        raw = np.asarray(data["kraus"], dtype=float)
        return KrausChannel(raw[..., 0] + 1j * raw[..., 1], data.get("kind", "kraus"), data.get("parameters", {}))
    from . import zoo

    return zoo.build_from_parameters(data["kind"], data.get("parameters", {}))


def dumps(channel: KrausChannel, include_kraus: bool = True) -> str:
    return json.dumps(to_dict(channel, include_kraus))


def loads(text: str) -> KrausChannel:
    return from_dict(json.loads(text))


def random_channel_from(rng: np.random.Generator, d: int, n_kraus: int | None = None, dout: int | None = None) -> KrausChannel:
    """Random channel from a Haar isometry ``d -> dout * n_kraus`` sliced along the environment."""
    from .linalg import haar_unitary_from

    dout = d if dout is None else dout
    n_kraus = d * dout if n_kraus is None else n_kraus
    u = haar_unitary_from(rng, dout * n_kraus)
    iso = u[:, :d]
    ops = iso.reshape(n_kraus, dout, d)
    return KrausChannel(ops, "random", {"d": d, "n_kraus": n_kraus})
