"""Truncated bosonic Fock-space linear algebra.

States and operators live in a truncated number basis (default 20 levels per
mode).  Subsystem ordering is row-major: the leftmost subsystem is the slowest
index, so ``|n_A n_B>`` sits at flat index ``n_A * dim_B + n_B``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.linalg import expm

from .errors import NumericalContractError, TruncationError

NORM_TOL = 1e-12
TRACE_TOL = 1e-10
HERM_TOL = 1e-12
EIG_FLOOR = -1e-10


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitude vector over a tensor-product basis."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        amps = _freeze(np.asarray(self.amplitudes, dtype=complex))
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)
        if amps.ndim != 1 or amps.size != int(np.prod(dims)):
            raise ValueError(f"amplitude length {amps.size} != product of dims {dims}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-9:
            raise NumericalContractError(f"state norm {norm} deviates from 1")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density(self) -> "DensityOperator":
        return DensityOperator(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)

    def to_json(self) -> str:
        return json.dumps(
            {
                "dims": list(self.dims),
                "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "StateVector":
        obj = json.loads(text)
        amps = np.array([complex(re, im) for re, im in obj["amplitudes"]])
        return cls(amps, tuple(obj["dims"]))


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, unit-trace operator over a truncated tensor-product basis."""

    matrix: np.ndarray
    dims: tuple[int, ...]
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        mat = _freeze(np.asarray(self.matrix, dtype=complex))
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)
        n = int(np.prod(dims))
        if mat.shape != (n, n):
            raise ValueError(f"matrix shape {mat.shape} != ({n}, {n}) from dims {dims}")
        if self.validate:
            herm = np.abs(mat - mat.conj().T).max()
            if herm > HERM_TOL:
                raise NumericalContractError(f"hermiticity violation {herm:.3e}")
            tr = mat.trace().real
            if abs(tr - 1.0) > TRACE_TOL:
                raise NumericalContractError(f"trace {tr} deviates from 1")
            lam = np.linalg.eigvalsh(mat)
            if lam.min() < EIG_FLOOR:
                raise NumericalContractError(f"negative eigenvalue {lam.min():.3e}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.einsum("ij,ji->", self.matrix, self.matrix).real)


class OperatorKind(Enum):
    ANNIHILATION = "annihilation"
    CREATION = "creation"
    NUMBER = "number"
    GENERAL = "general"


@dataclass(frozen=True)
class ModeOperator:
    matrix: np.ndarray
    label: OperatorKind = OperatorKind.GENERAL

    def __post_init__(self):
        object.__setattr__(self, "matrix", _freeze(np.asarray(self.matrix, dtype=complex)))


def annihilation(dim: int) -> ModeOperator:
    """<n-1|a|n> = sqrt(n)."""
    a = np.zeros((dim, dim), dtype=complex)
    ns = np.arange(1, dim)
    a[ns - 1, ns] = np.sqrt(ns)
    return ModeOperator(a, OperatorKind.ANNIHILATION)


def creation(dim: int) -> ModeOperator:
    return ModeOperator(annihilation(dim).matrix.conj().T, OperatorKind.CREATION)


def number(dim: int) -> ModeOperator:
    return ModeOperator(np.diag(np.arange(dim)).astype(complex), OperatorKind.NUMBER)


def fock_state(n: int, dim: int) -> StateVector:
    if not 0 <= n < dim:
        raise ValueError(f"Fock index {n} out of range for dim {dim}")
    amps = np.zeros(dim, dtype=complex)
    amps[n] = 1.0
    return StateVector(amps, (dim,))


def _coherent_amplitudes(alpha: complex, dim: int) -> np.ndarray:
    # a_{n+1} = a_n * alpha / sqrt(n+1), a_0 = exp(-|alpha|^2/2)
    amps = np.empty(dim, dtype=complex)
    amps[0] = np.exp(-abs(alpha) ** 2 / 2)
    for n in range(1, dim):
        amps[n] = amps[n - 1] * alpha / np.sqrt(n)
    return amps


def coherent_state(alpha: complex, dim: int, max_loss: float = 1e-8) -> StateVector:
    amps = _coherent_amplitudes(alpha, dim)
    loss = 1.0 - float(np.vdot(amps, amps).real)
    if loss > max_loss:
        raise TruncationError(f"coherent state |α|={abs(alpha):.3g} does not fit in dim {dim}", loss)
    return StateVector(amps / np.linalg.norm(amps), (dim,))


def odd_cat_state(alpha: complex, dim: int) -> StateVector:
    """Normalized |α> - |-α>; only odd Fock amplitudes survive."""
    if alpha == 0:
        raise ValueError("odd cat state is degenerate (zero vector) at alpha = 0")
    coherent_state(alpha, dim)  # truncation check on the component
    amps = _coherent_amplitudes(alpha, dim)
    amps[::2] = 0.0  # even terms cancel exactly in |α> - |-α>
    return StateVector(amps / np.linalg.norm(amps), (dim,))


def squeezing_operator(r: float, dim: int) -> ModeOperator:
    """S(r) = exp[(r/2)(a^2 - a†^2)], real r >= 0 (sign convention documented)."""
    a = annihilation(dim).matrix
    gen = 0.5 * r * (a @ a - a.conj().T @ a.conj().T)
    return ModeOperator(expm(gen), OperatorKind.GENERAL)


def squeezed_fock_state(r: float, n: int, dim: int, max_loss: float = 1e-6) -> StateVector:
    if r < 0:
        raise ValueError("squeezing parameter r must be >= 0")
    if not 0 <= n < dim:
        raise ValueError(f"Fock index {n} out of range for dim {dim}")
    # build in a padded space so truncation loss back to `dim` is measurable
    pad = dim + 16
    psi = squeezing_operator(r, pad).matrix @ fock_state(n, pad).amplitudes
    tail = float(np.vdot(psi[dim:], psi[dim:]).real)
    if tail > max_loss:
        raise TruncationError(f"squeezed Fock state r={r} does not fit in dim {dim}", tail)
    amps = psi[:dim]
    return StateVector(amps / np.linalg.norm(amps), (dim,))


def tensor_product(a, b):
    """Kronecker product of two states or two density operators."""
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.amplitudes, b.amplitudes), a.dims + b.dims)
    if isinstance(a, DensityOperator) and isinstance(b, DensityOperator):
        return DensityOperator(np.kron(a.matrix, b.matrix), a.dims + b.dims)
    raise TypeError("tensor_product requires two StateVectors or two DensityOperators")


def partial_trace(rho: DensityOperator, keep) -> DensityOperator:
    """Trace out every subsystem not listed in ``keep`` (indices, order kept)."""
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if any(k < 0 or k >= len(rho.dims) for k in keep):
        raise ValueError(f"keep indices {keep} out of range for dims {rho.dims}")
    dims = rho.dims
    n_sub = len(dims)
    t = rho.matrix.reshape(dims + dims)
    # einsum: match row/col axes of traced subsystems
    row = list(range(n_sub))
    col = [i + n_sub if i in keep else i for i in range(n_sub)]
    out_axes = [i for i in keep] + [i + n_sub for i in keep]
    reduced = np.einsum(t, row + col, out_axes)
    kept_dims = tuple(dims[k] for k in keep)
    d = int(np.prod(kept_dims))
    return DensityOperator(reduced.reshape(d, d), kept_dims)
