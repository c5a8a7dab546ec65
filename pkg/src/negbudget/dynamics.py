"""Time evolution under excitation-preserving Hamiltonians.

Three generators are covered: the two-qubit XY exchange (closed form), the
single-excitation block of a PST chain (tridiagonal eigendecomposition), and
the two-mode beam splitter in a truncated Fock space.  A Trotterized
amplitude-damping channel provides the noisy demonstration trajectory.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import NumericalContractError
from .fock import (
    DensityOperator,
    ModeOperator,
    OperatorKind,
    StateVector,
    annihilation,
    partial_trace,
)


@dataclass(frozen=True)
class ExchangeParams:
    """Exchange rate g; the swap period T = pi/g follows."""

    g: float = 1.0

    def __post_init__(self):
        if self.g <= 0:
            raise ValueError("coupling rate g must be positive")

    @property
    def period(self) -> float:
        return np.pi / self.g


@dataclass(frozen=True)
class CouplingProfile:
    """Nearest-neighbor couplings J_k of an N-site chain."""

    couplings: np.ndarray
    sites: int

    def __post_init__(self):
        j = np.asarray(self.couplings, dtype=float)
        j.setflags(write=False)
        object.__setattr__(self, "couplings", j)
        if j.size != self.sites - 1:
            raise ValueError("need exactly N-1 couplings")
        if (j <= 0).any():
            raise ValueError("all couplings must be positive")
        if np.abs(j - j[::-1]).max() > 1e-12:
            raise ValueError("coupling profile must be mirror symmetric")


@dataclass(frozen=True)
class SectorAmplitudes:
    """Single-excitation amplitudes c_k per site at a given time."""

    c: np.ndarray
    time: float

    def __post_init__(self):
        c = np.asarray(self.c, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "c", c)
        norm = float(np.vdot(c, c).real)
        if abs(norm - 1.0) > 1e-10:
            raise NumericalContractError(f"sector norm {norm} deviates from 1")

    @property
    def sites(self) -> int:
        return self.c.size


def xy_two_qubit_state(params: ExchangeParams, t: float) -> SectorAmplitudes:
    """Amplitudes (initially-excited site B, site A) = (cos gt, -i sin gt)."""
    gt = params.g * t
    return SectorAmplitudes(np.array([np.cos(gt), -1j * np.sin(gt)]), t)


def reduced_excitation_probabilities(amps: SectorAmplitudes) -> np.ndarray:
    """p_k = |c_k|^2; site k is the mixture p_k|1><1| + (1-p_k)|0><0|."""
    return np.abs(amps.c) ** 2


def site_mixture(p: float) -> DensityOperator:
    """Local qubit state diag(1-p, p) embedded as a dim-2 Fock operator."""
    return DensityOperator(np.diag([1 - p, p]).astype(complex), (2,))


def concurrence_closed_form(params: ExchangeParams, t: float) -> float:
    return abs(np.sin(2 * params.g * t))


def concurrence_from_purity(rho_a: DensityOperator) -> float:
    purity = rho_a.purity()
    if purity > 1 + 1e-9:
        raise NumericalContractError(f"purity {purity} exceeds 1")
    return float(np.sqrt(max(0.0, 2 * (1 - purity))))


def pst_couplings(n_sites: int, g: float) -> CouplingProfile:
    """Engineered profile J_k = g sqrt((k+1)(N-k-1))."""
    if n_sites < 2:
        raise ValueError("chain needs at least 2 sites")
    k = np.arange(n_sites - 1)
    return CouplingProfile(g * np.sqrt((k + 1) * (n_sites - k - 1)), n_sites)


def transfer_time(g: float) -> float:
    """Perfect-transfer time t* = pi/(2g) of the engineered chain."""
    return np.pi / (2 * g)


_sector_cache: dict[tuple, tuple[np.ndarray, np.ndarray]] = {}
_sector_lock = threading.Lock()


def _sector_eigensystem(profile: CouplingProfile) -> tuple[np.ndarray, np.ndarray]:
    key = (profile.sites, tuple(profile.couplings))
    with _sector_lock:
        if key not in _sector_cache:
            lam, vec = eigh_tridiagonal(np.zeros(profile.sites), profile.couplings)
            _sector_cache[key] = (lam, vec)
        return _sector_cache[key]


def sector_propagate(
    profile: CouplingProfile, initial: SectorAmplitudes, t: float
) -> SectorAmplitudes:
    """c(t) = exp(-i M t) c(0) for the symmetric tridiagonal hopping block M."""
    lam, vec = _sector_eigensystem(profile)
    phases = np.exp(-1j * lam * t)
    c = vec @ (phases * (vec.T @ initial.c))
    return SectorAmplitudes(c, initial.time + t)


_bs_cache: dict[tuple[float, int], tuple[np.ndarray, np.ndarray]] = {}
_bs_lock = threading.Lock()


def _beam_splitter_eigensystem(g: float, dim: int) -> tuple[np.ndarray, np.ndarray]:
    key = (g, dim)
    with _bs_lock:
        if key not in _bs_cache:
            a = annihilation(dim).matrix
            h = g * (np.kron(a.conj().T, a) + np.kron(a, a.conj().T))
            lam, vec = np.linalg.eigh(h)
            _bs_cache[key] = (lam, vec)
        return _bs_cache[key]


def beam_splitter_propagator(g: float, t: float, dim: int) -> ModeOperator:
    """Unitary exp(-i g (a†b + ab†) t) on the dim^2 two-mode space."""
    if dim < 2:
        raise ValueError("dim must be at least 2")
    lam, vec = _beam_splitter_eigensystem(g, dim)
    u = (vec * np.exp(-1j * lam * t)) @ vec.conj().T
    dev = np.abs(u.conj().T @ u - np.eye(dim * dim)).max()
    if dev > 1e-9:
        raise NumericalContractError(f"propagator unitarity deviation {dev:.3e}")
    return ModeOperator(u, OperatorKind.GENERAL)


@dataclass(frozen=True)
class SeedEvolution:
    rho_a: DensityOperator
    rho_b: DensityOperator
    leakage: float
    truncated: bool  # top-level population above the leakage budget


def evolve_seed(
    seed: StateVector, g: float, t: float, dim: int, leak_tol: float = 1e-6
) -> SeedEvolution:
    """Propagate |0>_A (x) seed_B under the beam splitter; return reduced states."""
    if seed.dim != dim:
        raise ValueError(f"seed dim {seed.dim} != requested dim {dim}")
    psi0 = np.zeros(dim * dim, dtype=complex)
    psi0[: dim] = seed.amplitudes  # |0>_A slot: indices (0, n_B)
    u = beam_splitter_propagator(g, t, dim).matrix
    psi = u @ psi0
    m = psi.reshape(dim, dim)
    rho_a = DensityOperator(m @ m.conj().T, (dim,))
    rho_b = DensityOperator(m.T @ m.conj(), (dim,))
    leak = float(
        rho_a.matrix[dim - 2 :, dim - 2 :].trace().real
        + rho_b.matrix[dim - 2 :, dim - 2 :].trace().real
    )
    return SeedEvolution(rho_a, rho_b, leak, leak > leak_tol)


def _xy_hamiltonian_two_qubit(g: float) -> np.ndarray:
    h = np.zeros((4, 4), dtype=complex)
    h[1, 2] = h[2, 1] = g  # couples |01> and |10> (A slowest index)
    return h


def amplitude_damping_trajectory(
    params: ExchangeParams,
    gamma: float,
    times: np.ndarray,
    dt: float | None = None,
) -> list[DensityOperator]:
    """Two-qubit XY evolution Trotterized with per-site amplitude damping.

    Alternates exact unitary steps with the Kraus pair
    K0 = diag(1, sqrt(1 - gamma dt)), K1 = sqrt(gamma dt) |0><1| on each site.
    ``times`` must be uniformly spaced starting at 0.
    """
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    times = np.asarray(times, dtype=float)
    if times[0] != 0 or np.abs(np.diff(times) - (times[1] - times[0])).max() > 1e-12:
        raise ValueError("times must be uniform starting at 0")
    dt_max = 0.01 / max(params.g, gamma if gamma > 0 else params.g)
    span = times[1] - times[0]
    if dt is None:
        substeps = max(1, int(np.ceil(span / dt_max)))
        dt = span / substeps
    else:
        if dt > dt_max:
            raise ValueError(f"dt={dt} exceeds stability bound {dt_max}")
        substeps = int(round(span / dt))
        if abs(substeps * dt - span) > 1e-12:
            raise ValueError("dt must divide the sample spacing")

    h = _xy_hamiltonian_two_qubit(params.g)
    lam, vec = np.linalg.eigh(h)
    u_dt = (vec * np.exp(-1j * lam * dt)) @ vec.conj().T
    k0 = np.diag([1.0, np.sqrt(1 - gamma * dt)]).astype(complex)
    k1 = np.zeros((2, 2), dtype=complex)
    k1[0, 1] = np.sqrt(gamma * dt)
    eye = np.eye(2, dtype=complex)
    site_kraus = [
        [np.kron(k0, eye), np.kron(k1, eye)],
        [np.kron(eye, k0), np.kron(eye, k1)],
    ]

    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = 1.0  # |01>: A ground, B excited
    out = [DensityOperator(rho.copy(), (2, 2))]
    for _ in range(len(times) - 1):
        for _ in range(substeps):
            rho = u_dt @ rho @ u_dt.conj().T
            if gamma > 0:
                for ks in site_kraus:
                    rho = sum(k @ rho @ k.conj().T for k in ks)
        tr = rho.trace().real
        if abs(tr - 1.0) > 1e-8:
            raise NumericalContractError(f"trace drift {tr - 1.0:.3e} in damped run")
        rho = (rho + rho.conj().T) / 2 / tr  # shed roundoff before validation
        out.append(DensityOperator(rho.copy(), (2, 2)))
    return out


def local_qubit_states(rho: DensityOperator) -> tuple[DensityOperator, DensityOperator]:
    return partial_trace(rho, [0]), partial_trace(rho, [1])
