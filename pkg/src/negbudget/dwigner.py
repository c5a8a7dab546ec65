"""Discrete (Gross) Wigner representation for odd prime dimensions.

Demonstrates where the continuous-variable budget picture degenerates: in
this representation every pure qutrit stabilizer state (and any mixture of
them) has a non-negative distribution, so the sum-negativity budget of the
excited basis state is exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import DensityOperator, StateVector

SUPPORTED_DIMS = (3, 5, 7)


@dataclass(frozen=True)
class DiscreteWignerDistribution:
    values: np.ndarray  # (d, d), indexed [q, p]
    d: int

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if v.shape != (self.d, self.d):
            raise ValueError("distribution must be d x d")
        if abs(v.sum() - 1.0) > 1e-12:
            raise ValueError(f"distribution sums to {v.sum()}, not 1")


def _check_dim(d: int) -> None:
    if d not in SUPPORTED_DIMS:
        raise ValueError(f"dimension {d} unsupported; odd primes {SUPPORTED_DIMS} only")


def shift_clock(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Generalized Pauli X (shift) and Z (clock) for dimension d."""
    x = np.roll(np.eye(d), 1, axis=0).astype(complex)
    omega = np.exp(2j * np.pi / d)
    z = np.diag(omega ** np.arange(d))
    return x, z


def phase_point_operators(d: int) -> np.ndarray:
    """A_u = T_u A_0 T_u†, shape (d, d, d, d) indexed [q, p, :, :]."""
    _check_dim(d)
    x, z = shift_clock(d)
    omega = np.exp(2j * np.pi / d)
    inv2 = pow(2, -1, d)
    a0 = np.zeros((d, d), dtype=complex)
    for q in range(d):
        a0[(-q) % d, q] = 1.0  # parity: |q> -> |-q mod d>
    ops = np.empty((d, d, d, d), dtype=complex)
    for q in range(d):
        xq = np.linalg.matrix_power(x, q)
        for p in range(d):
            t = omega ** (-(inv2 * q * p) % d) * (xq @ np.linalg.matrix_power(z, p))
            ops[q, p] = t @ a0 @ t.conj().T
    return ops


def discrete_wigner(rho: DensityOperator, d: int) -> DiscreteWignerDistribution:
    """W(u) = Tr[A_u rho] / d."""
    if rho.dim != d:
        raise ValueError(f"density operator dim {rho.dim} != d={d}")
    ops = phase_point_operators(d)
    vals = np.einsum("qpij,ji->qp", ops, rho.matrix) / d
    if np.abs(vals.imag).max() > 1e-12:
        raise ValueError("discrete Wigner values have non-real residue")
    return DiscreteWignerDistribution(vals.real, d)


def reconstruct(w: DiscreteWignerDistribution) -> np.ndarray:
    """Tight-frame identity rho = sum_u W(u) A_u."""
    ops = phase_point_operators(w.d)
    return np.einsum("qp,qpij->ij", w.values, ops)


def discrete_sum_negativity(w: DiscreteWignerDistribution) -> float:
    return 0.5 * (np.abs(w.values).sum() - 1.0)


def strange_state(d: int = 3) -> StateVector:
    """Eigenvector of the parity operator A_0 with eigenvalue -1 (d = 3)."""
    if d != 3:
        raise ValueError("the strange-state construction here is for d = 3")
    amps = np.zeros(3, dtype=complex)
    amps[1] = 1 / np.sqrt(2)
    amps[2] = -1 / np.sqrt(2)
    return StateVector(amps, (3,))


def qutrit_stabilizer_states() -> list[StateVector]:
    """All 12 pure single-qutrit stabilizer states: 4 MUBs x 3 states.

    Bases: computational (Z eigenbasis) plus the eigenbases of X, XZ, XZ^2.
    """
    x, z = shift_clock(3)
    states = [np.eye(3, dtype=complex)[:, k] for k in range(3)]
    for u in (x, x @ z, x @ z @ z):
        _, vec = np.linalg.eig(u)
        for k in range(3):
            v = vec[:, k]
            # fix the global phase so the construction is deterministic
            j = np.argmax(np.abs(v))
            v = v * np.exp(-1j * np.angle(v[j]))
            states.append(v / np.linalg.norm(v))
    return [StateVector(s, (3,)) for s in states]
