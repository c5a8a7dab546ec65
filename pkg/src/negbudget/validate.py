"""Invariant suite behind the ``validate`` CLI subcommand.

Each check is a named callable returning a detail string on success and
raising on failure.  ``run_all`` prints one line per check.
"""

from __future__ import annotations

import numpy as np

from . import budget as bd
from . import dwigner as dw
from . import dynamics as dyn
from . import phase_space as ps
from .fock import DensityOperator, fock_state, odd_cat_state, partial_trace, squeezed_fock_state, tensor_product


def _random_density(dim: int, rng: np.random.Generator) -> DensityOperator:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = m @ m.conj().T
    return DensityOperator(rho / rho.trace(), (dim,))


def check_partial_trace_product() -> str:
    rng = np.random.default_rng(7)
    r1, r2 = _random_density(3, rng), _random_density(4, rng)
    back = partial_trace(tensor_product(r1, r2), [0])
    dev = np.abs(back.matrix - r1.matrix).max()
    assert dev < 1e-12, f"partial trace deviation {dev}"
    return f"max dev {dev:.2e}"


def check_seed_parity() -> str:
    cat = odd_cat_state(1.4, 20)
    sq = squeezed_fock_state(0.35, 1, 20)
    worst = max(np.abs(cat.amplitudes[::2]).max(), np.abs(sq.amplitudes[::2]).max())
    assert worst < 1e-12
    return f"even-Fock residue {worst:.2e}"


def check_field_normalization() -> str:
    grid = ps.default_grid()
    worst = 0.0
    for state in (fock_state(0, 20), fock_state(1, 20), odd_cat_state(1.4, 20)):
        f = ps.wigner_single_mode(state.density(), grid)
        worst = max(worst, abs(f.trace_estimate - 1.0))
    assert worst < ps.GRID_TOL
    return f"trace dev {worst:.2e}"


def check_mixture_oracle() -> str:
    grid = ps.default_grid()
    worst = 0.0
    for p in (0.0, 0.25, 0.5, 0.6, 0.75, 0.9, 1.0):
        q = ps.state_negativity(dyn.site_mixture(p), grid)
        worst = max(worst, abs(q - ps.mixture_negativity_closed_form(p)))
    assert worst < 1e-4
    return f"quadrature vs closed form {worst:.2e}"


def check_convexity_sample() -> str:
    rng = np.random.default_rng(11)
    grid = ps.default_grid()
    worst = -np.inf
    for _ in range(20):
        r1, r2 = _random_density(4, rng), _random_density(4, rng)
        p = rng.uniform(0.1, 0.9)
        mix = DensityOperator(p * r1.matrix + (1 - p) * r2.matrix, (4,))
        excess = ps.state_negativity(mix, grid) - (
            p * ps.state_negativity(r1, grid) + (1 - p) * ps.state_negativity(r2, grid)
        )
        worst = max(worst, excess)
    assert worst <= 1e-6, f"convexity excess {worst}"
    return f"max excess {worst:.2e}"


def check_number_conservation() -> str:
    prof = dyn.pst_couplings(5, 1.0)
    init = dyn.SectorAmplitudes(np.eye(5)[0].astype(complex), 0.0)
    worst = 0.0
    for t in np.linspace(0, 2 * np.pi, 37):
        c = dyn.sector_propagate(prof, init, t).c
        worst = max(worst, abs(float(np.vdot(c, c).real) - 1.0))
    assert worst < 1e-9
    return f"norm drift {worst:.2e}"


def check_cross_implementation() -> str:
    params = dyn.ExchangeParams(1.0)
    prof = dyn.pst_couplings(2, 1.0)
    init = dyn.SectorAmplitudes(np.array([1.0 + 0j, 0.0]), 0.0)
    dim = 20
    worst = 0.0
    for t in np.linspace(0, 2 * params.period, 41):
        a_xy = dyn.xy_two_qubit_state(params, t).c
        a_ch = dyn.sector_propagate(prof, init, t).c
        u = dyn.beam_splitter_propagator(1.0, t, dim).matrix
        psi = u[:, 1]  # column of initial |0>_A |1>_B at flat index 1
        a_bs = np.array([psi[1], psi[dim]])  # amplitudes of |01> and |10>
        worst = max(worst, np.abs(a_xy - a_ch).max(), np.abs(a_xy - a_bs).max())
    assert worst < 1e-8
    return f"max amplitude dev {worst:.2e}"


def check_concurrence_identity() -> str:
    params = dyn.ExchangeParams(1.0)
    worst = 0.0
    for t in np.linspace(0, params.period, 101):
        p = np.sin(params.g * t) ** 2
        c = dyn.concurrence_from_purity(dyn.site_mixture(p))
        worst = max(worst, abs(c - dyn.concurrence_closed_form(params, t)))
    assert worst < 1e-9
    return f"max dev {worst:.2e}"


def check_pst_mirror() -> str:
    prof = dyn.pst_couplings(4, 1.0)
    init = dyn.SectorAmplitudes(np.eye(4)[0].astype(complex), 0.0)
    c = dyn.sector_propagate(prof, init, dyn.transfer_time(1.0)).c
    p = np.abs(c) ** 2
    dev = np.abs(p - np.array([0, 0, 0, 1.0])).max()
    assert dev < 1e-9
    return f"transfer residual {dev:.2e}"


def check_two_body_bound() -> str:
    traj = bd.two_body_trajectory(dyn.ExchangeParams(1.0), n_times=101)
    excess = float((traj.total_negativity - traj.budget).max())
    assert excess <= 1e-6
    mid = traj.total_negativity[len(traj.times) // 4]
    assert mid < 1e-6, f"Bell-point negativity {mid}"
    return f"max excess {excess:.2e}"


def check_dwigner() -> str:
    rng = np.random.default_rng(3)
    worst_rec = 0.0
    for _ in range(20):
        rho = _random_density(3, rng)
        w = dw.discrete_wigner(rho, 3)
        worst_rec = max(worst_rec, np.abs(dw.reconstruct(w) - rho.matrix).max())
    assert worst_rec < 1e-12
    worst_neg = max(
        dw.discrete_sum_negativity(dw.discrete_wigner(s.density(), 3))
        for s in dw.qutrit_stabilizer_states()
    )
    assert worst_neg < 1e-12
    strange = dw.discrete_sum_negativity(dw.discrete_wigner(dw.strange_state().density(), 3))
    assert strange > 0
    return f"reconstruction {worst_rec:.2e}, stabilizer negativity {worst_neg:.2e}"


CHECKS = [
    ("partial-trace-product", check_partial_trace_product),
    ("seed-parity", check_seed_parity),
    ("field-normalization", check_field_normalization),
    ("mixture-oracle", check_mixture_oracle),
    ("negativity-convexity", check_convexity_sample),
    ("number-conservation", check_number_conservation),
    ("cross-implementation", check_cross_implementation),
    ("concurrence-identity", check_concurrence_identity),
    ("pst-mirror", check_pst_mirror),
    ("two-body-bound", check_two_body_bound),
    ("discrete-wigner", check_dwigner),
]


def run_all(out=print) -> bool:
    ok = True
    for name, fn in CHECKS:
        try:
            detail = fn()
            out(f"PASS {name}: {detail}")
        except Exception as exc:  # noqa: BLE001 - report and continue
            ok = False
            out(f"FAIL {name}: {exc}")
    return ok
