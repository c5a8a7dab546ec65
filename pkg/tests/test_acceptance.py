"""Acceptance gate: one test per quantitative claim the library must reproduce.

Each test prints a single summary line; the pytest -v report gives the
pass/fail verdict per criterion.
"""

import time

import numpy as np
import pytest

from negbudget import (
    DensityOperator,
    ExchangeParams,
    PhaseGrid,
    chain_trajectory,
    concurrence_closed_form,
    concurrence_from_purity,
    damped_two_body_trajectory,
    discrete_sum_negativity,
    discrete_wigner,
    evolve_seed,
    fock_state,
    mixture_negativity_closed_form,
    odd_cat_state,
    partial_trace,
    qutrit_stabilizer_states,
    reconstruct,
    sector_propagate,
    seed_comparison,
    single_photon_negativity_exact,
    squeezed_fock_state,
    state_negativity,
    tracking_infidelity,
    two_body_trajectory,
    xy_two_qubit_state,
)
from negbudget.dynamics import (
    SectorAmplitudes,
    beam_splitter_propagator,
    pst_couplings,
    transfer_time,
)

PARAMS = ExchangeParams(g=1.0)
DIM = 20


def report(n, text):
    print(f"criterion {n:02d} PASS: {text}")


@pytest.fixture(scope="module")
def two_body():
    # 101 samples over [0, T] put T/4 and T/2 exactly on the grid
    return two_body_trajectory(PARAMS, n_times=101)


@pytest.fixture(scope="module")
def seeds():
    seed_states = {
        "fock1": fock_state(1, DIM),
        "cat": odd_cat_state(1.4, DIM),
        "squeezed": squeezed_fock_state(0.35, 1, DIM),
    }
    return seed_comparison(seed_states, PARAMS.g, DIM, n_times=41)


def test_criterion_01_budget_value():
    exact = single_photon_negativity_exact()
    rho = fock_state(1, 2).density()
    state_negativity(rho)  # warm the cached kernel table before timing
    t0 = time.perf_counter()
    coarse = state_negativity(rho, PhaseGrid(5.0, 201))
    elapsed = time.perf_counter() - t0
    fine = state_negativity(rho, PhaseGrid(5.0, 401))
    assert abs(coarse - exact) < 1e-4
    assert abs(fine - exact) < 1e-5
    assert elapsed < 1.0
    report(1, f"N1={coarse:.7f} vs {exact:.7f} (dev {abs(coarse - exact):.2e}, "
              f"G=401 dev {abs(fine - exact):.2e}, {elapsed * 1e3:.0f} ms)")


def test_criterion_02_mixture_oracle():
    t0 = time.perf_counter()
    worst = 0.0
    for p in (0.0, 0.25, 0.5, 0.6, 0.75, 0.9, 1.0):
        rho = DensityOperator(np.diag([1 - p, p]).astype(complex), (2,))
        dev = abs(state_negativity(rho) - mixture_negativity_closed_form(p))
        worst = max(worst, dev)
        assert dev < 1e-4
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    report(2, f"7 mixture points, worst dev {worst:.2e} ({elapsed:.2f} s)")


def test_criterion_03_concurrence_law():
    t0 = time.perf_counter()
    worst = 0.0
    for t in np.linspace(0.0, PARAMS.period, 1000):
        amps = xy_two_qubit_state(PARAMS, t)
        psi = np.zeros(4, dtype=complex)
        psi[1], psi[2] = amps.c  # |01> carries the B amplitude, |10> the A amplitude
        rho_a = partial_trace(DensityOperator(np.outer(psi, psi.conj()), (2, 2)), [0])
        dev = abs(concurrence_from_purity(rho_a) - concurrence_closed_form(PARAMS, t))
        worst = max(worst, dev)
    elapsed = time.perf_counter() - t0
    assert worst < 1e-9
    assert elapsed < 1.0
    report(3, f"1000 points, worst dev {worst:.2e} ({elapsed * 1e3:.0f} ms)")


def test_criterion_04_convexity_bound_all_families(two_body, seeds):
    margins = {}
    margins["two-body"] = float((two_body.budget - two_body.total_negativity).min())
    for n in (3, 4, 5):
        traj = chain_trajectory(n, PARAMS, n_times=201, compute_blocks=False)
        margins[f"chain-{n}"] = float((traj.budget - traj.total_negativity).min())
    for label, traj in seeds.items():
        margins[f"seed-{label}"] = float((traj.budget - traj.total_negativity).min())
    for family, margin in margins.items():
        assert margin >= -1e-6, f"{family} exceeds budget by {-margin:.2e}"
    worst = min(margins.values())
    report(4, f"N_tot <= budget + 1e-6 across {len(margins)} families "
              f"(tightest margin {worst:.2e})")


def test_criterion_05_endpoint_saturation(two_body):
    n1 = single_photon_negativity_exact()
    n_tot = two_body.total_negativity
    assert abs(n_tot[0] - n1) < 2e-4
    assert abs(n_tot[50] - n1) < 2e-4  # t = T/2
    assert n_tot[25] <= 1e-6  # t = T/4, the Bell point
    assert abs(two_body.gap[25] - two_body.budget) < 1e-6
    report(5, f"N_tot(0)={n_tot[0]:.6f}, N_tot(T/2)={n_tot[50]:.6f}, "
              f"N_tot(T/4)={n_tot[25]:.2e}")


def test_criterion_06_pst_transfer_and_dark_transport():
    g = PARAMS.g
    t_star = transfer_time(g)
    profile = pst_couplings(4, g)
    start = SectorAmplitudes(np.eye(4, dtype=complex)[0], 0.0)
    end = sector_propagate(profile, start, t_star)
    arrival = abs(end.c[-1])
    assert arrival >= 1 - 1e-9

    t0 = time.perf_counter()
    traj = chain_trajectory(4, PARAMS, n_times=41, compute_blocks=True, block_stride=4)
    elapsed = time.perf_counter() - t0
    assert elapsed < 600.0
    computed = ~np.isnan(traj.block_negativities[:, 0])
    dark = computed & (traj.site_probabilities.max(axis=1) < 0.5)
    assert dark.any(), "no sampled time has every site below 1/2 occupation"
    for i in np.nonzero(dark)[0]:
        assert (traj.site_negativities[i] == 0.0).all()
        assert np.nanmax(traj.block_negativities[i]) > 0.0
    report(6, f"|c3(t*)|={arrival:.12f}; {dark.sum()} dark times with all N_k=0 "
              f"and max N_b2>0 (block quadrature {elapsed:.1f} s)")


def test_criterion_07_cross_implementation_agreement():
    g = PARAMS.g
    dim = 12
    profile = pst_couplings(2, g)
    start = SectorAmplitudes(np.array([1.0 + 0j, 0.0]), 0.0)
    psi0 = np.zeros(dim * dim, dtype=complex)
    psi0[1] = 1.0  # |0>_A |1>_B
    worst = 0.0
    for t in np.linspace(0.0, 2 * PARAMS.period, 81):
        analytic = xy_two_qubit_state(PARAMS, t).c
        tridiag = sector_propagate(profile, start, t).c
        psi = beam_splitter_propagator(g, t, dim).matrix @ psi0
        bs = np.array([psi[1], psi[dim]])  # (B excited, A excited)
        worst = max(worst, float(np.abs(tridiag - analytic).max()))
        worst = max(worst, float(np.abs(bs - analytic).max()))
    assert worst < 1e-8
    report(7, f"three propagators agree over [0, 2T], worst dev {worst:.2e}")


def test_criterion_08_truncation_convergence():
    times = np.linspace(0.0, PARAMS.period, 11)
    seed_builders = {
        "fock1": lambda d: fock_state(1, d),
        "cat": lambda d: odd_cat_state(1.4, d),
        "squeezed": lambda d: squeezed_fock_state(0.35, 1, d),
    }
    worst = 0.0
    for label, build in seed_builders.items():
        for d in (20, 30):
            assert abs(1 - np.linalg.norm(build(d).amplitudes)) < 1e-10
        dev = abs(state_negativity(build(20).density()) - state_negativity(build(30).density()))
        worst = max(worst, dev)
        for t in times:
            lo = evolve_seed(build(20), PARAMS.g, t, 20)
            hi = evolve_seed(build(30), PARAMS.g, t, 30)
            for side in ("rho_a", "rho_b"):
                dev = abs(
                    state_negativity(getattr(lo, side))
                    - state_negativity(getattr(hi, side))
                )
                worst = max(worst, dev)
    assert worst < 1e-3
    report(8, f"dim 20 vs 30 over 3 seeds x 11 times, worst shift {worst:.2e}")


def test_criterion_09_seed_ordering_and_collapse(seeds):
    budgets = {label: traj.budget for label, traj in seeds.items()}
    assert budgets["cat"] > budgets["squeezed"] > budgets["fock1"]
    times = next(iter(seeds.values())).times
    period = PARAMS.period
    for label, traj in seeds.items():
        norm = traj.metadata["normalized"]
        assert abs(norm[0] - 1.0) <= 0.02, label
        t_min = times[np.argmin(norm)] / period
        assert 0.2 <= t_min <= 0.3, (label, t_min)
        half = np.argmin(np.abs(times - period / 2))
        assert norm[half] >= 0.95, (label, norm[half])
    sup = next(iter(seeds.values())).metadata["pairwise_sup_distance"]
    report(9, f"budgets cat={budgets['cat']:.6f} > squeezed={budgets['squeezed']:.7f} "
              f"> fock1={budgets['fock1']:.7f}; pairwise sup distances {sup}")


def test_criterion_10_discrete_triviality():
    t0 = time.perf_counter()
    worst_stab = 0.0
    for s in qutrit_stabilizer_states():
        worst_stab = max(worst_stab, discrete_sum_negativity(discrete_wigner(s.density(), 3)))
    assert worst_stab < 1e-12
    rng = np.random.default_rng(2026)
    worst_rec = 0.0
    for _ in range(100):
        m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        rho = m @ m.conj().T
        rho = DensityOperator(rho / rho.trace(), (3,))
        back = reconstruct(discrete_wigner(rho, 3))
        worst_rec = max(worst_rec, float(np.abs(back - rho.matrix).max()))
    elapsed = time.perf_counter() - t0
    assert worst_rec < 1e-12
    assert elapsed < 1.0
    report(10, f"12 stabilizers max negativity {worst_stab:.2e}; "
               f"100 reconstructions max dev {worst_rec:.2e} ({elapsed * 1e3:.0f} ms)")


def test_criterion_11_tracking_infidelity_monotonic():
    n_times = 51
    ideal = damped_two_body_trajectory(PARAMS, 0.0, n_times=n_times)
    means = []
    for gamma in (0.0, 0.02, 0.05, 0.1):
        traj = ideal if gamma == 0 else damped_two_body_trajectory(
            PARAMS, gamma * PARAMS.g, n_times=n_times
        )
        _, mean = tracking_infidelity(ideal, traj)
        means.append(mean)
    assert means[0] == 0.0
    assert means[0] < means[1] < means[2] < means[3]
    report(11, "mean infidelity " + ", ".join(
        f"gamma={g}g: {m:.5f}" for g, m in zip((0.0, 0.02, 0.05, 0.1), means)))


def test_criterion_12_convexity_property():
    rng = np.random.default_rng(99)
    grid = PhaseGrid(5.0, 201)
    dim = 4

    def random_state():
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        rho = m @ m.conj().T
        return DensityOperator(rho / rho.trace(), (dim,))

    worst = np.inf
    for _ in range(200):
        r1, r2 = random_state(), random_state()
        lam = rng.uniform()
        mix = DensityOperator(lam * r1.matrix + (1 - lam) * r2.matrix, (dim,))
        bound = lam * state_negativity(r1, grid) + (1 - lam) * state_negativity(r2, grid)
        margin = bound - state_negativity(mix, grid)
        worst = min(worst, float(margin))
        assert margin >= -1e-6
    report(12, f"200 random dim-{dim} mixtures convex, tightest margin {worst:.2e}")
