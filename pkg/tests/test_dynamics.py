import numpy as np
import pytest

from negbudget import (
    ExchangeParams,
    NumericalContractError,
    beam_splitter_propagator,
    concurrence_closed_form,
    concurrence_from_purity,
    evolve_seed,
    fock_state,
    pst_couplings,
    sector_propagate,
    site_mixture,
    transfer_time,
    xy_two_qubit_state,
)
from negbudget.dynamics import (
    CouplingProfile,
    SectorAmplitudes,
    amplitude_damping_trajectory,
    local_qubit_states,
    reduced_excitation_probabilities,
)
from negbudget.fock import number, tensor_product


def test_exchange_period():
    assert ExchangeParams(g=2.0).period == pytest.approx(np.pi / 2)
    with pytest.raises(ValueError):
        ExchangeParams(g=0.0)


def test_xy_state_milestones():
    params = ExchangeParams(g=1.0)
    T = params.period
    start = xy_two_qubit_state(params, 0.0)
    assert np.abs(start.c - [1.0, 0.0]).max() < 1e-15
    half = xy_two_qubit_state(params, T / 2)
    assert abs(half.c[1] + 1j) < 1e-12 and abs(half.c[0]) < 1e-12
    quarter = xy_two_qubit_state(params, T / 4)
    assert np.abs(np.abs(quarter.c) - 1 / np.sqrt(2)).max() < 1e-12


def test_excitation_probabilities_sum():
    amps = xy_two_qubit_state(ExchangeParams(), 0.7)
    p = reduced_excitation_probabilities(amps)
    assert p.sum() == pytest.approx(1.0, abs=1e-12)


def test_site_mixture_is_valid_state():
    rho = site_mixture(0.3)
    assert rho.matrix[1, 1].real == pytest.approx(0.3)
    with pytest.raises(Exception):
        site_mixture(1.5)


def test_concurrence_closed_form():
    params = ExchangeParams(g=1.0)
    T = params.period
    assert concurrence_closed_form(params, 0.0) == 0.0
    assert concurrence_closed_form(params, T / 4) == pytest.approx(1.0)
    assert concurrence_closed_form(params, T / 8) == pytest.approx(np.sqrt(2) / 2)


def test_concurrence_from_purity_examples():
    assert concurrence_from_purity(site_mixture(0.0)) == 0.0
    assert concurrence_from_purity(site_mixture(0.5)) == pytest.approx(1.0)
    assert concurrence_from_purity(site_mixture(0.25)) == pytest.approx(
        np.sqrt(2 * (1 - (0.75**2 + 0.25**2)))
    )


def test_pst_couplings_profiles():
    p4 = pst_couplings(4, 1.0)
    assert np.abs(p4.couplings - [np.sqrt(3), 2.0, np.sqrt(3)]).max() < 1e-12
    p2 = pst_couplings(2, 2.0)
    assert p2.couplings[0] == pytest.approx(2.0)
    with pytest.raises(ValueError):
        pst_couplings(1, 1.0)


def test_coupling_profile_mirror_check():
    with pytest.raises(ValueError):
        CouplingProfile(np.array([1.0, 2.0]), 3)


def test_sector_propagate_matches_two_qubit_closed_form():
    params = ExchangeParams(g=1.3)
    profile = pst_couplings(2, params.g)
    start = SectorAmplitudes(np.array([1.0 + 0j, 0.0]), 0.0)
    for t in np.linspace(0, 2 * params.period, 17):
        c = sector_propagate(profile, start, t).c
        expected = xy_two_qubit_state(params, t).c
        assert np.abs(c - expected).max() < 1e-12


def test_sector_norm_contract():
    with pytest.raises(NumericalContractError):
        SectorAmplitudes(np.array([1.0, 1.0]), 0.0)


def test_perfect_state_transfer():
    g = 1.0
    for n in (3, 4, 5, 8):
        profile = pst_couplings(n, g)
        start = SectorAmplitudes(np.eye(n, dtype=complex)[0], 0.0)
        end = sector_propagate(profile, start, transfer_time(g))
        assert abs(abs(end.c[-1]) - 1.0) < 1e-9


def test_dark_transport_window():
    # mid-transfer on the 4-site chain: every site below 1/2 occupation
    profile = pst_couplings(4, 1.0)
    start = SectorAmplitudes(np.eye(4, dtype=complex)[0], 0.0)
    mid = sector_propagate(profile, start, transfer_time(1.0) / 2)
    p = reduced_excitation_probabilities(mid)
    assert np.abs(p - [0.125, 0.375, 0.375, 0.125]).max() < 1e-12


def test_beam_splitter_identity_and_swap():
    dim = 8
    u0 = beam_splitter_propagator(1.0, 0.0, dim).matrix
    assert np.abs(u0 - np.eye(dim * dim)).max() < 1e-12
    # at gt = pi/2 the modes swap up to mode-local phases
    u = beam_splitter_propagator(1.0, np.pi / 2, dim).matrix
    psi0 = np.zeros(dim * dim, dtype=complex)
    psi0[:dim] = fock_state(1, dim).amplitudes  # |0>_A |1>_B
    psi = u @ psi0
    assert abs(psi[dim]) ** 2 == pytest.approx(1.0, abs=1e-12)  # |1>_A |0>_B


def test_beam_splitter_number_conservation():
    dim = 10
    u = beam_splitter_propagator(1.0, 0.37, dim).matrix
    n_tot = np.kron(number(dim).matrix, np.eye(dim)) + np.kron(
        np.eye(dim), number(dim).matrix
    )
    assert np.abs(u @ n_tot - n_tot @ u).max() < 1e-9


def test_evolve_seed_endpoints():
    dim = 12
    params = ExchangeParams(g=1.0)
    seed = fock_state(1, dim)
    ev0 = evolve_seed(seed, params.g, 0.0, dim)
    assert abs(ev0.rho_b.matrix[1, 1].real - 1.0) < 1e-12
    assert not ev0.truncated
    quarter = evolve_seed(seed, params.g, params.period / 4, dim)
    assert abs(quarter.rho_a.matrix[1, 1].real - 0.5) < 1e-10
    assert abs(quarter.rho_b.matrix[1, 1].real - 0.5) < 1e-10


def test_evolve_seed_truncation_flag():
    dim = 6
    ev = evolve_seed(fock_state(dim - 1, dim), 1.0, 0.3, dim)
    assert ev.leakage > 1e-6 and ev.truncated


def test_damping_gamma_zero_matches_unitary():
    params = ExchangeParams(g=1.0)
    times = np.linspace(0, params.period, 21)
    traj = amplitude_damping_trajectory(params, 0.0, times)
    for t, rho in zip(times, traj):
        amps = xy_two_qubit_state(params, t).c
        psi = np.zeros(4, dtype=complex)
        psi[1], psi[2] = amps  # (B excited, A excited)
        assert np.abs(rho.matrix - np.outer(psi, psi.conj())).max() < 1e-8


def test_damping_decays_excitation():
    params = ExchangeParams(g=1.0)
    times = np.linspace(0, 4 * params.period, 9)
    traj = amplitude_damping_trajectory(params, 0.5, times)
    excited = [1 - rho.matrix[0, 0].real for rho in traj]
    assert excited[-1] < 0.05 < excited[0]
    for rho in traj:
        assert abs(rho.matrix.trace().real - 1.0) < 1e-10


def test_local_qubit_states_split():
    rho = tensor_product(site_mixture(0.2), site_mixture(0.9))
    ra, rb = local_qubit_states(rho)
    assert ra.matrix[1, 1].real == pytest.approx(0.2)
    assert rb.matrix[1, 1].real == pytest.approx(0.9)
