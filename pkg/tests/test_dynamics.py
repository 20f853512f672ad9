import math

import numpy as np
import pytest

from ccaswitch import (ContractViolation, LatticeSpec, NormDriftError,
                       PreconditionError, WavepacketSpec, build_hamiltonian,
                       default_wavepacket, evolve_on_grid, gaussian_packet,
                       group_velocity, measure_transmission, propagate,
                       transmission, validate_adiabatic_elimination)
from ccaswitch.circuit import CouplerDerived


def test_global_phase_only():
    omega = 1.7
    h = omega * np.eye(5)
    psi0 = gaussian_packet(5, 3, 1.0, 4.0)
    psi = propagate(h, psi0, 2.5)
    assert np.allclose(psi, psi0 * np.exp(-1j * omega * 2.5), atol=1e-12)


def test_two_level_rabi_transfer():
    g = 0.3
    h = np.array([[1.0, g], [g, 1.0]])
    psi = propagate(h, np.array([1.0, 0.0]), math.pi / (2 * g))
    assert abs(psi[0]) ** 2 < 1e-12
    assert abs(psi[1]) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_packet_moves_at_group_velocity():
    n, t = 301, 1.0
    spec = LatticeSpec(n_sites=n, hopping=t, defect_bond_index=1, lam=0.0)
    h = build_hamiltonian(spec)
    k0 = math.pi / 2
    psi0 = gaussian_packet(n, 80, k0, 12.0)
    tau = 50.0
    psi = propagate(h, psi0, tau)
    sites = np.arange(1, n + 1)
    center0 = float(sites @ (np.abs(psi0) ** 2))
    center1 = float(sites @ (np.abs(psi) ** 2))
    expected = group_velocity(k0, t) * tau
    assert center1 - center0 == pytest.approx(expected, rel=0.02)


def test_norm_conservation_and_time_reversal():
    spec = LatticeSpec(n_sites=120, hopping=1.0, defect_bond_index=60, lam=0.7)
    h = build_hamiltonian(spec)
    psi0 = gaussian_packet(120, 30, math.pi / 3, 8.0)
    psi = propagate(h, psi0, 40.0)
    assert abs(np.vdot(psi, psi).real - 1.0) < 1e-10
    back = propagate(h, psi, -40.0)
    assert np.max(np.abs(back - psi0)) < 1e-8


def test_rk4_meets_contract_at_fine_step():
    h = np.array([[0.0, 1.0], [1.0, 0.0]])
    psi = propagate(h, np.array([1.0, 0.0]), 3.0, step=1e-3)
    exact = propagate(h, np.array([1.0, 0.0]), 3.0)
    assert np.allclose(psi, exact, atol=1e-9)


def test_rk4_coarse_step_reports_drift():
    spec = LatticeSpec(n_sites=40, hopping=1.0, defect_bond_index=20, lam=0.0)
    h = build_hamiltonian(spec)
    psi0 = gaussian_packet(40, 10, math.pi / 2, 4.0)
    with pytest.raises(NormDriftError) as err:
        propagate(h, psi0, 50.0, step=0.5)
    assert err.value.drift > 1e-10


def test_rejects_non_hermitian():
    with pytest.raises(PreconditionError):
        propagate(np.array([[0.0, 1.0], [0.0, 0.0]]), np.array([1.0, 0.0]), 1.0)


def test_rejects_unnormalized_state():
    with pytest.raises(PreconditionError):
        propagate(np.eye(2), np.array([1.0, 1.0]), 1.0)


def test_measure_transmission_uniform_chain():
    spec = LatticeSpec(n_sites=401, hopping=1.0, defect_bond_index=200, lam=0.0)
    res = measure_transmission(spec, k0=math.pi / 2)
    assert res.transmitted_probability == pytest.approx(1.0, abs=0.01)
    assert res.norm_drift < 1e-10


def test_measure_transmission_severed_chain():
    spec = LatticeSpec(n_sites=401, hopping=1.0, defect_bond_index=200, lam=-1.0)
    res = measure_transmission(spec, k0=math.pi / 4)
    assert res.transmitted_probability <= 1e-6
    assert res.reflected_probability == pytest.approx(1.0, abs=0.01)


def test_measure_transmission_partial():
    spec = LatticeSpec(n_sites=401, hopping=1.0, defect_bond_index=200, lam=-0.5)
    res = measure_transmission(spec, k0=math.pi / 4)
    assert res.transmitted_probability == pytest.approx(8 / 17, abs=0.02)


def test_probability_bookkeeping():
    spec = LatticeSpec(n_sites=401, hopping=1.0, defect_bond_index=200, lam=0.5)
    res = measure_transmission(spec, k0=math.pi / 4)
    total = (res.transmitted_probability + res.reflected_probability
             + res.residual_probability)
    assert total == pytest.approx(1.0, abs=1e-8)


def test_rejects_slow_wavevector():
    spec = LatticeSpec(n_sites=401, hopping=1.0, defect_bond_index=200, lam=0.0)
    with pytest.raises(PreconditionError):
        measure_transmission(spec, k0=0.01)


def test_rejects_short_chain_with_required_size():
    spec = LatticeSpec(n_sites=290, hopping=1.0, defect_bond_index=200, lam=0.0)
    with pytest.raises(PreconditionError, match="n_sites"):
        measure_transmission(spec, k0=math.pi / 2)


def test_wavepacket_spec_validation():
    with pytest.raises(PreconditionError):
        WavepacketSpec(center_site=50, center_wavevector=math.pi / 2,
                       width=2.0, measurement_boundary=100)
    with pytest.raises(PreconditionError):
        WavepacketSpec(center_site=50, center_wavevector=0.001,
                       width=10.0, measurement_boundary=100)


def test_adiabatic_symmetric_ratios():
    prev = None
    for ratio in (10.0, 20.0, 40.0):
        g_prime = 1.0 / ratio
        circ = CouplerDerived.from_modes(0.0, 0.0, 1.0, -g_prime, -g_prime)
        rep = validate_adiabatic_elimination(circ)
        assert rep.valid and not rep.marginal
        assert rep.effective_coupling == pytest.approx(g_prime**2, rel=1e-12)
        assert rep.transfer_time_rel_diff <= 0.05
        assert rep.max_cpb_population <= 1.5 * rep.cpb_population_bound
        if prev is not None:
            assert rep.transfer_time_rel_diff < prev
        prev = rep.transfer_time_rel_diff


def test_adiabatic_no_left_coupling_no_transfer():
    circ = CouplerDerived.from_modes(0.0, 0.0, 1.0, 0.0, -0.05)
    rep = validate_adiabatic_elimination(circ)
    assert rep.effective_coupling == 0.0
    assert rep.p_right_full.max() < 1e-6
    assert rep.p_right_effective.max() < 1e-6


def test_adiabatic_marginal_flag():
    circ = CouplerDerived.from_modes(0.0, 0.0, 1.0, -1 / 3, -1 / 3)
    rep = validate_adiabatic_elimination(circ)
    assert rep.valid
    assert rep.marginal


def test_adiabatic_invalid_flag():
    circ = CouplerDerived.from_modes(0.0, 0.0, 1.0, -2.0, -2.0)
    rep = validate_adiabatic_elimination(circ)
    assert not rep.valid


def test_evolve_on_grid_matches_propagate():
    h = np.array([[0.2, 0.5], [0.5, -0.1]])
    psi0 = np.array([1.0, 0.0], dtype=complex)
    times = np.array([0.0, 1.3, 2.6])
    grid = evolve_on_grid(h, psi0, times)
    for tau, row in zip(times, grid):
        assert np.allclose(row, propagate(h, psi0, tau), atol=1e-12)
