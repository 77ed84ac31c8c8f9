import math

import numpy as np
import pytest

from concmeter import gates, statevec
from concmeter.cavity import (
    ATOM4,
    ATOM5,
    PHOTON,
    FlightConfig,
    RelayRegister,
    composed_cnot_matrix,
    decomposed_cnot,
    kinematics_report,
    map_atom_to_photon,
    map_photon_to_atom5,
    photonic_cphase,
    run_cavity_realization,
    solve_delays,
)
from concmeter.concurrence import PureState
from concmeter.protocol import run_circuit
from concmeter.statevec import InvariantViolation

SQ2 = 1.0 / math.sqrt(2.0)


def haar_states(n, seed=0):
    rng = np.random.default_rng(seed)
    return [PureState.haar_random(rng) for _ in range(n)]


def relay_with(atom2_amps, atom4_amps=(1, 0), photon_amps=(1, 0),
               atom5_amps=(1, 0)):
    """Six-slot relay register with atoms 1 and 3 in |g>."""
    reg = statevec.ground_register(1)
    for amps in (atom2_amps, (1, 0), atom4_amps, photon_amps, atom5_amps):
        reg = statevec.tensor(reg, statevec.from_amplitudes(amps))
    return RelayRegister(reg)


class TestDecomposedCnot:
    def test_step_order(self):
        names = [name for name, _ in decomposed_cnot()]
        assert names == ["r_minus_target", "cphase", "r_plus_target"]

    def test_composition_equals_cnot(self):
        diff = np.abs(composed_cnot_matrix() - gates.cnot().matrix)
        assert np.max(diff) < 1e-12

    def test_action_on_eg(self):
        eg = np.array([0, 0, 1.0, 0])
        np.testing.assert_allclose(composed_cnot_matrix() @ eg, [0, 0, 0, 1],
                                   atol=1e-12)

    def test_action_on_gg(self):
        gg = np.array([1.0, 0, 0, 0])
        np.testing.assert_allclose(composed_cnot_matrix() @ gg, gg, atol=1e-12)


class TestPhotonicRelay:
    def test_excited_atom_to_photon(self):
        r = map_atom_to_photon(relay_with((0, 1)))
        psi = r.register.amplitudes.reshape([2] * 6)
        assert abs(abs(psi[0, 0, 0, 0, 1, 0]) - 1.0) < 1e-12

    def test_superposition_to_photon(self):
        r = map_atom_to_photon(relay_with((SQ2, SQ2)))
        psi = r.register.amplitudes.reshape([2] * 6)
        assert abs(psi[0, 0, 0, 0, 0, 0] - SQ2) < 1e-12
        assert abs(psi[0, 0, 0, 0, 1, 0] - SQ2) < 1e-12

    def test_norm_preserved(self):
        r = map_atom_to_photon(relay_with((0.6, 0.8j)))
        assert abs(np.linalg.norm(r.register.amplitudes) - 1.0) < 1e-12

    def test_occupied_photon_rejected(self):
        with pytest.raises(InvariantViolation, match="vacuum"):
            map_atom_to_photon(relay_with((1, 0), photon_amps=(0, 1)))

    def test_cphase_flips_e1(self):
        r = relay_with((1, 0), atom4_amps=(0, 1), photon_amps=(0, 1))
        out = photonic_cphase(r)
        psi = out.register.amplitudes.reshape([2] * 6)
        assert abs(psi[0, 0, 0, 1, 1, 0] + 1.0) < 1e-12
        assert out.aux_population == 0.0

    def test_cphase_leaves_g1(self):
        r = relay_with((1, 0), atom4_amps=(1, 0), photon_amps=(0, 1))
        out = photonic_cphase(r)
        psi = out.register.amplitudes.reshape([2] * 6)
        assert abs(psi[0, 0, 0, 0, 1, 0] - 1.0) < 1e-12

    def test_cphase_leaves_e0(self):
        r = relay_with((1, 0), atom4_amps=(0, 1), photon_amps=(1, 0))
        out = photonic_cphase(r)
        psi = out.register.amplitudes.reshape([2] * 6)
        assert abs(psi[0, 0, 0, 1, 0, 0] - 1.0) < 1e-12

    def test_photon_to_atom5(self):
        r = map_photon_to_atom5(relay_with((1, 0), photon_amps=(0, 1)))
        psi = r.register.amplitudes.reshape([2] * 6)
        assert abs(abs(psi[0, 0, 0, 0, 0, 1]) - 1.0) < 1e-12

    def test_occupied_atom5_rejected(self):
        with pytest.raises(InvariantViolation, match="atom 5"):
            map_photon_to_atom5(relay_with((1, 0), atom5_amps=(0, 1)))

    def test_full_relay_is_logical_identity(self):
        r = relay_with((0.6, 0.8j))
        out = map_photon_to_atom5(map_atom_to_photon(r))
        psi = out.register.amplitudes.reshape([2] * 6)
        assert abs(psi[0, 0, 0, 0, 0, 0] - 0.6) < 1e-12
        assert abs(psi[0, 0, 0, 0, 0, 1] - 0.8j) < 1e-12


class TestCavityRealization:
    def test_bell(self):
        res = run_cavity_realization(PureState(0, SQ2, SQ2, 0))
        assert abs(res.p_gggg - 0.125) < 1e-10

    def test_product(self):
        res = run_cavity_realization(PureState(1, 0, 0, 0))
        assert res.p_gggg < 1e-20

    def test_matches_ideal_circuit(self):
        for psi in haar_states(200, seed=31):
            real = run_cavity_realization(psi)
            ideal = run_circuit(psi)
            assert abs(real.p_gggg - ideal.p_gggg) < 1e-10
            assert abs(real.p_egeg - ideal.p_egeg) < 1e-10


class TestFlightConfig:
    def test_invalid_speeds(self):
        with pytest.raises(ValueError, match="w > v"):
            FlightConfig(v=500, w=300, tau=1e-4, tau_prime=0,
                         x_C=0.2, x_D=0.6, L_C=0.02, L_D=0.02)

    def test_invalid_geometry(self):
        with pytest.raises(ValueError):
            FlightConfig(v=300, w=500, tau=1e-4, tau_prime=0,
                         x_C=0.6, x_D=0.2, L_C=0.02, L_D=0.02)

    def test_emission_schedule(self):
        cfg = FlightConfig(v=300, w=500, tau=1e-4, tau_prime=2e-4,
                           x_C=0.2, x_D=0.6, L_C=0.02, L_D=0.02)
        assert cfg.emission_times == pytest.approx(
            {1: 0.0, 2: 1e-4, 3: 3e-4, 4: 4e-4})


class TestKinematicsReport:
    def test_crossing_at_cavity_center(self):
        tau = 0.2 * (1 / 300 - 1 / 500)
        cfg = FlightConfig(v=300, w=500, tau=tau, tau_prime=0.0,
                           x_C=0.2, x_D=0.6, L_C=0.02, L_D=0.02)
        report = kinematics_report(cfg)
        assert abs(report.pair12_cross_position - 0.2) < 1e-12
        assert abs(report.pair34_cross_position - 0.2) < 1e-12

    def test_zero_delay_crossing_at_source(self):
        cfg = FlightConfig(v=300, w=500, tau=0.0, tau_prime=1e-4,
                           x_C=0.2, x_D=0.6, L_C=0.02, L_D=0.02)
        report = kinematics_report(cfg)
        assert report.pair12_cross_position == 0.0
        assert "pair12_cross_outside_C" in report.violations
        assert not report.feasible

    def test_symmetric_pairs(self):
        cfg = FlightConfig(v=280, w=450, tau=2e-4, tau_prime=5e-5,
                           x_C=0.25, x_D=0.7, L_C=0.03, L_D=0.03)
        report = kinematics_report(cfg)
        assert report.pair12_cross_position == report.pair34_cross_position

    def test_orderings_are_permutations(self):
        cfg = FlightConfig(v=300, w=500, tau=2.6667e-4, tau_prime=1e-5,
                           x_C=0.2, x_D=0.6, L_C=0.02, L_D=0.02)
        report = kinematics_report(cfg)
        for order in (report.order_before_C, report.order_after_C,
                      report.order_at_D):
            assert sorted(order) == [1, 2, 3, 4]

    def test_overtake_monotone_in_tau(self):
        positions = []
        for tau in (1e-4, 2e-4, 3e-4, 4e-4):
            cfg = FlightConfig(v=300, w=500, tau=tau, tau_prime=0.0,
                               x_C=0.2, x_D=0.6, L_C=0.02, L_D=0.02)
            positions.append(kinematics_report(cfg).pair12_cross_position)
        assert positions == sorted(positions)
        assert len(set(positions)) == len(positions)


class TestSolveDelays:
    def test_closed_form_tau(self):
        sol = solve_delays(300, 500, 0.2, 0.6, 0.02, 0.02)
        assert sol.feasible
        assert abs(sol.config.tau - 0.2 * (1 / 300 - 1 / 500)) < 1e-12
        assert abs(sol.config.tau - 2.6667e-4) < 1e-8

    def test_round_trip_feasible(self):
        sol = solve_delays(300, 500, 0.2, 0.6, 0.02, 0.02)
        report = kinematics_report(sol.config)
        assert report.feasible
        assert report.order_before_C == (4, 3, 2, 1)
        assert report.order_after_C == (3, 4, 1, 2)
        assert report.order_at_D == (3, 1, 4, 2)

    def test_degenerate_speed_gap(self):
        sol = solve_delays(300, 300 + 1e-7, 0.2, 0.6, 0.02, 0.02)
        assert not sol.feasible
        assert sol.binding_constraint == "speed_gap"

    def test_w_below_v_infeasible(self):
        sol = solve_delays(500, 300, 0.2, 0.6, 0.02, 0.02)
        assert not sol.feasible

    def test_varied_geometries_round_trip(self):
        for v, w, xc, xd in [(250, 400, 0.15, 0.5), (300, 500, 0.2, 0.6),
                             (320, 600, 0.3, 0.9), (200, 350, 0.1, 0.45)]:
            sol = solve_delays(v, w, xc, xd, 0.02, 0.02)
            if sol.feasible:
                assert kinematics_report(sol.config).feasible
