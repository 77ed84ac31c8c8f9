"""Microwave-cavity realization: CNOT decomposed through a photonic qubit,
the atom-2 -> cavity photon -> atom-5 relay, and the ballistic flight
kinematics that put the atoms in the right order at each cavity.

Atom layout in the relay register (left to right, qubit 1 = MSB):
atom1, atom2, atom3, atom4, photon (|0>=|g>), atom5. Atom 2 stays in the
register after its qubit is handed to the photon; it is deterministically
|g> from that point on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import gates, statevec
from .concurrence import PureState
from .protocol import ProtocolResult, analytic_phi1, extract_concurrence, run_circuit
from .statevec import Gate2Q, InvariantViolation, Register

CAVITY_MATCH_TOL = 1e-10
PHOTON_VACUUM_TOL = 1e-12
MIN_SPEED_GAP = 1e-6  # m/s; below this the overtake position degenerates
BISECTION_TOL = 1e-9  # m, on the overtake position

# slot positions (1-based qubit indices) in the relay register
ATOM1, ATOM2, ATOM3, ATOM4, PHOTON, ATOM5 = 1, 2, 3, 4, 5, 6


# ---------------------------------------------------------------------------
# gate decomposition


def _swap_2q() -> Gate2Q:
    return Gate2Q(
        [
            [1, 0, 0, 0],
            [0, 0, 1, 0],
            [0, 1, 0, 0],
            [0, 0, 0, 1],
        ]
    )


def decomposed_cnot() -> list[tuple[str, Gate2Q]]:
    """CNOT(control, target) as R-(target), CPHASE, R+(target), in
    application order. Each step is embedded as a gate on the ordered
    (control, target) pair."""
    eye = np.eye(2)
    r_minus_t = Gate2Q(np.kron(eye, gates.r_minus().matrix))
    r_plus_t = Gate2Q(np.kron(eye, gates.r_plus().matrix))
    return [
        ("r_minus_target", r_minus_t),
        ("cphase", gates.cphase()),
        ("r_plus_target", r_plus_t),
    ]


def composed_cnot_matrix() -> np.ndarray:
    """Product of the decomposition steps (last step leftmost)."""
    steps = [g.matrix for _, g in decomposed_cnot()]
    return steps[2] @ steps[1] @ steps[0]


# ---------------------------------------------------------------------------
# photonic relay


@dataclass(frozen=True)
class RelayRegister:
    """Six-slot register (atoms 1-4, cavity-D photon, atom 5) plus the
    population left in the auxiliary level after the 2pi pulse (always 0
    in this logical model)."""

    register: Register
    aux_population: float = 0.0


def _slot_excited_probability(r: Register, slot: int) -> float:
    psi = r.amplitudes.reshape([2] * r.n_qubits)
    axes = tuple(i for i in range(r.n_qubits) if i != slot - 1)
    return float(np.sum(np.abs(psi) ** 2, axis=axes)[1])


def map_atom_to_photon(r: RelayRegister) -> RelayRegister:
    """Hand the atom-2 qubit to the cavity-D photon; atom 2 exits in |g>."""
    if _slot_excited_probability(r.register, PHOTON) > PHOTON_VACUUM_TOL:
        raise InvariantViolation("photon must be in vacuum before the atom-2 map")
    reg = statevec.apply_2q(r.register, ATOM2, PHOTON, _swap_2q())
    return RelayRegister(reg, r.aux_population)


def photonic_cphase(r: RelayRegister) -> RelayRegister:
    """2pi Rabi cycle through the auxiliary level: |e>_4 |1>_photon picks
    up a -1 phase, everything else untouched, auxiliary level empty."""
    reg = statevec.apply_2q(r.register, ATOM4, PHOTON, gates.cphase())
    out = RelayRegister(reg, 0.0)
    if out.aux_population > 1e-12:
        raise InvariantViolation("auxiliary level left populated after the 2pi pulse")
    return out


def map_photon_to_atom5(r: RelayRegister) -> RelayRegister:
    """Retrieve the photonic qubit into atom 5; photon left in vacuum."""
    if _slot_excited_probability(r.register, ATOM5) > PHOTON_VACUUM_TOL:
        raise InvariantViolation("atom 5 must start in the ground state")
    reg = statevec.apply_2q(r.register, PHOTON, ATOM5, _swap_2q())
    return RelayRegister(reg, r.aux_population)


def _all_ground_probability(r: Register, slots: tuple[int, ...]) -> float:
    psi = r.amplitudes.reshape([2] * r.n_qubits)
    idx = [slice(None)] * r.n_qubits
    for s in slots:
        idx[s - 1] = 0
    return float(np.sum(np.abs(psi[tuple(idx)]) ** 2))


def run_cavity_realization(psi: PureState) -> ProtocolResult:
    """Full cavity sequence; must reproduce the ideal circuit's P_gggg."""
    copies = statevec.tensor(
        statevec.from_amplitudes(psi.amplitudes),
        statevec.from_amplitudes(psi.amplitudes),
    )
    reg = statevec.tensor(copies, statevec.ground_register(2))  # photon + atom 5

    sy = gates.sigma_y()
    reg = statevec.apply_1q(reg, ATOM3, sy)  # Ramsey region, second copy only
    reg = statevec.apply_1q(reg, ATOM4, sy)
    reg = statevec.apply_1q(reg, ATOM4, gates.r_minus())

    relay = RelayRegister(reg)
    relay = map_atom_to_photon(relay)
    relay = photonic_cphase(relay)
    relay = RelayRegister(statevec.apply_1q(relay.register, ATOM4, gates.r_plus()),
                          relay.aux_population)
    relay = map_photon_to_atom5(relay)

    # atom 5 now carries the logical qubit 2; final rotation of the protocol
    final = statevec.apply_1q(relay.register, ATOM5, gates.r_minus())

    p_all_ground = _all_ground_probability(final, (ATOM5, ATOM3, ATOM1, ATOM4))
    ideal = run_circuit(psi)
    if abs(p_all_ground - ideal.p_gggg) > CAVITY_MATCH_TOL:
        raise InvariantViolation(
            f"cavity realization deviates from the ideal circuit by "
            f"{abs(p_all_ground - ideal.p_gggg):.3e}"
        )
    # P_egeg analogue in logical-qubit order (1, 2, 3, 4) = atoms (1, 5, 3, 4)
    psi6 = final.amplitudes.reshape([2] * 6)
    idx = [slice(None)] * 6
    idx[ATOM1 - 1], idx[ATOM5 - 1], idx[ATOM3 - 1], idx[ATOM4 - 1] = 1, 0, 1, 0
    p_egeg = float(np.sum(np.abs(psi6[tuple(idx)]) ** 2))
    return ProtocolResult(
        final_state=final,
        p_gggg=p_all_ground,
        p_egeg=p_egeg,
        concurrence_measured=extract_concurrence(p_all_ground),
        oracle_residual=abs(p_all_ground - ideal.p_gggg),
    )


# ---------------------------------------------------------------------------
# flight kinematics


@dataclass(frozen=True)
class FlightConfig:
    """Ballistic 1D flight plan. Atoms 1 and 3 fly at v, atoms 2 and 4 at
    w > v; emission times are t1=0, t2=tau, t3=tau+tau_prime,
    t4=tau+tau_prime+tau, all from the source at x=0."""

    v: float
    w: float
    tau: float
    tau_prime: float
    x_C: float
    x_D: float
    L_C: float
    L_D: float

    def __post_init__(self):
        if not (self.w > self.v > 0.0):
            raise ValueError("speeds must satisfy w > v > 0")
        if not (self.x_D > self.x_C > 0.0):
            raise ValueError("cavity positions must satisfy x_D > x_C > 0")
        if self.L_C <= 0.0 or self.L_D <= 0.0:
            raise ValueError("cavity mode lengths must be positive")
        if self.tau < 0.0 or self.tau_prime < 0.0:
            raise ValueError("delays must be non-negative")

    @property
    def emission_times(self) -> dict[int, float]:
        return {
            1: 0.0,
            2: self.tau,
            3: self.tau + self.tau_prime,
            4: 2.0 * self.tau + self.tau_prime,
        }

    @property
    def speeds(self) -> dict[int, float]:
        return {1: self.v, 2: self.w, 3: self.v, 4: self.w}

    def position(self, atom: int, t: float) -> float:
        t0 = self.emission_times[atom]
        return self.speeds[atom] * max(0.0, t - t0)


@dataclass(frozen=True)
class OrderingReport:
    order_before_C: tuple[int, ...]
    order_after_C: tuple[int, ...]
    order_at_D: tuple[int, ...]
    pair12_cross_position: float
    pair34_cross_position: float
    swap14_position: float
    feasible: bool
    violations: tuple[str, ...]


def _overtake_position(cfg: FlightConfig, dt: float) -> float:
    """Where a fast atom catches a slow one emitted dt earlier."""
    return cfg.v * cfg.w * dt / (cfg.w - cfg.v)


def _order_at(cfg: FlightConfig, t: float) -> tuple[int, ...]:
    pos = {a: cfg.position(a, t) for a in (1, 2, 3, 4)}
    # ties broken by emission order: the later atom sits behind
    return tuple(sorted(pos, key=lambda a: (pos[a], -cfg.emission_times[a])))


def kinematics_report(cfg: FlightConfig) -> OrderingReport:
    """Check the flight plan against the ordering requirements at the two
    cavities. Infeasibility is reported, never raised."""
    c_entry, c_exit = cfg.x_C - cfg.L_C / 2.0, cfg.x_C + cfg.L_C / 2.0
    d_entry = cfg.x_D - cfg.L_D / 2.0

    # both pairs share the intra-pair delay tau, so they cross at the
    # same position; the 1-4 swap is driven by the full emission gap
    x12 = _overtake_position(cfg, cfg.tau)
    x34 = _overtake_position(cfg, cfg.tau)
    x14 = _overtake_position(cfg, cfg.emission_times[4])

    t4 = cfg.emission_times[4]
    order_before = _order_at(cfg, t4)
    order_after = _order_at(cfg, t4 + c_exit / cfg.w)  # atom 4 exits cavity C
    order_d = _order_at(cfg, t4 + d_entry / cfg.w)  # atom 4 reaches cavity D

    violations: list[str] = []
    if not c_entry <= x12 <= c_exit:
        violations.append("pair12_cross_outside_C")
    if not c_entry <= x34 <= c_exit:
        violations.append("pair34_cross_outside_C")
    if order_after != (3, 4, 1, 2):
        violations.append("order_after_C_wrong")
    if not c_exit < x14 < d_entry:
        violations.append("swap14_not_between_cavities")
    if order_d != (3, 1, 4, 2):
        violations.append("order_at_D_wrong")
    # atoms 2 and 4 share speed w; they coincide in D only for zero gap
    if cfg.w * (cfg.tau + cfg.tau_prime) <= 0.0:
        violations.append("atoms_2_4_cross_in_D")

    return OrderingReport(
        order_before_C=order_before,
        order_after_C=order_after,
        order_at_D=order_d,
        pair12_cross_position=x12,
        pair34_cross_position=x34,
        swap14_position=x14,
        feasible=not violations,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class DelaySolution:
    feasible: bool
    config: FlightConfig | None = None
    report: OrderingReport | None = None
    binding_constraint: str | None = None


def solve_delays(v: float, w: float, x_C: float, x_D: float,
                 L_C: float, L_D: float) -> DelaySolution:
    """Pick tau so each pair crosses at the cavity-C center and tau_prime
    (by bisection) so the atom-1/atom-4 swap lands midway between the
    cavities; the result is re-validated by kinematics_report."""
    if w - v < MIN_SPEED_GAP:
        return DelaySolution(feasible=False, binding_constraint="speed_gap")
    if not (x_D > x_C > 0.0) or L_C <= 0.0 or L_D <= 0.0:
        return DelaySolution(feasible=False, binding_constraint="geometry")

    tau = x_C * (1.0 / v - 1.0 / w)
    x_mid = ((x_C + L_C / 2.0) + (x_D - L_D / 2.0)) / 2.0

    def swap14(tau_prime: float) -> float:
        return v * w * (2.0 * tau + tau_prime) / (w - v)

    if swap14(0.0) >= x_mid:
        # swap already at or past the midpoint with zero inter-pair delay
        tau_prime = 0.0
    else:
        lo, hi = 0.0, (w - v) * x_mid / (v * w)  # swap14(hi) > x_mid
        while swap14(hi) < x_mid:
            hi *= 2.0
        while hi - lo > BISECTION_TOL * (w - v) / (v * w):
            mid = 0.5 * (lo + hi)
            if swap14(mid) < x_mid:
                lo = mid
            else:
                hi = mid
        tau_prime = 0.5 * (lo + hi)

    cfg = FlightConfig(v=v, w=w, tau=tau, tau_prime=tau_prime,
                       x_C=x_C, x_D=x_D, L_C=L_C, L_D=L_D)
    report = kinematics_report(cfg)
    if not report.feasible:
        return DelaySolution(feasible=False, config=cfg, report=report,
                             binding_constraint=report.violations[0])
    return DelaySolution(feasible=True, config=cfg, report=report)
