"""Finite-shot concurrence estimation with the global electron-shelving
readout: one yes/no bit per shot (total darkness = all ions ground)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import statevec
from .concurrence import PureState
from .protocol import run_circuit

# Phi^-1(0.975), for the 95% Wilson score interval
_Z95 = 1.959963984540054


@dataclass(frozen=True)
class ReadoutModel:
    """p_dark: per-ion missed-detection probability for an excited ion;
    p_bright_false: spurious fluorescence on an all-ground register.
    Defaults give the ideal binary readout."""

    p_dark: float = 0.0
    p_bright_false: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.p_dark <= 1.0 and 0.0 <= self.p_bright_false <= 1.0):
            raise ValueError("readout probabilities must lie in [0, 1]")

    def no_fluorescence_probability(self, outcome: str) -> float:
        """Chance the global readout stays dark for a given true outcome."""
        n_excited = outcome.count("e")
        if n_excited == 0:
            return 1.0 - self.p_bright_false
        return self.p_dark**n_excited


@dataclass(frozen=True)
class ShotSummary:
    n_shots: int
    n_no_fluorescence: int
    p_hat: float
    c_hat: float
    ci_low: float
    ci_high: float


def shelving_readout(outcome: str, model: ReadoutModel,
                     rng: np.random.Generator) -> bool:
    """Single-shot global readout: True means no fluorescence observed."""
    if len(outcome) != 4 or any(ch not in "ge" for ch in outcome):
        raise ValueError(f"outcome must be a 4-letter g/e string, got {outcome!r}")
    p = model.no_fluorescence_probability(outcome)
    if p == 1.0:
        return True
    if p == 0.0:
        return False
    return bool(rng.random() < p)


def concurrence_from_probability(p: float) -> float:
    """2*sqrt(2*max(0,p)) clamped to [0,1]; tolerant of noisy p > 1/8."""
    return min(1.0, 2.0 * math.sqrt(2.0 * max(0.0, p)))


def wilson_interval(k: int, n: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval on a binomial proportion."""
    if n < 1 or not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n with n >= 1")
    # at the extremes one endpoint is exactly 0 or 1; snap past roundoff
    if k == 0:
        return 0.0, _wilson_raw(0, n, z)[1]
    if k == n:
        return _wilson_raw(n, n, z)[0], 1.0
    return _wilson_raw(k, n, z)


def _wilson_raw(k: int, n: int, z: float) -> tuple[float, float]:
    p_hat = k / n
    denom = 1.0 + z * z / n
    center = (p_hat + z * z / (2 * n)) / denom
    margin = (z / denom) * math.sqrt(p_hat * (1 - p_hat) / n + z * z / (4 * n * n))
    return max(0.0, center - margin), min(1.0, center + margin)


def confidence_interval(k: int, n: int) -> tuple[float, float]:
    """95% interval on the concurrence, from the Wilson interval on the
    no-fluorescence probability mapped through the monotone 2*sqrt(2p)."""
    p_low, p_high = wilson_interval(k, n)
    return concurrence_from_probability(p_low), concurrence_from_probability(p_high)


def simulate_shots(psi: PureState, n: int, model: ReadoutModel = ReadoutModel(),
                   seed: int = 0) -> ShotSummary:
    """Sample n protocol shots and summarize the yes/no readout record.

    Equivalent to calling shelving_readout per shot: outcomes are drawn
    multinomially from the Born distribution, then each outcome class is
    thinned binomially by its readout dark probability.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    result = run_circuit(psi)
    probs = np.abs(result.final_state.amplitudes) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(n, probs)
    k = 0
    for i, c in enumerate(counts):
        if c == 0:
            continue
        q = model.no_fluorescence_probability(statevec.basis_string(i, 4))
        if q == 1.0:
            k += int(c)
        elif q > 0.0:
            k += int(rng.binomial(int(c), q))
    p_hat = k / n
    ci_low, ci_high = confidence_interval(k, n)
    return ShotSummary(
        n_shots=n,
        n_no_fluorescence=k,
        p_hat=p_hat,
        c_hat=concurrence_from_probability(p_hat),
        ci_low=ci_low,
        ci_high=ci_high,
    )
