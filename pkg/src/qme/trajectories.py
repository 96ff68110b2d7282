"""Seeded Monte Carlo over engine cycles.

Outcomes are drawn from numpy's Philox4x32-10 counter-based generator seeded
with the 64-bit ``seed``: one uniform double per cycle, outcome 0 when the
uniform is below the success probability. The same (seed, parameters) always
reproduce the same record bit for bit.

Outcome 0 is the "success" branch in both engines: the piston is inserted,
or the feedback qubit engine re-prepares the state it held before the pulse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qme import piston, qubit
from qme.exceptions import EngineError

CSV_COLUMNS = ("cycle_index", "outcome", "cum_work", "cum_heat")
DEFAULT_SEED = 20190601


@dataclass(frozen=True, eq=False)
class TrajectoryRecord:
    seed: int
    outcomes: np.ndarray
    work: np.ndarray
    heat: np.ndarray

    @property
    def n_cycles(self) -> int:
        return len(self.outcomes)

    @property
    def cum_work(self) -> np.ndarray:
        return np.cumsum(self.work)

    @property
    def cum_heat(self) -> np.ndarray:
        return np.cumsum(self.heat)

    @property
    def empirical_work(self) -> float:
        return float(np.mean(self.work))

    @property
    def empirical_heat(self) -> float:
        return float(np.mean(self.heat))

    @property
    def empirical_p_success(self) -> float:
        return float(np.mean(self.outcomes == 0))

    def rows(self):
        cw, ch = self.cum_work, self.cum_heat
        for i in range(self.n_cycles):
            yield i, int(self.outcomes[i]), cw[i], ch[i]


def make_rng(seed: int) -> np.random.Generator:
    if not 0 <= seed < 2**64:
        raise EngineError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    return np.random.Generator(np.random.Philox(seed))


def _draw(p_success: float, n_cycles: int, seed: int) -> np.ndarray:
    if n_cycles < 1:
        raise EngineError(f"n_cycles must be >= 1, got {n_cycles!r}")
    u = make_rng(seed).random(n_cycles)
    return np.where(u < p_success, 0, 1).astype(np.int8)


def run_piston_trajectories(eps_over_L: float, n_cycles: int, seed: int = DEFAULT_SEED,
                            metrics: piston.PistonCycleMetrics | None = None) -> TrajectoryRecord:
    """Work ``dE`` is booked only on successes, heat ``Q / P1`` only on failures (units of E_g).

    ``metrics`` may carry a precomputed quadrature ledger for ``eps_over_L``.
    """
    if metrics is None:
        metrics = piston.numeric_metrics(eps_over_L)
    elif metrics.eps_over_L != eps_over_L:
        raise EngineError("metrics were computed for a different eps/L")
    p0, gain, _ = piston.analytic_metrics(eps_over_L)
    heat_quantum = metrics.dissipated_heat / (1.0 - p0)
    outcomes = _draw(p0, n_cycles, seed)
    success = outcomes == 0
    work = np.where(success, gain, 0.0)
    heat = np.where(success, 0.0, heat_quantum)
    return TrajectoryRecord(seed, outcomes, work, heat)


def run_feedback_trajectories(theta: float, eps: float, n_cycles: int, seed: int = DEFAULT_SEED) -> TrajectoryRecord:
    """Outcome chain of the partial-extraction qubit engine.

    Each cycle rotates the current |+/-> state by +/-theta (sign from the
    last outcome), booking the extracted work (negative), then re-measures,
    booking the measurement energy as heat. Outcome 0 means the same state
    was prepared again.
    """
    if not 0 < theta <= math.pi / 2:
        raise EngineError(f"theta must lie in (0, pi/2], got {theta!r}")
    ham = qubit.QubitHamiltonian(eps)
    branch = {}
    for start, sign in ((qubit.PLUS, 1.0), (qubit.MINUS, -1.0)):
        rotated = qubit.rotate_about_y(start, sign * theta)
        p_plus, post_plus, post_minus = qubit.projective_measure(rotated, qubit.X_BASIS)
        p_repeat = p_plus if sign > 0 else 1.0 - p_plus
        work = qubit.energy(rotated, ham) - qubit.energy(start, ham)
        heat = p_plus * qubit.energy(post_plus, ham) + (1 - p_plus) * qubit.energy(post_minus, ham) - qubit.energy(rotated, ham)
        branch[sign] = (p_repeat, work, heat)
    # both starting states give identical statistics and energetics
    p_repeat, work, heat = branch[1.0]
    if not np.allclose(branch[1.0], branch[-1.0], rtol=0, atol=1e-15):
        raise EngineError("feedback branches are not symmetric")
    outcomes = _draw(p_repeat, n_cycles, seed)
    return TrajectoryRecord(seed, outcomes, np.full(n_cycles, work), np.full(n_cycles, heat))
