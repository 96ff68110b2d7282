"""Feedback qubit engine: measure in the |+/-> basis, extract with a conditional pulse.

Sign convention: work leaving the qubit is negative. The memory holding the
outcome is erased at the Landauer cost ``T * S_M`` (nats, k_B = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from qme import qubit
from qme._parallel import parallel_map
from qme.exceptions import EngineError


@dataclass(frozen=True)
class FeedbackCycleMetrics:
    theta: float
    work_extracted: float
    quantum_heat: float
    outcome_entropy: float
    reset_cost: float
    efficiency: float
    cycle_power: float


def _check(eps, temperature):
    ham = qubit.QubitHamiltonian(eps)
    thermal = qubit.ThermalParams(temperature)
    return ham, thermal


def _metrics(theta, work, heat, entropy, temperature):
    reset = temperature * entropy
    return FeedbackCycleMetrics(
        theta=theta,
        work_extracted=work,
        quantum_heat=heat,
        outcome_entropy=entropy,
        reset_cost=reset,
        efficiency=-(work + reset) / heat,
        cycle_power=abs(work) / theta,
    )


def full_cycle(eps: float, temperature: float) -> FeedbackCycleMetrics:
    """One cycle from |g>: |+/-> measurement, then a +/-pi/2 feedback pulse."""
    ham, _ = _check(eps, temperature)
    start = qubit.GROUND
    p_plus, post_plus, post_minus = qubit.projective_measure(start, qubit.X_BASIS)
    e_before = qubit.energy(start, ham)
    heat = (
        p_plus * qubit.energy(post_plus, ham)
        + (1 - p_plus) * qubit.energy(post_minus, ham)
        - e_before
    )
    # outcome-conditioned pulse sign; both branches land on |g>
    work_plus = qubit.energy(qubit.rotate_about_y(post_plus, math.pi / 2), ham) - qubit.energy(post_plus, ham)
    work_minus = qubit.energy(qubit.rotate_about_y(post_minus, -math.pi / 2), ham) - qubit.energy(post_minus, ham)
    work = p_plus * work_plus + (1 - p_plus) * work_minus
    entropy = qubit.shannon_entropy(p_plus)
    return _metrics(math.pi / 2, work, heat, entropy, temperature)


def zeno_cycle(eps: float, temperature: float, theta: float) -> FeedbackCycleMetrics:
    """Steady partial-extraction cycle: rotate |+> by ``theta``, re-measure.

    ``cycle_power`` is |W| / theta, taking the pulse duration proportional to
    the rotation angle.
    """
    ham, _ = _check(eps, temperature)
    if not 0.0 < theta <= math.pi / 2:
        raise EngineError(f"theta must lie in (0, pi/2], got {theta!r}")
    start = qubit.PLUS
    rotated = qubit.rotate_about_y(start, theta)
    work = qubit.energy(rotated, ham) - qubit.energy(start, ham)
    p_plus, post_plus, post_minus = qubit.projective_measure(rotated, qubit.X_BASIS)
    heat = (
        p_plus * qubit.energy(post_plus, ham)
        + (1 - p_plus) * qubit.energy(post_minus, ham)
        - qubit.energy(rotated, ham)
    )
    # entropy is symmetric in p; sin^2(theta/2) avoids cancellation in 1 - p
    entropy = qubit.shannon_entropy(math.sin(theta / 2) ** 2)
    return _metrics(theta, work, heat, entropy, temperature)


def zeno_sweep(eps: float, temperature: float, thetas, workers: int | None = None) -> list[FeedbackCycleMetrics]:
    thetas = list(thetas)
    if not thetas:
        raise EngineError("theta list is empty")
    return parallel_map(lambda t: zeno_cycle(eps, temperature, t), thetas, workers)
