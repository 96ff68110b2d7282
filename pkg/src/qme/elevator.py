"""Elevator engine: a particle in ``V = F x`` resting on a movable floor.

A soft position measurement asks whether the particle is within ``eps`` of
the floor. On the "no" outcome the floor is raised by ``eps`` for free and
the particle gains ``F * eps`` of potential energy; any remaining excitation
relaxes in a zero-temperature bath. Results are in units of ``x0`` and
``F * x0``.
"""

from __future__ import annotations

from dataclasses import dataclass

from qme import continuum as cm
from qme._parallel import parallel_map
from qme.exceptions import EngineError

# span of the grid above the lifted floor, in units of x0
SPAN_X0 = 14.0

CSV_COLUMNS = ("eps_over_x0", "w_over_x0", "p_success", "fidelity", "residual_over_Fx0", "heat_over_Fx0", "eta")


@dataclass(frozen=True)
class ElevatorCycleMetrics:
    eps_over_x0: float
    w_over_x0: float
    p_success: float
    fidelity: float
    overlap_squared: float
    lift_work: float
    residual_excitation: float
    failure_heat: float
    quantum_heat_input: float
    efficiency: float

    def row(self):
        return (self.eps_over_x0, self.w_over_x0, self.p_success, self.fidelity,
                self.residual_excitation, self.failure_heat, self.efficiency)


def elevator_grid(params: cm.LinearPotentialParams, eps: float, w: float, n_points: int = cm.DEFAULT_POINTS) -> cm.Grid:
    x0 = params.length_scale
    span = max(w, eps + SPAN_X0 * x0)
    return cm.Grid.stretched(0.0, span, n_points, node=eps, even=True)


def cycle_metrics(params: cm.LinearPotentialParams, eps: float, w: float, grid: cm.Grid | None = None) -> ElevatorCycleMetrics:
    """Single elevator cycle; ``eps`` and ``w`` are absolute lengths.

    The lifted-floor ground state is re-solved on ``[eps, x_max]`` rather
    than translated, so the success-branch fidelity is an independent check.
    ``fidelity`` is the pure-state fidelity ``|<phi0|psi_lifted>|``;
    ``overlap_squared`` is its square (the transition probability).
    """
    if not 0 < eps < w:
        raise EngineError(f"need 0 < eps < w, got eps={eps!r}, w={w!r}")
    if grid is None:
        grid = elevator_grid(params, eps, w)
    if grid.node_index(eps) is None:
        raise EngineError(f"eps={eps!r} must sit on a grid node")
    unit = params.energy_scale
    x0 = params.length_scale

    def energy(psi):
        return (cm.kinetic_energy(psi, params.mass, extrapolate=True)
                + cm.potential_energy(psi, lambda x: params.force * x)) / unit

    ground, _ = cm.linear_potential_ground(params, grid)
    lifted, _ = cm.linear_potential_ground(params, grid, floor=eps)
    pair = cm.elevator_kraus(eps, w, grid)
    p0, phi0 = cm.apply_kraus(ground, pair, 0)
    p1, phi1 = cm.apply_kraus(ground, pair, 1)

    overlap = phi0.overlap(lifted)
    e_ground = energy(ground)
    e0, e1 = energy(phi0), energy(phi1)
    e_q = p0 * e0 + p1 * e1 - e_ground
    lift = params.force * eps / unit
    return ElevatorCycleMetrics(
        eps_over_x0=eps / x0,
        w_over_x0=w / x0,
        p_success=p0,
        fidelity=abs(overlap),
        overlap_squared=overlap**2,
        lift_work=lift,
        residual_excitation=e0 - energy(lifted),
        failure_heat=e1 - e_ground,
        quantum_heat_input=e_q,
        efficiency=p0 * lift / e_q,
    )


def window_sweep(params: cm.LinearPotentialParams, eps: float, w_values, n_points: int = cm.DEFAULT_POINTS,
                 workers: int | None = None) -> list[ElevatorCycleMetrics]:
    w_values = list(w_values)
    if not w_values:
        raise EngineError("window grid is empty")
    return parallel_map(
        lambda w: cycle_metrics(params, eps, w, elevator_grid(params, eps, w, n_points)), w_values, workers
    )
