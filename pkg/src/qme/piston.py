"""Atom-and-piston engine.

A box ground state is measured with the piston Kraus pair. On success the
piston is pushed in by ``eps`` at no cost and the particle, already in the
new ground state, expands it adiabatically back to ``L``; on failure the
disturbed state relaxes to the ground state in a zero-temperature bath.
Energies are in units of ``E_g`` and lengths in units of ``L``.
"""

from __future__ import annotations

from dataclasses import dataclass

from qme import continuum as cm
from qme._parallel import parallel_map
from qme.exceptions import ConsistencyError, EngineError

MAX_EPS = 0.9
CHECK_TOL = 1e-5

CSV_COLUMNS = ("eps_over_L", "P0", "dE_over_Eg", "W_over_Eg", "Q_over_Eg", "Eq_over_Eg", "eta")


@dataclass(frozen=True)
class PistonCycleMetrics:
    eps_over_L: float
    p_success: float
    energy_gain: float
    average_work: float
    dissipated_heat: float
    quantum_heat_input: float
    efficiency: float

    def row(self):
        return (self.eps_over_L, self.p_success, self.energy_gain, self.average_work,
                self.dissipated_heat, self.quantum_heat_input, self.efficiency)


def analytic_metrics(eps_over_L: float):
    """Closed-form ``(P0, dE, W)`` in units of ``E_g``."""
    if not 0.0 < eps_over_L < 1.0:
        raise EngineError(f"eps/L must lie in (0, 1), got {eps_over_L!r}")
    s = 1.0 - eps_over_L
    p0 = s**3
    gain = s**-2 - 1.0
    work = s * (1.0 - s**2)
    return p0, gain, work


def piston_grid(eps_over_L: float, n_points: int = cm.DEFAULT_POINTS) -> cm.Grid:
    return cm.Grid.aligned(0.0, 1.0, n_points, nodes=(eps_over_L,), even=True)


def numeric_metrics(eps_over_L: float, grid: cm.Grid | None = None) -> PistonCycleMetrics:
    """Quadrature evaluation of the cycle ledger, checked against closed forms.

    Raises ConsistencyError when P0, dE or W drift from their closed forms
    by more than 1e-5 (relative once the value exceeds one ``E_g``).
    """
    if not 0.0 < eps_over_L <= MAX_EPS:
        raise EngineError(f"eps/L must lie in (0, {MAX_EPS}], got {eps_over_L!r}")
    if grid is None:
        grid = piston_grid(eps_over_L)
    box = cm.BoxParams(1.0, 1.0)
    e_g = box.ground_energy
    psi = cm.box_ground_state(box, grid)
    pair = cm.piston_kraus(box, eps_over_L, grid)
    p0, phi0 = cm.apply_kraus(psi, pair, 0)
    p1, phi1 = cm.apply_kraus(psi, pair, 1)
    e0 = cm.kinetic_energy(phi0, extrapolate=True) / e_g
    e1 = cm.kinetic_energy(phi1, extrapolate=True) / e_g
    e_start = cm.kinetic_energy(psi, extrapolate=True) / e_g

    gain = e0 - e_start
    work = p0 * gain
    heat = p1 * e1 - p1 * e_start
    e_q = p0 * e0 + p1 * e1 - e_start

    p0_exact, gain_exact, work_exact = analytic_metrics(eps_over_L)
    for name, got, want in (("P0", p0, p0_exact), ("dE", gain, gain_exact), ("W", work, work_exact)):
        if abs(got - want) > CHECK_TOL * max(1.0, abs(want)):
            raise ConsistencyError(
                f"{name} quadrature {got:.10g} vs closed form {want:.10g} at eps/L={eps_over_L}",
                parameter="eps_over_L",
            )
    return PistonCycleMetrics(
        eps_over_L=eps_over_L,
        p_success=p0,
        energy_gain=gain,
        average_work=work,
        dissipated_heat=heat,
        quantum_heat_input=e_q,
        efficiency=work / (work + heat),
    )


def sweep(eps_values, n_points: int = cm.DEFAULT_POINTS, workers: int | None = None) -> list[PistonCycleMetrics]:
    eps_values = list(eps_values)
    if not eps_values:
        raise EngineError("eps grid is empty")
    return parallel_map(lambda a: numeric_metrics(a, piston_grid(a, n_points)), eps_values, workers)
