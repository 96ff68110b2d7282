"""Feedback-free qubit engines powered by unread measurements.

Every energy below is an energy difference of the qubit state across a
stroke, evaluated with :func:`qme.qubit.energy`; nothing is taken from
closed-form expressions. Signs: work or heat entering the qubit is positive.

Closed forms under ``E = (eps/2) z`` with thermal ``z_th < 0``:

* 4-stroke: ``W1 = -eps z_th sin^2(theta/2)``, ``E_M = -(eps/2) z_th cos(theta)``,
  ``W2 = (eps/2) z_th sin(theta)``, ``Q = (eps/2) z_th (1 - sin(theta))``,
  ``eta = (cos + sin - 1) / cos``.
* 3-stroke: ``E_M = -(eps/2) z_th sin^2(phi)``,
  ``W2 = (eps/2) z_th cos(phi) (1 - cos(phi))``, ``eta = cos(phi) / (1 + cos(phi))``,
  which tends to 1/2 as phi -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from qme import qubit
from qme._parallel import parallel_map
from qme.exceptions import EngineError

CSV_COLUMNS = ("angle_rad", "W1", "EM", "W2", "Q", "eta")
OTTO_COLUMNS = ("omega_i", "omega_f", "W1", "EM", "W2", "Q", "eta", "eta_otto")


@dataclass(frozen=True)
class StrokeCycleRecord:
    angle: float
    w1: float
    e_m: float
    w2: float
    q: float
    eta: float
    states: tuple

    @property
    def first_law_residual(self) -> float:
        return self.w1 + self.e_m + self.w2 + self.q

    def scaled(self, unit: float) -> StrokeCycleRecord:
        return StrokeCycleRecord(self.angle, self.w1 / unit, self.e_m / unit, self.w2 / unit,
                                 self.q / unit, self.eta, self.states)

    def row(self):
        return (self.angle, self.w1, self.e_m, self.w2, self.q, self.eta)


def otto_efficiency(omega_i: float, omega_f: float) -> float:
    if not 0 < omega_i <= omega_f:
        raise EngineError(f"need 0 < omega_i <= omega_f, got {omega_i!r}, {omega_f!r}")
    return 1.0 - omega_i / omega_f


def _thermal(eps, temperature):
    if not temperature > 0:
        raise EngineError(f"temperature must be positive, got {temperature!r}")
    ham = qubit.QubitHamiltonian(eps)
    return ham, qubit.thermal_state(ham, qubit.ThermalParams(temperature))


def run_four_stroke(rho0: qubit.QubitDensity, theta: float, ham: qubit.QubitHamiltonian) -> StrokeCycleRecord:
    """Rotate by theta, unread sigma_x measurement, rotate by -pi/2, thermalize to rho0.

    ``eta`` is NaN at exactly theta = pi/2, where it tends to 1.
    """
    if not 0 < theta <= math.pi / 2:
        raise EngineError(f"theta must lie in (0, pi/2], got {theta!r}")
    rho1 = qubit.rotate_about_y(rho0, theta)
    rho2 = qubit.unread_measure(rho1, qubit.X_BASIS)
    rho3 = qubit.rotate_about_y(rho2, -math.pi / 2)
    e = [qubit.energy(r, ham) for r in (rho0, rho1, rho2, rho3)]
    w1, e_m, w2, q = e[1] - e[0], e[2] - e[1], e[3] - e[2], e[0] - e[3]
    # at theta = pi/2 the measurement delivers nothing and eta is 0/0
    eta = -(w1 + w2) / e_m if e_m != 0 else math.nan
    return StrokeCycleRecord(theta, w1, e_m, w2, q, eta, (rho0, rho1, rho2, rho3))


def four_stroke(theta: float, eps: float, temperature: float) -> StrokeCycleRecord:
    ham, rho0 = _thermal(eps, temperature)
    return run_four_stroke(rho0, theta, ham)


def run_three_stroke(rho0: qubit.QubitDensity, phi: float, ham: qubit.QubitHamiltonian) -> StrokeCycleRecord:
    """Unread measurement along n_phi, rotation by -phi onto the z axis, thermalization.

    The record has ``w1 = 0``.
    """
    if not 0 < phi < math.pi / 2:
        raise EngineError(f"phi must lie in (0, pi/2), got {phi!r}")
    rho1 = qubit.unread_measure(rho0, qubit.MeasurementBasis(phi))
    rho2 = qubit.rotate_about_y(rho1, -phi)
    e = [qubit.energy(r, ham) for r in (rho0, rho1, rho2)]
    e_m, w2, q = e[1] - e[0], e[2] - e[1], e[0] - e[2]
    return StrokeCycleRecord(phi, 0.0, e_m, w2, q, -w2 / e_m, (rho0, rho1, rho2))


def three_stroke(phi: float, eps: float, temperature: float) -> StrokeCycleRecord:
    ham, rho0 = _thermal(eps, temperature)
    return run_three_stroke(rho0, phi, ham)


def otto_four_stroke(omega_i: float, omega_f: float, temperature: float) -> StrokeCycleRecord:
    """Level-spacing compression omega_i -> omega_f, unread sigma_x measurement, expansion, thermalization.

    With the symmetric convention ``E = (omega/2) z`` the compression stroke
    lowers the energy of a ground-dominated state, so ``w1 <= 0`` here; only
    the efficiency is comparable with the coherent cycle.
    """
    otto_efficiency(omega_i, omega_f)
    ham_i, rho0 = _thermal(omega_i, temperature)
    ham_f = qubit.QubitHamiltonian(omega_f)
    rho2 = qubit.unread_measure(rho0, qubit.X_BASIS)
    w1 = qubit.energy(rho0, ham_f) - qubit.energy(rho0, ham_i)
    e_m = qubit.energy(rho2, ham_f) - qubit.energy(rho0, ham_f)
    w2 = qubit.energy(rho2, ham_i) - qubit.energy(rho2, ham_f)
    q = qubit.energy(rho0, ham_i) - qubit.energy(rho2, ham_i)
    return StrokeCycleRecord(0.0, w1, e_m, w2, q, -(w1 + w2) / e_m, (rho0, rho0, rho2, rho2))


def sweep_angles(steps: int) -> list[float]:
    """``steps`` interior angles evenly covering the open interval (0, pi/2)."""
    if steps < 1:
        raise EngineError("need at least one angle")
    return [0.5 * math.pi * k / (steps + 1) for k in range(1, steps + 1)]


def stroke_sweep(kind: str, angles, eps: float, temperature: float, workers: int | None = None) -> list[StrokeCycleRecord]:
    """Records with energies in units of ``eps * |z_th|``."""
    angles = list(angles)
    if not angles:
        raise EngineError("angle grid is empty")
    runners = {"four": run_four_stroke, "three": run_three_stroke}
    if kind not in runners:
        raise EngineError(f"kind must be 'four' or 'three', got {kind!r}")
    ham, rho0 = _thermal(eps, temperature)
    unit = eps * abs(rho0.bloch_z)
    run = runners[kind]
    return parallel_map(lambda a: run(rho0, a, ham).scaled(unit), angles, workers)
