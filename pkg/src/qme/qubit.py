"""Two-level system algebra on the Bloch sphere.

States are Bloch vectors ``(x, y, z)`` of ``rho = (1 + x sx + y sy + z sz) / 2``
with ``z = +1`` the excited state. Energies follow the single convention
``E(rho) = (splitting / 2) * z`` in natural units (hbar = k_B = 1).

Measurement bases live on the x-z great circle and are labelled by an angle
``phi``; the ``+`` eigenstate ``cos(phi/2)|e> + sin(phi/2)|g>`` points along
``n_phi = (sin phi, 0, cos phi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qme.exceptions import EngineError

_NORM_SLACK = 1e-12


@dataclass(frozen=True)
class QubitDensity:
    bloch_x: float
    bloch_y: float
    bloch_z: float

    def __post_init__(self):
        if self.norm > 1.0 + _NORM_SLACK:
            raise EngineError(f"Bloch vector norm {self.norm!r} exceeds 1")

    @classmethod
    def from_vector(cls, v) -> QubitDensity:
        x, y, z = (float(c) for c in v)
        return cls(x, y, z)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.bloch_x, self.bloch_y, self.bloch_z])

    @property
    def norm(self) -> float:
        return math.sqrt(self.bloch_x**2 + self.bloch_y**2 + self.bloch_z**2)

    def matrix(self) -> np.ndarray:
        """2x2 density matrix in the (|e>, |g>) basis."""
        x, y, z = self.bloch_x, self.bloch_y, self.bloch_z
        return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]])


EXCITED = QubitDensity(0.0, 0.0, 1.0)
GROUND = QubitDensity(0.0, 0.0, -1.0)
PLUS = QubitDensity(1.0, 0.0, 0.0)
MINUS = QubitDensity(-1.0, 0.0, 0.0)
MAXIMALLY_MIXED = QubitDensity(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class QubitHamiltonian:
    splitting: float

    def __post_init__(self):
        if not self.splitting > 0:
            raise EngineError(f"splitting must be positive, got {self.splitting!r}")


@dataclass(frozen=True)
class MeasurementBasis:
    angle: float

    def __post_init__(self):
        if not 0.0 <= self.angle <= math.pi:
            raise EngineError(f"basis angle must lie in [0, pi], got {self.angle!r}")

    @property
    def axis(self) -> np.ndarray:
        return np.array([math.sin(self.angle), 0.0, math.cos(self.angle)])


ENERGY_BASIS = MeasurementBasis(0.0)
X_BASIS = MeasurementBasis(math.pi / 2)


@dataclass(frozen=True)
class ThermalParams:
    temperature: float

    def __post_init__(self):
        if not self.temperature >= 0:
            raise EngineError(f"temperature must be >= 0, got {self.temperature!r}")


def energy(state: QubitDensity, ham: QubitHamiltonian) -> float:
    return 0.5 * ham.splitting * state.bloch_z


def rotate_about_y(state: QubitDensity, angle: float) -> QubitDensity:
    """Rotate the Bloch vector by ``angle`` in the x-z plane.

    A positive angle carries the north pole toward +x, so rotating the
    state ``|e>`` by ``phi`` lands on the basis axis ``n_phi``.
    """
    c, s = math.cos(angle), math.sin(angle)
    x, z = state.bloch_x, state.bloch_z
    return QubitDensity(x * c + z * s, state.bloch_y, z * c - x * s)


def projective_measure(state: QubitDensity, basis: MeasurementBasis):
    """Read-out measurement along ``basis``.

    Returns
    -------
    p_plus : float
        Probability of the ``+`` outcome.
    post_plus, post_minus : QubitDensity
        Pure post-measurement states ``+n_phi`` and ``-n_phi``.
    """
    n = basis.axis
    p_plus = 0.5 * (1.0 + float(np.dot(state.vector, n)))
    p_plus = min(1.0, max(0.0, p_plus))
    return p_plus, QubitDensity.from_vector(n), QubitDensity.from_vector(-n)


def unread_measure(state: QubitDensity, basis: MeasurementBasis) -> QubitDensity:
    """Measurement with discarded outcome: project the Bloch vector on the axis."""
    n = basis.axis
    return QubitDensity.from_vector(float(np.dot(state.vector, n)) * n)


def thermal_z(ham: QubitHamiltonian, thermal: ThermalParams) -> float:
    if thermal.temperature == 0:
        return -1.0
    return -math.tanh(ham.splitting / (2.0 * thermal.temperature))


def thermal_state(ham: QubitHamiltonian, thermal: ThermalParams) -> QubitDensity:
    return QubitDensity(0.0, 0.0, thermal_z(ham, thermal))


def shannon_entropy(p: float) -> float:
    """Binary Shannon entropy in nats, with ``0 ln 0 = 0``."""
    if not 0.0 <= p <= 1.0:
        raise EngineError(f"probability must lie in [0, 1], got {p!r}")
    if p == 0.0 or p == 1.0:
        return 0.0
    # log1p keeps precision when p is within rounding of 0 or 1
    return -p * math.log(p) - (1.0 - p) * math.log1p(-p)
