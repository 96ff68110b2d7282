"""Grid-sampled 1D wavefunctions, position-space Kraus pairs and energies.

Everything is real-valued and uses hbar = 1. Kinetic energies come from the
first-derivative form ``(1/2m) * integral |psi'|^2`` evaluated with
half-node differences, which stays second-order accurate when ``psi`` has a
derivative kink at a grid node (the measurement windows produce such kinks).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.integrate import simpson
from scipy.linalg import LinAlgError, eigh_tridiagonal

from qme.exceptions import ConvergenceError, DegenerateBranchError, EngineError, InvalidPOVMError

MIN_POINTS = 64
DEFAULT_POINTS = 4096
COMPLETENESS_TOL = 1e-12
_BRANCH_FLOOR = 1e-14


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    n_points: int = DEFAULT_POINTS

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise EngineError(f"empty grid interval [{self.x_min}, {self.x_max}]")
        if self.n_points < MIN_POINTS:
            raise EngineError(f"grid needs at least {MIN_POINTS} points, got {self.n_points}")

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @cached_property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def node_index(self, position: float, tol: float = 1e-9) -> int | None:
        """Index of the node at ``position``, or None if it falls between nodes."""
        k = (position - self.x_min) / self.spacing
        i = round(k)
        if abs(k - i) <= tol and 0 <= i < self.n_points:
            return int(i)
        return None

    @classmethod
    def aligned(cls, x_min, x_max, n_points=DEFAULT_POINTS, nodes=(), even=False, max_extra=4096):
        """Uniform grid on a fixed interval with ``nodes`` on grid points if possible.

        Tries every interval count from ``n_points - 1`` up to
        ``n_points - 1 + max_extra``; falls back to ``n_points`` when the node
        positions are incommensurate with the interval. With ``even`` the
        interval count and every node index are even, so the nodes survive
        subsampling to every other point.
        """
        span = x_max - x_min
        fracs = [(p - x_min) / span for p in nodes]
        step = 2 if even else 1
        for n_int in range(n_points - 1, n_points + max_extra):
            if n_int % step:
                continue
            if all(abs(f * n_int - round(f * n_int)) <= 1e-9 and round(f * n_int) % step == 0 for f in fracs):
                return cls(x_min, x_max, n_int + 1)
        return cls(x_min, x_max, n_points)

    @classmethod
    def stretched(cls, x_min, min_span, n_points, node, even=False):
        """Grid starting at ``x_min`` whose spacing divides ``node - x_min``.

        The upper end is pushed out (never in) so the span is at least
        ``min_span``. ``even`` has the same meaning as in :meth:`aligned`.
        """
        step = 2 if even else 1
        h = min_span / (n_points - 1)
        k = max(step, step * round((node - x_min) / (h * step)))
        h = (node - x_min) / k
        n_int = math.ceil(min_span / h - 1e-9)
        n_int += n_int % step
        return cls(x_min, x_min + n_int * h, n_int + 1)


def integrate(values, grid: Grid) -> float:
    return float(simpson(values, dx=grid.spacing))


@dataclass(frozen=True, eq=False)
class Wavefunction:
    grid: Grid
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=float)
        if amps.shape != (self.grid.n_points,):
            raise EngineError(f"expected {self.grid.n_points} amplitudes, got shape {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def norm_squared(self) -> float:
        return integrate(self.amplitudes**2, self.grid)

    def normalized(self) -> Wavefunction:
        return Wavefunction(self.grid, self.amplitudes / math.sqrt(self.norm_squared()))

    def overlap(self, other: Wavefunction) -> float:
        _check_same_grid(self.grid, other.grid)
        return integrate(self.amplitudes * other.amplitudes, self.grid)

    def to_csv(self, path) -> None:
        """Write two columns ``x, amplitude`` with a header row."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "amplitude"])
            for xi, ai in zip(self.x, self.amplitudes):
                writer.writerow([f"{xi:.12g}", f"{ai:.12g}"])


@dataclass(frozen=True, eq=False)
class KrausPair:
    grid: Grid
    m0: np.ndarray
    m1: np.ndarray

    def __post_init__(self):
        m0 = np.asarray(self.m0, dtype=float)
        m1 = np.asarray(self.m1, dtype=float)
        if m0.shape != (self.grid.n_points,) or m1.shape != m0.shape:
            raise InvalidPOVMError("Kraus functions must be sampled on the grid")
        if m0.min() < 0 or m1.min() < 0 or m0.max() > 1 or m1.max() > 1:
            raise InvalidPOVMError("Kraus functions must lie in [0, 1]")
        err = self.completeness_error(m0, m1)
        if err > COMPLETENESS_TOL:
            raise InvalidPOVMError(f"completeness violated by {err:.3e}")
        object.__setattr__(self, "m0", m0)
        object.__setattr__(self, "m1", m1)

    @staticmethod
    def completeness_error(m0, m1) -> float:
        return float(np.max(np.abs(m0**2 + m1**2 - 1.0)))

    @classmethod
    def from_m0(cls, grid: Grid, m0) -> KrausPair:
        m0 = np.asarray(m0, dtype=float)
        # factored form keeps m1 accurate where m0 -> 1
        m1 = np.sqrt(np.clip((1.0 - m0) * (1.0 + m0), 0.0, None))
        return cls(grid, m0, m1)


@dataclass(frozen=True)
class BoxParams:
    length: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if not (self.length > 0 and self.mass > 0):
            raise EngineError("box length and mass must be positive")

    @property
    def ground_energy(self) -> float:
        return math.pi**2 / (2 * self.mass * self.length**2)


@dataclass(frozen=True)
class LinearPotentialParams:
    force: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if not (self.force > 0 and self.mass > 0):
            raise EngineError("force and mass must be positive")

    @property
    def length_scale(self) -> float:
        """x0 = (hbar^2 / 2 m F)^(1/3)."""
        return (1.0 / (2 * self.mass * self.force)) ** (1.0 / 3.0)

    @property
    def energy_scale(self) -> float:
        return self.force * self.length_scale


def _check_same_grid(a: Grid, b: Grid):
    if a != b:
        raise EngineError("wavefunction and operator live on different grids")


def _check_box_grid(box: BoxParams, grid: Grid):
    tol = 1e-12 * box.length
    if abs(grid.x_min) > tol or abs(grid.x_max - box.length) > tol:
        raise EngineError(f"grid [{grid.x_min}, {grid.x_max}] does not span the box [0, {box.length}]")


def box_ground_state(box: BoxParams, grid: Grid) -> Wavefunction:
    _check_box_grid(box, grid)
    L = box.length
    amps = math.sqrt(2 / L) * np.sin(np.pi * grid.x / L)
    amps[0] = amps[-1] = 0.0
    return Wavefunction(grid, amps)


def shifted_box_ground_state(box: BoxParams, eps: float, grid: Grid) -> Wavefunction:
    """Ground state of the box with the piston pushed in to ``x = eps``."""
    _check_box_grid(box, grid)
    L = box.length
    if not 0 < eps < L:
        raise EngineError(f"piston offset must lie in (0, {L}), got {eps!r}")
    x = grid.x
    amps = np.zeros_like(x)
    inside = x > eps
    amps[inside] = math.sqrt(2 / (L - eps)) * np.sin(np.pi * (x[inside] - eps) / (L - eps))
    amps[-1] = 0.0
    return Wavefunction(grid, amps)


def piston_kraus(box: BoxParams, eps: float, grid: Grid) -> KrausPair:
    """Measurement whose success branch maps the box ground state onto the shifted one."""
    _check_box_grid(box, grid)
    L = box.length
    if not 0 < eps < L:
        raise EngineError(f"piston offset must lie in (0, {L}), got {eps!r}")
    x = grid.x
    m0 = np.zeros_like(x)
    mid = (x > eps) & (x < L)
    m0[mid] = (L - eps) * np.sin(np.pi * (x[mid] - eps) / (L - eps)) / (L * np.sin(np.pi * x[mid] / L))
    # removable 0/0 at the far wall
    m0[x >= L] = 1.0
    if m0.max() > 1.0 + 1e-12:
        raise InvalidPOVMError(f"piston M0 exceeds 1 (max {m0.max():.3e}) at eps={eps}")
    return KrausPair.from_m0(grid, np.clip(m0, 0.0, 1.0))


def elevator_kraus(eps: float, w: float, grid: Grid) -> KrausPair:
    """Soft window: 0 below ``eps``, quarter-sine ramp on (eps, w), 1 above ``w``."""
    if not eps < w:
        raise EngineError(f"window edge eps={eps!r} must be below w={w!r}")
    if eps <= grid.x_min or w >= grid.x_max:
        raise EngineError("measurement window must lie inside the grid")
    x = grid.x
    m0 = np.where(x >= w, 1.0, 0.0)
    ramp = (x > eps) & (x < w)
    m0[ramp] = np.sin(np.pi * (x[ramp] - eps) / (2 * (w - eps)))
    return KrausPair.from_m0(grid, m0)


def apply_kraus(psi: Wavefunction, pair: KrausPair, branch: int):
    """Probability of ``branch`` and the normalized conditional state."""
    _check_same_grid(psi.grid, pair.grid)
    if branch not in (0, 1):
        raise EngineError(f"branch must be 0 or 1, got {branch!r}")
    m = pair.m0 if branch == 0 else pair.m1
    kicked = m * psi.amplitudes
    prob = integrate(kicked**2, psi.grid)
    if prob < _BRANCH_FLOOR:
        raise DegenerateBranchError(f"branch {branch} has probability {prob:.3e}")
    return prob, Wavefunction(psi.grid, kicked / math.sqrt(prob))


def _dirichlet_form(amps, h):
    slope = np.diff(amps) / h
    return float(np.sum(slope**2) * h)


def kinetic_energy(psi: Wavefunction, mass: float = 1.0, extrapolate: bool = False) -> float:
    """Quadratic form ``(1/2m) integral psi'^2``; not divided by the norm.

    The plain form converges as h^2. With ``extrapolate`` the form is also
    taken on every other node and the two are Richardson-combined; this
    needs an odd point count and any derivative kinks on even indices.
    """
    grid = psi.grid
    if grid.n_points < MIN_POINTS:
        raise EngineError("grid too coarse for the kinetic energy")
    fine = _dirichlet_form(psi.amplitudes, grid.spacing)
    if not extrapolate:
        return fine / (2 * mass)
    if grid.n_points % 2 == 0:
        raise EngineError("extrapolated kinetic energy needs an odd number of points")
    coarse = _dirichlet_form(psi.amplitudes[::2], 2 * grid.spacing)
    return (4 * fine - coarse) / 3 / (2 * mass)


def potential_energy(psi: Wavefunction, potential) -> float:
    """``integral V psi^2``; ``potential`` is a callable of x or a sampled array."""
    v = potential(psi.x) if callable(potential) else np.asarray(potential, dtype=float)
    return integrate(v * psi.amplitudes**2, psi.grid)


def linear_energy(psi: Wavefunction, params: LinearPotentialParams) -> float:
    """Total energy (absolute units) in the potential ``V = F x``."""
    return kinetic_energy(psi, params.mass) + potential_energy(psi, lambda x: params.force * x)


def linear_potential_ground(params: LinearPotentialParams, grid: Grid, floor: float | None = None):
    """Ground state of ``V = F x`` above a hard wall at ``floor``.

    The tridiagonal finite-difference Hamiltonian on the nodes strictly
    between ``floor`` and ``grid.x_max`` is diagonalised; the wavefunction is
    zero at and below the floor.

    Returns
    -------
    psi : Wavefunction
        Normalized ground state on the full grid, positive at its peak.
    energy : float
        Ground energy in units of ``F * x0``.
    """
    floor = grid.x_min if floor is None else floor
    i0 = grid.node_index(floor)
    if i0 is None:
        raise EngineError(f"floor {floor!r} is not a grid node")
    x0 = params.length_scale
    if grid.x_max - floor < 12 * x0 * (1 - 1e-9):
        raise EngineError(f"domain above the floor is shorter than 12 x0 ({grid.x_max - floor:.4g} < {12 * x0:.4g})")
    h = grid.spacing
    x_in = grid.x[i0 + 1 : -1]
    kin = 1.0 / (2 * params.mass * h * h)
    diag = 2 * kin + params.force * x_in
    off = np.full(len(x_in) - 1, -kin)
    try:
        vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, 0))
    except LinAlgError as exc:
        raise ConvergenceError(f"eigensolve failed: {exc}", parameter="floor") from exc
    amps = np.zeros(grid.n_points)
    vec = vecs[:, 0]
    amps[i0 + 1 : -1] = vec if vec[np.argmax(np.abs(vec))] > 0 else -vec
    psi = Wavefunction(grid, amps).normalized()
    tail = psi.amplitudes[grid.x > grid.x_max - 0.1 * (grid.x_max - floor)]
    if np.max(np.abs(tail)) > 1e-6 * np.max(np.abs(psi.amplitudes)):
        raise ConvergenceError("ground state not contained in the domain", parameter="x_max")
    return psi, float(vals[0]) / params.energy_scale
