"""Simulators for quantum measurement engines.

Modules: :mod:`qme.qubit` (Bloch-sphere algebra), :mod:`qme.feedback`,
:mod:`qme.continuum`, :mod:`qme.piston`, :mod:`qme.elevator`,
:mod:`qme.strokes`, :mod:`qme.trajectories` and the :mod:`qme.cli` front end.
"""

__version__ = "0.1.0"
