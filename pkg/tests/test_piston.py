import numpy as np
import pytest

from qme import continuum as cm
from qme import piston
from qme.exceptions import EngineError

import oracles

# frozen from oracles.piston_heat_quad (adaptive quadrature, independent of the grid code)
ETA_AT_TENTH = 0.5682605224544836
HEAT_QUAD = {0.05: 0.0946860523713032, 0.1: 0.1299183169392111, 0.2: 0.15535091909310225,
             0.3: 0.15523877708472597, 0.4: 0.1433098125965888, 0.5: 0.12499999999999771}


class TestAnalytic:
    def test_tenth(self):
        p0, gain, work = piston.analytic_metrics(0.1)
        assert p0 == pytest.approx(0.729, abs=1e-15)
        assert gain == pytest.approx(0.234568, abs=1e-6)
        assert work == pytest.approx(0.171, abs=1e-15)

    def test_half(self):
        assert piston.analytic_metrics(0.5)[0] == 0.125

    def test_small_limit(self):
        p0, _, work = piston.analytic_metrics(1e-9)
        assert p0 == pytest.approx(1, abs=1e-8) and work == pytest.approx(0, abs=1e-8)

    @pytest.mark.parametrize("a", np.linspace(0.01, 0.99, 25))
    def test_work_is_probability_times_gain(self, a):
        p0, gain, work = piston.analytic_metrics(a)
        assert work == pytest.approx(p0 * gain, rel=1e-13)

    @pytest.mark.parametrize("a", [0.0, 1.0, -0.1])
    def test_rejects(self, a):
        with pytest.raises(EngineError):
            piston.analytic_metrics(a)


class TestNumeric:
    def test_work_at_tenth(self):
        assert piston.numeric_metrics(0.1).average_work == pytest.approx(0.171, abs=1e-5)

    @pytest.mark.parametrize("a", sorted(HEAT_QUAD))
    def test_heat_matches_quadrature_oracle(self, a):
        assert piston.numeric_metrics(a).dissipated_heat == pytest.approx(HEAT_QUAD[a], abs=1e-8)

    def test_efficiency_regression(self):
        assert piston.numeric_metrics(0.1).efficiency == pytest.approx(ETA_AT_TENTH, abs=1e-8)

    def test_oracle_reproduces_frozen_values(self):
        assert oracles.piston_heat_quad(0.1) == pytest.approx(HEAT_QUAD[0.1], abs=1e-10)

    def test_ledger_identity_and_bounds(self):
        for m in piston.sweep(np.linspace(0.02, 0.9, 23)):
            assert m.quantum_heat_input == pytest.approx(m.average_work + m.dissipated_heat, abs=1e-12)
            assert m.quantum_heat_input >= m.average_work >= 0
            assert m.dissipated_heat >= 0
            assert 0 < m.efficiency < 1

    def test_post_success_fidelity(self):
        g = piston.piston_grid(0.3)
        box = cm.BoxParams()
        _, post = cm.apply_kraus(cm.box_ground_state(box, g), cm.piston_kraus(box, 0.3, g), 0)
        assert post.overlap(cm.shifted_box_ground_state(box, 0.3, g)) > 1 - 1e-8

    @pytest.mark.parametrize("a", [0.1, 0.5, 0.9])
    def test_grid_refinement(self, a):
        coarse = piston.numeric_metrics(a, piston.piston_grid(a, 4096))
        fine = piston.numeric_metrics(a, piston.piston_grid(a, 8192))
        for field in ("energy_gain", "average_work", "dissipated_heat", "quantum_heat_input"):
            c, f = getattr(coarse, field), getattr(fine, field)
            assert abs(c - f) < 1e-5 * abs(f)

    def test_rejects_beyond_cap(self):
        with pytest.raises(EngineError):
            piston.numeric_metrics(0.95)


class TestSweep:
    def test_work_interior_maximum(self):
        a = np.linspace(0.02, 0.9, 89)
        work = [m.average_work for m in piston.sweep(a)]
        assert a[int(np.argmax(work))] == pytest.approx(1 - 1 / np.sqrt(3), abs=0.01)

    def test_heat_vanishes_for_weak_measurement(self):
        heat = [m.dissipated_heat for m in piston.sweep([0.0005, 0.002, 0.02])]
        assert heat[0] < heat[1] < heat[2]

    def test_empty(self):
        with pytest.raises(EngineError):
            piston.sweep([])

    def test_rows_match_columns(self):
        m = piston.sweep([0.1])[0]
        assert len(m.row()) == len(piston.CSV_COLUMNS)
