import dataclasses
import math

import numpy as np
import pytest

from qme import feedback, qubit
from qme.exceptions import EngineError

import oracles


def test_full_cycle_zero_temperature():
    m = feedback.full_cycle(1.0, 0.0)
    assert m.work_extracted == pytest.approx(-0.5, abs=1e-15)
    assert m.quantum_heat == pytest.approx(0.5, abs=1e-15)
    assert m.outcome_entropy == pytest.approx(math.log(2), abs=1e-15)
    assert m.reset_cost == 0.0
    assert m.efficiency == pytest.approx(1.0, abs=1e-15)


def test_full_cycle_landauer_cost():
    m = feedback.full_cycle(1.0, 0.1)
    assert m.reset_cost == pytest.approx(0.1 * math.log(2), abs=1e-15)
    assert m.efficiency == pytest.approx(1 - 0.2 * math.log(2), abs=1e-14)
    assert m.efficiency == pytest.approx(0.8614, abs=1e-4)


def test_hot_memory_makes_engine_pointless():
    assert feedback.full_cycle(1.0, 1.0).efficiency < 0


def test_rejects_bad_splitting():
    with pytest.raises(EngineError):
        feedback.full_cycle(0.0, 0.1)


@pytest.mark.parametrize("temp", [0.0, 0.1, 2.0])
def test_quarter_turn_reduces_to_full_cycle(temp):
    zeno = dataclasses.astuple(feedback.zeno_cycle(1.0, temp, math.pi / 2))
    assert zeno == pytest.approx(dataclasses.astuple(feedback.full_cycle(1.0, temp)), abs=1e-15)


@pytest.mark.parametrize("theta", [0.0, -0.1, 2.0])
def test_zeno_rejects_angle(theta):
    with pytest.raises(EngineError):
        feedback.zeno_cycle(1.0, 1.0, theta)


@pytest.mark.parametrize("theta", [1e-4, 1e-3, 0.05, 0.7, 1.5])
def test_zeno_ledger(theta):
    m = feedback.zeno_cycle(2.0, 0.5, theta)
    assert m.work_extracted == pytest.approx(-math.sin(theta), rel=1e-12)
    assert m.work_extracted + m.quantum_heat == pytest.approx(0.0, abs=1e-15)
    assert m.quantum_heat >= 0
    assert 0.0 <= m.outcome_entropy <= math.log(2)
    assert m.efficiency <= 1.0
    assert m.cycle_power == pytest.approx(math.sin(theta) / theta, rel=1e-12)


def test_zeno_entropy_matches_series():
    for theta in (1e-4, 1e-3):
        m = feedback.zeno_cycle(1.0, 1.0, theta)
        assert m.outcome_entropy == pytest.approx(oracles.zeno_entropy_series(theta), rel=1e-5)


def test_p_plus_consistency():
    for theta in (1e-3, 0.4, 1.2):
        p, _, _ = qubit.projective_measure(qubit.rotate_about_y(qubit.PLUS, theta), qubit.X_BASIS)
        assert p == pytest.approx(math.cos(theta / 2) ** 2, abs=1e-12)


class TestZenoSweep:
    def test_single_row(self):
        rows = feedback.zeno_sweep(1.0, 0.3, [math.pi / 2])
        assert len(rows) == 1
        assert dataclasses.astuple(rows[0]) == pytest.approx(dataclasses.astuple(feedback.full_cycle(1.0, 0.3)), abs=1e-15)

    def test_empty(self):
        with pytest.raises(EngineError):
            feedback.zeno_sweep(1.0, 0.3, [])

    @pytest.mark.parametrize("temp", [0.05, 1.0, 10.0])
    def test_monotone_toward_unit_efficiency(self, temp):
        thetas = np.geomspace(1e-4, math.pi / 2, 60)
        eta = np.array([m.efficiency for m in feedback.zeno_sweep(1.0, temp, thetas, workers=2)])
        assert np.all(np.diff(eta) < 0)
        assert eta[0] > 1 - 0.01 * temp

    def test_order_preserved(self):
        thetas = [0.3, 0.1, 0.2]
        assert [m.theta for m in feedback.zeno_sweep(1.0, 1.0, thetas, workers=3)] == thetas
