"""Smoke test for the python bindings: import, simulate, learn one step."""

import math
import sys

import numpy as np

try:
    import _ilc as ilc
except ImportError:
    import ilcpy as ilc


def test_dft_round_trip():
    x = ilc.TimeSeries()
    x.sample_rate = 100.0
    rng = np.random.default_rng(1)
    x.data = rng.standard_normal((2, 256))
    spec = ilc.to_frequency(x)
    assert spec.bins() == 129
    y = ilc.to_time(spec, 256, 100.0)
    assert np.max(np.abs(y.data - x.data)) < 1e-10


def test_plant_and_kinematics():
    plant = ilc.sea_like_plant()
    h0 = ilc.frequency_response(plant, 0.0)
    assert np.allclose(np.diag(h0), 1.0)

    geom = ilc.ArmGeometry()
    theta = ilc.inverse_kinematics(geom, 2.0)
    pose = ilc.forward_kinematics(geom, theta)
    assert abs(pose.theta - math.pi / 2.0) < 1e-9

    bound = ilc.rho_upper_bound(np.array([[0.5]]))
    assert abs(bound.rho_bar[0] - 4.0 / 3.0) < 1e-12


def test_learning_loop():
    cfg = ilc.ExperimentConfig()
    cfg.use_exact_model = True
    noise = ilc.NoiseModel()
    noise.std_dev = np.zeros(3)
    noise.seed = 1
    cfg.noise = noise
    cfg.k_max = 3
    cfg.epsilon = 1e-9
    res = ilc.run_algorithm1(cfg)
    assert len(res.records) == 4
    first = np.asarray(res.records[0].max_error)
    last = np.asarray(res.records[-1].max_error)
    assert np.all(last < first)


def main():
    test_dft_round_trip()
    test_plant_and_kinematics()
    test_learning_loop()
    print("python smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
