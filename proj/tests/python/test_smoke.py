import math

import numpy as np


def test_transform_round_trip(lg):
    rng = np.random.default_rng(1)
    f = rng.standard_normal((32, 32))
    back = lg.to_physical(lg.to_spectrum(f))
    assert np.max(np.abs(back - f)) < 1e-12 * np.max(np.abs(f))


def test_multiplier_values(lg):
    assert lg.multiplier_eval(0.7, 0.0) == 1.0
    assert lg.multiplier_eval(0.0, 123.0) == 1.0
    assert abs(lg.multiplier_eval(0.5, 1.0) - 0.87261839289271229) < 1e-12
    assert abs(lg.multiplier_distance(0.01, 64.0) - 0.020961914598768886) < 1e-12


def test_norms_single_mode(lg):
    n = 32
    x2 = 2.0 * np.pi * np.arange(n) / n
    f = np.broadcast_to(np.sin(x2), (n, n)).copy()
    assert abs(lg.lp_norm(f, 2.0) - 1.0 / math.sqrt(2.0)) < 1e-12
    coeffs = lg.to_spectrum(f)
    assert abs(lg.sobolev_norm(coeffs, 0.0) - 1.0 / math.sqrt(2.0)) < 1e-12
    assert abs(lg.sobolev_norm(coeffs, 1.0, True) - 1.0 / math.sqrt(2.0)) < 1e-12


def test_velocity_and_divergence(lg):
    theta = lg.random_band_field(3, 64, 1.0, 8.0, 2.0)
    state = lg.FlowState(theta, drift=(0.1, -0.2), gamma=0.1)
    u1, u2 = lg.velocity_from_vorticity(state)
    d1 = lg.spectral_derivative(lg.to_spectrum(u1), 1)
    d2 = lg.spectral_derivative(lg.to_spectrum(u2), 2)
    umax = max(np.max(np.abs(u1)), np.max(np.abs(u2)))
    assert np.max(np.abs(d1 + d2)) < 1e-11 * umax
    assert lg.biot_savart_ratio(theta, 0.25, 2.5)["ratio"] <= 1.0


def test_integrate_traveling_shear(lg):
    state0 = lg.hm_exact_state(n=3, s=2.5, omega=1, gamma=0.1, t=0.0, grid_n=32)
    result = lg.integrate(state0, t_end=0.5, fixed_dt=0.01, stride=1000)
    assert not result["aborted"]
    exact = lg.hm_exact_state(n=3, s=2.5, omega=1, gamma=0.1, t=0.5, grid_n=32)
    err = lg.sobolev_norm(result["final"].theta - exact.theta, 0.0)
    ref = lg.sobolev_norm(exact.theta, 0.0)
    assert err / ref < 1e-10
    # L2 is conserved along the way
    recs = result["records"]
    assert abs(recs[-1]["l2_theta"] - recs[0]["l2_theta"]) < 1e-12


def test_separation_closed_form(lg):
    vel, data = lg.hm_separation_closed_form(32, 2.5, 0.01, math.pi / 2)
    assert abs(vel - 1.3901904883373925) < 1e-12
    assert abs(data - 2.0 / 32.0) < 1e-15
    a = lg.hm_exact_state(n=4, s=2.5, omega=1, gamma=0.01, t=0.0, grid_n=32)
    b = lg.hm_exact_state(n=4, s=2.5, omega=-1, gamma=0.01, t=0.0, grid_n=32)
    assert abs(lg.velocity_separation_hs(a, b, 2.5) - 0.5) < 1e-12


def test_run_experiment_convergence(lg):
    config = """
experiment = convergence
[grid]
n = 32
[solver]
t_end = 0.25
[params]
dt_list = 0.025, 0.0125
wave_n = 2
s = 2.5
gamma = 0.1
"""
    report = lg.run_experiment(config)
    assert report["experiment"] == "convergence"
    assert report["all_pass"]
    names = {v["name"] for v in report["verdicts"]}
    assert "temporal_order_g32" in names
