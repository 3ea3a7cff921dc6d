# SPDX-License-Identifier: Apache-2.0
"""End-to-end smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import rismp


@pytest.fixture(scope="module")
def small_setup():
    sc = rismp.paper_default(0.5, 0.3, [math.pi / 8, math.pi / 4])
    sc.geometry.ris.n_horizontal = 6
    sc.geometry.ris.n_vertical = 2
    net = rismp.assemble_network(sc.geometry)
    v = rismp.bs_combiner(sc.geometry)
    noise = rismp.calibrate_noise(net, sc.geometry, v)
    stats = rismp.build_statistics(sc.geometry, sc.rician, net)
    return sc, net, v, noise, stats


def test_paper_default_shapes():
    sc = rismp.paper_default(0.5, 0.0)
    assert sc.geometry.ris.count() == 128
    assert sc.geometry.bs.count() == 16
    assert len(sc.geometry.ues) == 3
    assert sc.geometry.wavelength == pytest.approx(299792458.0 / 30e9)


def test_model_identity_eq7(small_setup):
    _, net, _, _, _ = small_setup
    m = net.z_ss.shape[0]
    ideal = rismp.ImpedanceNetwork()
    ideal.z_ss = 50.0 * np.eye(m, dtype=complex)
    ideal.r0 = 0.0
    ideal.s = net.s
    ideal.t = net.t
    rng = np.random.default_rng(0)
    phi = rng.uniform(1e-3, 2 * math.pi - 1e-3, m)
    b = np.array([rismp.phase_to_reactance(p) for p in phi])
    d_imp = rismp.delta_mp(ideal, b)
    d_ct = rismp.delta_ct(phi)
    assert np.max(np.abs(d_imp - (d_ct - (0.02 / 50.0) * np.eye(m)))) < 1e-12


def test_network_properties(small_setup):
    _, net, v, _, _ = small_setup
    assert np.linalg.norm(net.z_ss - net.z_ss.T) == 0.0
    assert np.all(np.abs(np.abs(np.asarray(v)) - 1.0) < 1e-12)


def test_ao_monotone_and_reproducible(small_setup):
    _, net, v, noise, stats = small_setup
    cfg = rismp.AoConfig()
    cfg.max_iterations = 25
    cfg.seed = 3
    res = rismp.ao_optimize(net, stats, v, noise, cfg)
    mses = [it.mse for it in res.trace if it.accepted]
    assert all(b <= a + 1e-15 for a, b in zip(mses, mses[1:]))
    assert stats.rank - 1.0 < res.mse <= stats.rank
    res2 = rismp.ao_optimize(net, stats, v, noise, cfg)
    assert res2.mse == res.mse
    # Eq. (21) bridge
    gamma = 1.0 / (res.mse - stats.rank + 1.0) - 1.0
    assert res.rate_bound == pytest.approx(math.log2(1.0 + gamma), abs=1e-9)


def test_monte_carlo_deterministic(small_setup):
    sc, net, v, noise, stats = small_setup
    cfg = rismp.AoConfig()
    cfg.max_iterations = 10
    res = rismp.ao_optimize(net, stats, v, noise, cfg)
    rep1 = rismp.monte_carlo_rate(sc, net, res.b, v, noise, 16, 42)
    rep2 = rismp.monte_carlo_rate(sc, net, res.b, v, noise, 16, 42)
    assert rep1.mean_rate == rep2.mean_rate
    assert rep1.mean_rate > 0.0
    assert rep1.stderr_rate >= 0.0


def test_realization_determinism(small_setup):
    sc, net, _, _, _ = small_setup
    r1 = rismp.sample_realization(sc, net, 7)
    r2 = rismp.sample_realization(sc, net, 7)
    assert np.array_equal(r1.s_e, r2.s_e)
    assert np.array_equal(r1.t_e[0], r2.t_e[0])


def test_scenario_json_roundtrip():
    sc = rismp.paper_default(0.25, 0.5)
    text = rismp.scenario_to_json(sc)
    assert "wavelength" in text
    assert rismp.scenario_hash(sc) == rismp.scenario_hash(sc)
