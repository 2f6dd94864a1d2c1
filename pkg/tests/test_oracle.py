"""Covariance-matrix and Monte-Carlo validation of the symbolic pipeline."""

import math
import random

import numpy as np
import pytest

from cvteleport.criteria import teleport_fidelity
from cvteleport.epr import LosslessNopa, ZeroBandwidth, make_epr_pair
from cvteleport.linmode import (
    Axis,
    InputModel,
    combine,
    normalized_variance,
    unit_input,
    vacuum_mode,
)
from cvteleport.oracle import (
    GaussianState,
    McConfig,
    condition_on,
    covariance_teleport,
    fidelity_to_coherent,
    mc_check,
    sample_teleport_outcomes,
    two_mode_squeezed_cov,
)
from cvteleport.swap import SwapConfig, swap_once, swapped_epr_variances
from cvteleport.teleport import teleport, teleport_single_mode

COHERENT = InputModel.coherent()


# ---------------------------------------------------------------------------
# Gaussian states and conditioning


def test_gaussian_state_validation():
    with pytest.raises(ValueError):
        GaussianState(np.zeros(3), np.eye(3))  # odd-length mean
    with pytest.raises(ValueError):
        GaussianState(np.zeros(2), np.eye(4))  # shape mismatch
    bad_sym = np.array([[1.0, 0.5], [0.2, 1.0]])
    with pytest.raises(ValueError):
        GaussianState(np.zeros(2), bad_sym)
    not_psd = np.array([[1.0, 2.0], [2.0, 1.0]])
    with pytest.raises(ValueError):
        GaussianState(np.zeros(2), not_psd)


def test_gaussian_state_is_immutable():
    state = GaussianState.vacuum(2)
    assert not state.mean.flags.writeable
    assert not state.cov.flags.writeable
    assert state.n_modes == 2
    assert np.allclose(state.cov, np.eye(4) * 0.25)


def test_two_mode_squeezed_epr_variances_match_expansions():
    # Independent derivations of the same physics: hyperbolic covariance
    # entries here, coefficient algebra in the expansion route.
    rng = random.Random(503)
    for _ in range(30):
        r = rng.uniform(0, 3)
        cov = two_mode_squeezed_cov(r)
        # Var(x1 - x2) and Var(p1 + p2), absolute units.
        var_diff = cov[0, 0] + cov[2, 2] - 2 * cov[0, 2]
        var_sum = cov[1, 1] + cov[3, 3] + 2 * cov[1, 3]
        assert var_diff == pytest.approx(math.exp(-2 * r) / 2, rel=1e-12)
        assert var_sum == pytest.approx(math.exp(-2 * r) / 2, rel=1e-12)
        pair = make_epr_pair(ZeroBandwidth(r), 0.0)
        diff = combine(pair.x1, pair.x2, 1.0, -1.0)
        normalized = normalized_variance(diff, COHERENT, Axis.X)
        assert normalized * 0.25 == pytest.approx(var_diff, rel=1e-12)


def random_spd_state(rng, n_modes):
    dim = 2 * n_modes
    m = np.array([[rng.uniform(-1, 1) for _ in range(dim)] for _ in range(dim)])
    cov = m @ m.T + np.eye(dim) * 0.1
    mean = np.array([rng.uniform(-2, 2) for _ in range(dim)])
    return GaussianState(mean, cov)


def test_condition_on_collapses_the_measured_quadrature():
    rng = random.Random(509)
    for _ in range(25):
        state = random_spd_state(rng, 3)
        idx = rng.randrange(6)
        value = rng.uniform(-2, 2)
        post = condition_on(state, idx, value)
        assert post.cov[idx, idx] == 0.0
        assert np.all(post.cov[idx, :] == 0.0)
        assert post.mean[idx] == value
        # Still a covariance matrix.
        assert np.linalg.eigvalsh(post.cov).min() >= -1e-10


def test_condition_on_reduces_remaining_variances():
    rng = random.Random(521)
    for _ in range(25):
        state = random_spd_state(rng, 2)
        post = condition_on(state, 0, 0.3)
        for k in range(1, 4):
            assert post.cov[k, k] <= state.cov[k, k] + 1e-12


def test_condition_on_rejects_deterministic_quadrature():
    state = random_spd_state(random.Random(523), 2)
    post = condition_on(state, 1, 0.0)
    with pytest.raises(ValueError):
        condition_on(post, 1, 0.0)


def test_condition_on_independent_block_is_no_op():
    cov = np.eye(4) * 0.25
    cov[0, 1] = cov[1, 0] = 0.1
    state = GaussianState(np.zeros(4), cov)
    post = condition_on(state, 3, 1.0)
    assert np.allclose(post.cov[:2, :2], state.cov[:2, :2])
    assert post.mean[3] == 1.0 and np.all(post.mean[:3] == 0.0)


# ---------------------------------------------------------------------------
# Covariance-route teleportation


def test_covariance_teleport_baseline_point():
    state = covariance_teleport(0.0, 1.0)
    assert np.allclose(state.cov, np.eye(2) * 0.75, atol=1e-12)
    assert fidelity_to_coherent(state) == pytest.approx(0.5, rel=1e-12)


def test_covariance_teleport_displaces_by_gain():
    state = covariance_teleport(0.4, 0.7, alpha=2 - 1j)
    assert state.mean[0] == pytest.approx(0.7 * 2.0, rel=1e-12)
    assert state.mean[1] == pytest.approx(0.7 * -1.0, rel=1e-12)


def test_covariance_route_matches_symbolic_variances():
    rng = random.Random(541)
    for _ in range(40):
        r = rng.uniform(0, 3)
        gain = rng.uniform(0, 2)
        state = covariance_teleport(r, gain)
        out = teleport_single_mode(r, gain=gain)
        v_x = normalized_variance(out.x_tel, COHERENT, Axis.X)
        v_p = normalized_variance(out.p_tel, COHERENT, Axis.P)
        assert state.cov[0, 0] / 0.25 == pytest.approx(v_x, rel=1e-9)
        assert state.cov[1, 1] / 0.25 == pytest.approx(v_p, rel=1e-9)
        assert abs(state.cov[0, 1]) < 1e-12


def test_covariance_route_matches_symbolic_fidelity():
    rng = random.Random(547)
    for _ in range(25):
        r = rng.uniform(0, 3)
        gain = rng.uniform(0, 2)
        alpha = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        oracle = fidelity_to_coherent(covariance_teleport(r, gain, alpha), alpha)
        symbolic = teleport_fidelity(teleport_single_mode(r, gain), alpha=alpha).fidelity
        assert abs(oracle - symbolic) < 1e-9


def test_fidelity_to_coherent_needs_single_mode():
    with pytest.raises(ValueError):
        fidelity_to_coherent(GaussianState.vacuum(2))


def test_sampled_protocol_agrees_with_covariance_route():
    cfg = McConfig(sample_count=200_000, seed=7)
    r, gain, alpha = 0.5, 0.8, complex(1.0, -1.0)
    mean, cov = sample_teleport_outcomes(r, gain, alpha, cfg)
    want = covariance_teleport(r, gain, alpha)
    assert np.allclose(mean, want.mean, atol=0.02)
    assert np.allclose(cov, want.cov, atol=0.03)


# ---------------------------------------------------------------------------
# Monte-Carlo variance checks


def test_mc_vacuum_is_one():
    report = mc_check(
        [("vac", vacuum_mode("m", Axis.X), Axis.X)],
        COHERENT,
        McConfig(sample_count=50_000, seed=1),
    )
    row = report.rows[0]
    assert row.analytic == 1.0
    assert row.ok
    assert abs(row.estimate - 1.0) <= 5 * row.se


def test_mc_teleport_point():
    out = teleport(LosslessNopa(0.5), omega=1.0)
    err_x = combine(out.x_tel, unit_input(), 1.0, -1.0)
    err_p = combine(out.p_tel, unit_input(), 1.0, -1.0)
    report = mc_check(
        [("x_err", err_x, Axis.X), ("p_err", err_p, Axis.P)],
        COHERENT,
        McConfig(sample_count=100_000, seed=2),
    )
    want = 2.0 * (1.0 - 4.0 * 0.5 / (2.25 + 1.0))
    for row in report.rows:
        assert row.analytic == pytest.approx(want, rel=1e-12)
        assert row.ok
    assert report.all_ok


def test_mc_covariance_row():
    out = teleport(LosslessNopa(0.4), omega=0.5)
    report = mc_check(
        [("x_out", out.x_tel, Axis.X), ("x_in", unit_input(), Axis.X)],
        COHERENT,
        McConfig(sample_count=100_000, seed=3),
        pairs=(("x_out", "x_in"),),
    )
    cov_row = report.rows[-1]
    assert cov_row.kind == "covariance"
    assert cov_row.name == "x_out*x_in"
    assert cov_row.analytic == pytest.approx(1.0, rel=1e-12)
    assert cov_row.ok


def test_mc_swapped_pair_variance():
    cfg = SwapConfig(LosslessNopa(0.4))
    out = swap_once(cfg, 0.7)
    epr_x = combine(out.x1, out.x4p, 1.0, -1.0)
    want_x, _ = swapped_epr_variances(cfg, 0.7)
    analytic = normalized_variance(epr_x, COHERENT, Axis.X)
    assert analytic == pytest.approx(want_x, rel=1e-12)
    report = mc_check(
        [("epr_x", epr_x, Axis.X)], COHERENT, McConfig(sample_count=80_000, seed=4)
    )
    assert report.rows[0].ok


def test_mc_is_deterministic_for_a_seed():
    out = teleport(LosslessNopa(0.3), omega=0.4)
    cfg = McConfig(sample_count=70_000, seed=11)
    entries = [("x_out", out.x_tel, Axis.X)]
    a = mc_check(entries, COHERENT, cfg).to_json()
    b = mc_check(entries, COHERENT, cfg).to_json()
    assert a == b
    c = mc_check(entries, COHERENT, McConfig(sample_count=70_000, seed=12)).to_json()
    assert c != a


def test_mc_validation():
    e = vacuum_mode("m", Axis.X)
    cfg = McConfig(sample_count=10_000)
    with pytest.raises(ValueError):
        mc_check([("a", e, Axis.X), ("a", e, Axis.X)], COHERENT, cfg)
    with pytest.raises(ValueError):
        mc_check([("a", e, Axis.X)], COHERENT, cfg, pairs=(("a", "b"),))
    with pytest.raises(ValueError):
        mc_check(
            [("a", e, Axis.X), ("b", vacuum_mode("m", Axis.P), Axis.P)],
            COHERENT,
            cfg,
            pairs=(("a", "b"),),
        )
    with pytest.raises(ValueError):
        McConfig(sample_count=500)


def test_mc_report_json_shape():
    report = mc_check(
        [("vac", vacuum_mode("m", Axis.X), Axis.X)],
        COHERENT,
        McConfig(sample_count=10_000, seed=5),
    )
    import json

    payload = json.loads(report.to_json())
    assert payload["sample_count"] == 10_000
    assert payload["seed"] == 5
    assert payload["all_ok"] is True
    assert payload["rows"][0]["name"] == "vac"
