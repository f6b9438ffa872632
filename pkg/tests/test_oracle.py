import math

import numpy as np
import pytest
from scipy import integrate

from converse_kit import measures as M
from converse_kit.applications.group_testing import GroupTestingSpec
from converse_kit.fano import RecoveryCriterion, fano_pe_lower, l2_ball_volume
from converse_kit.oracle import decoding as OD
from converse_kit.oracle import group_testing as OGT
from converse_kit.oracle import ising_enum as OI
from converse_kit.oracle import montecarlo as MC


# ---------------------------------------------------------------------------
# decoding


def test_bayes_error_cases():
    assert OD.bayes_optimal_error(np.full(3, 1 / 3), np.eye(3)) == 0.0
    rows = np.tile([0.2, 0.5, 0.3], (5, 1))
    assert OD.bayes_optimal_error(np.full(5, 0.2), rows) == pytest.approx(0.8, abs=1e-15)
    e = 0.17
    assert OD.bayes_optimal_error([0.5, 0.5], [[1 - e, e], [e, 1 - e]]) == pytest.approx(e, abs=1e-15)


def test_approx_error_cases():
    rng = np.random.default_rng(0)
    prior, ch = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(3), size=4)
    assert OD.bayes_optimal_approx_error(prior, ch, RecoveryCriterion.exact(4)) == pytest.approx(
        OD.bayes_optimal_error(prior, ch), abs=1e-15)
    assert OD.bayes_optimal_approx_error(prior, ch, RecoveryCriterion(np.zeros((4, 4)), 0.0)) == 0.0


def test_approx_error_matches_decoder_enumeration():
    rng = np.random.default_rng(1)
    prior, ch = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4), size=4)
    dist = rng.integers(0, 3, size=(4, 4)).astype(float)
    rc = RecoveryCriterion(dist, 1.0)
    assert OD.bayes_optimal_approx_error(prior, ch, rc) == pytest.approx(
        OD.exhaustive_min_error(prior, ch, rc), abs=1e-14)
    assert OD.bayes_optimal_error(prior, ch) == pytest.approx(OD.exhaustive_min_error(prior, ch), abs=1e-14)


def test_decoder_enumeration_cap():
    with pytest.raises(M.ValidationError):
        OD.all_decoders(10, 7)


# ---------------------------------------------------------------------------
# Ising enumeration


def test_empty_graph_is_uniform():
    e = OI.ising_enumerate(OI.IsingModel(4, (), 0.7))
    np.testing.assert_allclose(e.pmf.mass, 1 / 16, atol=1e-15)
    np.testing.assert_allclose(e.correlations, np.eye(4), atol=1e-15)


@pytest.mark.parametrize("lam", [0.1, 0.5, 1.0, 2.0, 3.0])
def test_single_edge_correlation_is_tanh(lam):
    e = OI.ising_enumerate(OI.IsingModel(6, ((2, 4),), lam))
    assert e.correlations[2, 4] == pytest.approx(math.tanh(lam), abs=1e-10)
    assert e.pmf.mass.sum() == pytest.approx(1.0, abs=1e-12)


def test_isolated_edges_factorize():
    e = OI.ising_enumerate(OI.IsingModel(4, ((0, 1), (2, 3)), 0.8))
    joint = e.pmf.mass.reshape(4, 4)  # (y0 y1) x (y2 y3)
    product = np.outer(joint.sum(axis=1), joint.sum(axis=0))
    assert M.kl_divergence(joint.ravel(), product.ravel()) == pytest.approx(0.0, abs=1e-12)


def test_forest_detection():
    assert OI.IsingModel(4, ((0, 1), (1, 2)), 1.0).is_forest()
    assert not OI.IsingModel(3, ((0, 1), (1, 2), (0, 2)), 1.0).is_forest()


def test_ensemble_information_cases():
    one = [OI.IsingModel(4, ((0, 1),), 1.0)]
    assert OI.ising_ensemble_mi(one) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(M.ValidationError):
        OI.ising_ensemble_mi([OI.IsingModel(11, (), 1.0)])


# ---------------------------------------------------------------------------
# group testing


def test_identifying_design_has_zero_error():
    g = OGT.gt_exact_joint(6, 1, np.eye(6, dtype=int), 0.0)
    assert g.map_error == pytest.approx(0.0, abs=1e-15)


def test_empty_design_is_uninformative():
    g = OGT.gt_exact_joint(6, 2, np.zeros((3, 6), dtype=int), 0.1)
    assert g.mi == pytest.approx(0.0, abs=1e-15)
    assert g.map_error == pytest.approx(1 - 1 / 15, abs=1e-15)


def test_map_error_respects_fano_floor():
    X = OGT.bernoulli_design(6, 8, 0.3, seed=2)
    g = OGT.gt_exact_joint(8, 2, X, 0.1)
    assert g.map_error >= fano_pe_lower(g.mi, 28) - 1e-9


def test_exact_joint_caps():
    with pytest.raises(M.ValidationError):
        OGT.gt_exact_joint(12, 2, np.zeros((2, 12), dtype=int), 0.1)


def test_simulation_guessing_at_zero_tests():
    r = OGT.gt_simulate(GroupTestingSpec(6, 2, 0.1), 0, trials=3000, seed=1)
    assert abs(r.estimate - (1 - 1 / 15)) <= 3 * max(r.stderr, 1e-3)


def test_simulation_noiseless_generous_tests():
    r = OGT.gt_simulate(GroupTestingSpec(8, 2, 0.0), 40, trials=500, seed=2)
    assert r.estimate < 0.02


def test_simulation_is_deterministic_and_worker_independent():
    spec = GroupTestingSpec(8, 2, 0.1)
    a = OGT.gt_simulate(spec, 4, trials=1500, seed=5, workers=1)
    b = OGT.gt_simulate(spec, 4, trials=1500, seed=5, workers=4)
    assert a == b


def test_simulation_map_cap():
    with pytest.raises(M.ValidationError):
        OGT.gt_simulate(GroupTestingSpec(200, 5), 3, trials=1)


def test_plugin_decoder_is_no_better_than_map():
    spec = GroupTestingSpec(8, 2, 0.05)
    m = OGT.gt_simulate(spec, 6, "map", trials=2000, seed=7)
    p = OGT.gt_simulate(spec, 6, "plugin", trials=2000, seed=7)
    assert m.estimate <= p.estimate + 3 * (m.stderr + p.stderr)


# ---------------------------------------------------------------------------
# Monte Carlo


def test_mixture_equal_means_has_no_information():
    r = MC.mixture_mi_mc([0.0, 0.0, 0.0], 1.0, trials=5000, seed=0)
    assert abs(r.estimate) <= 3 * r.stderr + 1e-12


def test_mixture_far_components_saturate():
    r = MC.mixture_mi_mc([-20.0, 20.0], 1.0, trials=5000, seed=1)
    assert abs(r.estimate - math.log(2)) <= 3 * r.stderr + 1e-9


def test_mixture_matches_quadrature_in_one_dimension():
    means, sigma = np.array([-0.6, 0.6]), 1.0

    def dens(y, mu):
        return math.exp(-0.5 * ((y - mu) / sigma) ** 2) / math.sqrt(2 * math.pi)

    def integrand(y):
        mix = 0.5 * (dens(y, means[0]) + dens(y, means[1]))
        return sum(0.5 * dens(y, mu) * math.log(dens(y, mu) / mix) for mu in means)

    exact, _ = integrate.quad(integrand, -12, 12)
    r = MC.mixture_mi_mc(means, sigma, trials=40_000, seed=2)
    assert abs(r.estimate - exact) <= 3 * r.stderr


def test_ball_volume_estimates():
    assert MC.ball_volume_mc(3, MC.Box([0, 0, 0], [1, 1, 1]), trials=1000).estimate == pytest.approx(1.0)
    r = MC.ball_volume_mc(2, MC.L2Ball([0, 0], 0.5), trials=100_000, seed=3)
    assert abs(r.estimate - math.pi / 4) <= 3 * r.stderr
    r5 = MC.ball_volume_mc(5, MC.L2Ball([0] * 5, 1.0), trials=200_000, seed=4)
    assert abs(r5.estimate - l2_ball_volume(5, 1.0)) <= 3 * r5.stderr


def test_run_blocks_rejects_zero_trials():
    with pytest.raises(M.ValidationError):
        MC.run_blocks(0, 0, lambda rng, n: np.zeros(n))
