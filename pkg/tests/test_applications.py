import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from converse_kit import measures as M
from converse_kit import reductions as R
from converse_kit.applications import convex as CX
from converse_kit.applications import density as DE
from converse_kit.applications import group_testing as GT
from converse_kit.applications import ising as IS
from converse_kit.applications import sparse as SP
from converse_kit.fano import RecoveryCriterion, neighborhood_counts
from converse_kit.oracle import group_testing as OGT
from converse_kit.oracle import ising_enum as OI
from converse_kit.oracle.montecarlo import mixture_mi_mc

import oracle_values as OV

LN2 = math.log(2)


# ---------------------------------------------------------------------------
# group testing


def test_gt_capacity_values():
    assert GT.gt_capacity(0.0) == LN2
    assert GT.gt_capacity(0.11) == pytest.approx(OV.GT_CAPACITY_011, abs=1e-15)
    assert GT.gt_capacity(0.4999999) == pytest.approx(0.0, abs=1e-12)


def test_gt_exact_headline():
    rep = GT.gt_exact_report(GT.GroupTestingSpec(100, 5, 0.0, 0.0))
    assert rep.value == 27
    assert rep.intermediates["info_required"] / LN2 == pytest.approx(OV.GT_EXACT_PRE_CEIL, rel=1e-14)


def test_gt_exact_full_tolerance_is_vacuous():
    rep = GT.gt_exact_report(GT.GroupTestingSpec(100, 5, 0.2, 1.0))
    assert rep.value == 0 and rep.vacuous


def test_gt_exact_bound_beats_every_small_design():
    spec = GT.GroupTestingSpec(8, 2, 0.1, 0.1)
    n_lower = GT.gt_exact_tests_lower(spec)
    assert n_lower > OGT.EXACT_MAX_TESTS  # so every enumerable n sits below the bound
    rng = np.random.default_rng(0)
    for n in range(1, OGT.EXACT_MAX_TESTS + 1):
        for _ in range(5):
            design = (rng.random((n, 8)) < rng.uniform(0.1, 0.6)).astype(int)
            assert OGT.gt_exact_joint(8, 2, design, 0.1).map_error > spec.delta


def test_gt_approx_instance():
    spec = GT.GroupTestingSpec(100, 5, 0.0, 0.0, L=10, alpha=0.4)
    rep = GT.gt_approx_report(spec)
    assert rep.intermediates["n_max"] == OV.GT_APPROX_NMAX
    assert rep.value == math.ceil(OV.GT_APPROX_PRE_CEIL) == 8


def test_gt_nmax_matches_brute_force_count():
    p, k, L, alpha = 9, 3, 4, 0.4
    lst = set(range(L))
    brute = sum(1 for s in itertools.combinations(range(p), k) if len(set(s) - lst) <= math.floor(alpha * k))
    assert GT.gt_nmax(p, k, L, alpha) == brute


def test_gt_approx_reduces_to_exact():
    for delta in (0.0, 0.1, 0.5):
        a = GT.gt_approx_tests_lower(GT.GroupTestingSpec(40, 4, 0.05, delta, L=4, alpha=0.0))
        b = GT.gt_exact_tests_lower(GT.GroupTestingSpec(40, 4, 0.05, delta))
        assert a == b


@given(st.integers(10, 400), st.integers(1, 8), st.floats(0.05, 0.95))
def test_gt_nmax_log_upper_holds(p, k, alpha):
    L = min(p, 2 * k)
    assert math.log(GT.gt_nmax(p, k, L, alpha)) <= GT.gt_nmax_log_upper(p, k, L, alpha) + 1e-12


def test_gt_weakened_form_is_reported():
    rep = GT.gt_exact_report(GT.GroupTestingSpec(100, 5))
    assert rep.intermediates["n_lower_weakened"] == 26


# ---------------------------------------------------------------------------
# Ising


def test_single_edge_stats():
    assert IS.ising_single_edge_stats(0.0) == (0.0, 0.0)
    t, kl = IS.ising_single_edge_stats(1.0)
    enum = OI.ising_enumerate(OI.IsingModel(2, ((0, 1),), 1.0))
    assert enum.correlations[0, 1] == pytest.approx(t, abs=1e-12)
    assert kl == pytest.approx(t, abs=1e-15)


@pytest.mark.parametrize("lam", [0.1, 0.5, 1.0, 2.0, 3.0])
def test_edge_kl_against_empty_graph(lam):
    exact = OI.kl_to_empty(OI.IsingModel(5, ((1, 3),), lam))
    assert exact == pytest.approx(IS.single_edge_kl_exact(lam), abs=1e-12)
    assert exact <= lam * math.tanh(lam)


def test_matching_count_matches_enumeration():
    for p in range(2, 11):
        assert IS.num_perfect_matchings(p) == len(OI.enumerate_matchings(p))


def test_matching_count_as_printed_overcounts():
    rep = IS.ising_approx_report(IS.IsingSpec(60, 0.2, 0.1, 0.1))
    assert rep.intermediates["log_num_matchings_as_printed"] > rep.intermediates["log_num_matchings"]


def test_ising_exact_instance():
    rep = IS.ising_exact_report(IS.IsingSpec(100, 0.2, 0.1))
    assert rep.intermediates["n_trees_branch"] == pytest.approx(OV.ISING_EXACT_N1, rel=1e-13)
    assert rep.intermediates["n_single_edge_branch"] == pytest.approx(OV.ISING_EXACT_N2, rel=1e-13)
    assert rep.value == 177


def test_ising_exact_limits():
    assert IS.ising_exact_samples_lower(IS.IsingSpec(50, 0.3, 1.0)) == 0
    strong = IS.ising_exact_report(IS.IsingSpec(50, 50.0, 0.0))
    assert strong.value == math.ceil(strong.intermediates["n_trees_branch"])


def test_ising_approx_instance():
    rep = IS.ising_approx_report(IS.IsingSpec(60, 0.2, 0.1, 0.1))
    assert rep.intermediates["n_max_trees"] == OV.ISING_APPROX_NMAX_TREES
    assert rep.intermediates["n_max_matchings"] == OV.ISING_APPROX_NMAX_MATCHINGS
    assert rep.intermediates["n_trees_branch"] == pytest.approx(OV.ISING_APPROX_N1, rel=1e-13)
    assert rep.intermediates["n_matching_branch"] == pytest.approx(OV.ISING_APPROX_N2, rel=1e-13)
    assert rep.value == 32


@given(st.integers(6, 80), st.floats(0.01, 0.49))
@settings(max_examples=60)
def test_ising_nmax_trees_log_upper_holds(p, alpha):
    if math.floor(alpha * p) == 0:
        return
    assert math.log(IS.ising_nmax_trees(p, alpha)) <= IS.ising_nmax_trees_log_upper(p, alpha) + 1e-9


def test_ising_approx_small_alpha_approaches_exact_structure():
    spec = IS.IsingSpec(40, 0.4, 0.1, 0.01)
    rep = IS.ising_approx_report(spec)
    assert rep.intermediates["n_max_trees"] == rep.intermediates["n_max_matchings"] == 1


def test_ising_adaptive_instance():
    rep = IS.ising_adaptive_report(IS.IsingSpec(100, 0.2, 0.1))
    assert rep.intermediates["n_trees_branch"] == pytest.approx(OV.ISING_ADAPTIVE_N1, rel=1e-13)
    assert rep.intermediates["n_matching_branch"] == pytest.approx(OV.ISING_ADAPTIVE_N2, rel=1e-13)
    assert rep.value == 8201
    assert IS.ising_adaptive_nodes_lower(IS.IsingSpec(100, 0.2, 1.0)) == 0


@given(st.integers(4, 200), st.floats(0.01, 3.0), st.floats(0.0, 0.9))
def test_ising_adaptive_tree_branch_is_p_times_sample_branch(p, lam, delta):
    a = IS.ising_adaptive_report(IS.IsingSpec(p, lam, delta))
    e = IS.ising_exact_report(IS.IsingSpec(p, lam, delta))
    assert a.intermediates["n_trees_branch"] == pytest.approx(p * e.intermediates["n_trees_branch"], rel=1e-12)


def test_erdos_renyi_values():
    assert IS.erdos_renyi_samples_lower(100, 0.5, 0.0) == 50
    assert IS.erdos_renyi_samples_lower(100, 0.5, 1.0) == 0
    rep = IS.erdos_renyi_report(100, 0.5, 0.0)
    assert rep.asymptotic and rep.notes


def test_erdos_renyi_sparse_regime_grows_logarithmically():
    ps = np.array([10**2, 10**3, 10**4, 10**5])
    vals = np.array([IS.erdos_renyi_report(int(p), 1 / p, 0.0).intermediates["pre_ceiling"] for p in ps])
    ratio = vals / np.log(ps)
    assert np.ptp(ratio) / ratio.mean() < 0.25
    assert np.all(np.diff(vals) > 0)


def test_single_edge_ensemble_information():
    lam = 0.5
    mi = OI.ising_ensemble_mi(OI.single_edge_ensemble(6, lam))
    assert mi <= lam * math.tanh(lam) + 1e-12
    assert OI.ising_ensemble_mi(OI.single_edge_ensemble(6, 0.0)) == pytest.approx(0.0, abs=1e-15)


# ---------------------------------------------------------------------------
# sparse regression


def test_sparse_family_size_and_covariance():
    assert SP.sparse_packing_family(4, 1, 1.0).size == 8
    for p, k in [(4, 1), (6, 2), (8, 3)]:
        v = SP.sparse_packing_family(p, k, 1.0).vectors()
        np.testing.assert_allclose(v.T @ v / len(v), (k / p) * np.eye(p), atol=1e-12)


def test_sparse_neighborhood_count_matches_brute_force():
    fam = SP.sparse_packing_family(6, 2, 1.0)
    v = fam.vectors()
    d = (v[:, None, :] != v[None, :, :]).sum(-1).astype(float)
    c = neighborhood_counts(RecoveryCriterion(d, fam.threshold))
    assert c.n_max == c.n_min == fam.n_max_exact()
    assert fam.n_max_exact() <= fam.n_max_paper()


def test_sparse_separation_gap():
    fam = SP.sparse_packing_family(6, 2, 0.7)
    x = fam.parameters()
    h = (fam.vectors()[:, None, :] != fam.vectors()[None, :, :]).sum(-1)
    l2 = np.sqrt(((x[:, None, :] - x[None, :, :]) ** 2).sum(-1))
    assert np.all(l2[h > fam.threshold] >= fam.separation - 1e-12)


def test_sparse_headline_and_chains():
    spec = SP.SparseRegressionSpec(64, 2, 1.0, 6400.0)
    assert SP.sparse_headline(spec) == pytest.approx(OV.SPARSE_HEADLINE, rel=1e-12)
    paper = SP.sparse_minimax_risk_lower(spec, "paper")
    exact = SP.sparse_minimax_risk_lower(spec, "exact")
    assert paper.intermediates["n_max"] == OV.SPARSE_NMAX_PAPER
    assert exact.intermediates["n_max"] == OV.SPARSE_NMAX_EXACT
    assert paper.value == pytest.approx(OV.SPARSE_CHAIN_PAPER, rel=1e-12)
    assert exact.value == pytest.approx(OV.SPARSE_CHAIN_EXACT, rel=1e-12)


def test_sparse_chain_matches_manual_wiring():
    spec = SP.SparseRegressionSpec(64, 2, 1.0, 6400.0)
    ep2 = SP.sparse_eps_prime_sq(spec)
    fam = SP.sparse_packing_family(64, 2, math.sqrt(ep2))
    mi = SP.sparse_mi_upper(ep2, 1.0, 2, 64, 6400.0)
    manual = R.minimax_bound_approx(R.LossModel.squared(), fam.separation, fam.size, fam.n_max_paper(), mi)
    assert SP.sparse_minimax_risk_lower(spec).value == manual.value


def test_sparse_samples_inversion():
    p, k, sigma, gamma, delta = 64, 2, 1.0, 1.0, 1e-4
    rep = SP.sparse_samples_lower(p, k, sigma, gamma, delta)
    n = rep.value
    # the risk bound at the Frobenius budget n p gamma sits at delta or below it
    at_n = SP.sparse_minimax_risk_lower(SP.SparseRegressionSpec(p, k, sigma, n * p * gamma)).value
    before = SP.sparse_minimax_risk_lower(SP.SparseRegressionSpec(p, k, sigma, (n - 1) * p * gamma)).value
    assert at_n <= delta * (1 + 1e-12) and before > delta
    assert rep.intermediates["headline"] == pytest.approx(sigma**2 * k * math.log(p / k) / (32 * delta * gamma))


def test_mixture_information_under_surrogate():
    p, k, sigma, eps_prime = 6, 1, 1.0, 0.8
    X = np.random.default_rng(1).standard_normal((2, p))
    params = SP.sparse_packing_family(p, k, eps_prime).parameters()
    r = mixture_mi_mc(params @ X.T, sigma, trials=20_000, seed=3)
    surrogate = SP.sparse_mi_upper(eps_prime**2, sigma, k, p, float((X**2).sum()))
    assert r.estimate <= surrogate + 3 * r.stderr


# ---------------------------------------------------------------------------
# density estimation


def test_density_balance_and_half_fraction():
    rep = DE.density_minimax_risk_lower(DE.DensitySpec(0.25, 1.0, 1.0, n=10**4))
    inter = rep.intermediates
    assert inter["cover_term"] == pytest.approx(inter["data_term"], rel=1e-9)
    assert inter["fraction"] == pytest.approx(0.5, abs=1e-9)


def test_density_scaling_constant():
    spec = DE.DensitySpec(0.25, 1.0, 1.0)
    scaled = {n: DE.density_minimax_risk_lower(spec, n).intermediates["scaled_by_n_2_3"]
              for n in (10**3, 10**4, 10**5, 10**6)}
    frozen = {10**3: OV.DENSITY_SCALED_1000, 10**4: OV.DENSITY_SCALED_10000,
              10**5: OV.DENSITY_SCALED_100000, 10**6: OV.DENSITY_SCALED_1000000}
    for n in scaled:
        assert scaled[n] == pytest.approx(frozen[n], rel=1e-12)
    vals = np.array(list(scaled.values()))
    mid = 0.5 * (vals.max() + vals.min())
    assert np.abs(vals - mid).max() / mid < 0.02


def test_density_samples_shape():
    spec = lambda d: DE.DensitySpec(0.25, 1.0, 1.0, delta=d)  # noqa: E731
    small = [DE.density_samples_lower(spec(d)) for d in (1e-10, 1e-12)]
    for rep, d in zip(small, (1e-10, 1e-12)):
        assert rep.intermediates["pre_ceiling"] * d**1.5 == pytest.approx(rep.intermediates["shape_constant"], rel=0.02)
    # the inverted n brings the risk bound down to delta
    rep = DE.density_samples_lower(spec(1e-8))
    n = rep.value
    assert DE.density_minimax_risk_lower(spec(1e-8), n).value <= 1e-8 * (1 + 1e-9)


def test_density_divergence_chain_cases():
    assert DE.density_divergence_chain(np.ones(4), np.ones(4), 0.5) == (0.0, 0.0, 0.0)
    kl, chi2, l2 = DE.density_divergence_chain([1.2, 0.8], [1.0, 1.0], 0.5)
    want_kl = 0.5 * (1.2 * math.log(1.2) + 0.8 * math.log(0.8))
    assert kl == pytest.approx(want_kl, abs=1e-15)
    assert chi2 == pytest.approx(0.04, abs=1e-15) and l2 == pytest.approx(0.04, abs=1e-15)
    assert kl <= chi2 <= l2 / 0.5


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=200)
def test_density_chain_holds_on_random_pairs(seed):
    rng = np.random.default_rng(seed)
    f1 = rng.dirichlet(np.ones(16)) * 16
    f2 = 0.5 + rng.dirichlet(np.ones(16)) * 16 * 0.5
    DE.density_divergence_chain(f1, f2, 0.5)


def test_density_rejects_floor_violation():
    with pytest.raises(M.ValidationError):
        DE.density_divergence_chain([1.0, 1.0], [1.8, 0.2], 0.5)


# ---------------------------------------------------------------------------
# strongly convex optimization


def test_scvx_construction():
    c = CX.scvx_construction(0.02)
    assert (c.x_star_1, c.x_star_2) == pytest.approx((0.3, 0.7), abs=1e-15)
    grid = np.linspace(0, 1, 10**4)
    ep = 0.02
    dev = np.abs(c[1](grid) + c[2](grid) - ((grid - 0.5) ** 2 + 2 * ep)).max()
    assert dev < 1e-12
    for v in (1, 2):
        assert c[v](c.x_star_1 if v == 1 else c.x_star_2) == 0.0


def test_scvx_per_query_kl():
    ep, sigma = 0.02, 1.0
    grid = np.linspace(0, 1, 201)
    upper = CX.scvx_per_query_kl_upper(ep, sigma)
    for v in (1, 2):
        f = CX.scvx_construction(ep)[v]
        assert np.allclose((f.grad(grid) - CX.REFERENCE.grad(grid)) ** 2, 2 * ep, atol=1e-15)
        assert max(CX.scvx_per_query_kl(ep, sigma, float(x), v) for x in grid) <= upper + 1e-15
    at_half = CX.scvx_per_query_kl(ep, sigma, 0.5, 1)
    assert at_half == pytest.approx((ep**2 + 2 * ep) / 2, abs=1e-15)
    assert CX.scvx_per_query_kl(ep, math.sqrt(2), 0.3, 1) == pytest.approx(
        CX.scvx_per_query_kl(ep, 1.0, 0.3, 1) / 2, rel=1e-14)


def test_scvx_risk_cases():
    eps, ep, sigma = 0.01, 0.02, 1.0
    assert CX.scvx_risk_lower(0, sigma, eps, ep) == pytest.approx(eps / 2, abs=1e-15)
    n_star = sigma**2 * LN2 / (4 * ep)
    rep = CX.scvx_risk_report(n_star, sigma, eps, ep)
    assert rep.intermediates["h2_inverse_argument"] == pytest.approx(LN2 / 2, abs=1e-15)
    assert rep.value > eps / 10
    assert CX.scvx_risk_lower(10**6, sigma, eps, ep) == 0.0


def test_scvx_queries():
    rep = CX.scvx_queries_report(CX.ConvexOptSpec(1.0, 0.01))
    assert rep.value == 2
    assert rep.intermediates["pre_ceiling"] == pytest.approx(OV.SCVX_PRE_CEIL, rel=1e-15)
    assert rep.intermediates["h2_inverse_half_ln2"] > 0.1
    assert CX.scvx_queries_lower(CX.ConvexOptSpec(1.0, 10.0)) == 1
    big = CX.scvx_queries_report(CX.ConvexOptSpec(math.sqrt(2), 0.01))
    assert big.intermediates["pre_ceiling"] == pytest.approx(2 * rep.intermediates["pre_ceiling"], rel=1e-15)


# ---------------------------------------------------------------------------
# delta monotonicity across calculators


@pytest.mark.parametrize("calc", [
    lambda d: GT.gt_exact_tests_lower(GT.GroupTestingSpec(30, 3, 0.1, d)),
    lambda d: IS.ising_exact_samples_lower(IS.IsingSpec(30, 0.5, d)),
    lambda d: IS.ising_adaptive_nodes_lower(IS.IsingSpec(30, 0.5, d)),
    lambda d: IS.erdos_renyi_samples_lower(30, 0.2, d),
])
def test_delta_monotone_and_zero_at_one(calc):
    vals = [calc(float(d)) for d in np.linspace(0, 1, 21)]
    assert all(b <= a for a, b in zip(vals, vals[1:]))
    assert vals[-1] == 0
