import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from converse_kit import measures as M
from converse_kit import mi_bounds as MB

LN2 = math.log(2)


def bsc(e):
    return np.array([[1 - e, e], [e, 1 - e]])


def random_family(seed, nv=4, ny=4):
    rng = np.random.default_rng(seed)
    return MB.HypothesisFamily(rng.dirichlet(np.ones(nv)), rng.dirichlet(np.full(ny, 0.7), size=nv))


# ---------------------------------------------------------------------------
# auxiliary and pairwise bounds


def test_aux_bound_is_tight_at_output_marginal():
    fam = random_family(1)
    avg, mx = MB.mi_upper_aux(fam, fam.output_marginal())
    assert avg == pytest.approx(fam.exact_mi(), abs=1e-14)
    assert mx >= avg


def test_aux_bound_on_identical_rows():
    row = np.array([0.1, 0.6, 0.3])
    fam = MB.HypothesisFamily(np.full(3, 1 / 3), np.tile(row, (3, 1)))
    q = np.array([0.3, 0.3, 0.4])
    avg, mx = MB.mi_upper_aux(fam, q)
    assert avg == pytest.approx(mx, abs=1e-15)
    assert avg == pytest.approx(M.kl_divergence(row, q), abs=1e-15)
    assert fam.exact_mi() == pytest.approx(0.0, abs=1e-15)


def test_aux_bound_with_uniform_q_on_random_family():
    fam = random_family(2)
    avg, _ = MB.mi_upper_aux(fam, np.full(4, 0.25))
    assert avg >= fam.exact_mi() - 1e-12


def test_pairwise_single_row_is_zero():
    fam = MB.HypothesisFamily([1.0], [[0.2, 0.8]])
    assert MB.mi_upper_pairwise(fam) == (0.0, 0.0)


def test_pairwise_matches_double_sum():
    grid = np.linspace(-4, 4, 41)
    rows = np.array([np.exp(-0.5 * (grid - mu) ** 2) for mu in (-0.5, 0.5)])
    rows /= rows.sum(axis=1, keepdims=True)
    fam = MB.HypothesisFamily([0.5, 0.5], rows)
    direct = sum(0.25 * sum(rows[a, y] * math.log(rows[a, y] / rows[b, y]) for y in range(41))
                 for a in range(2) for b in range(2))
    assert MB.mi_upper_pairwise(fam)[0] == pytest.approx(direct, abs=1e-14)


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=100)
def test_bound_ordering(seed):
    fam = random_family(seed)
    exact = fam.exact_mi()
    aux_avg, aux_max = MB.mi_upper_aux(fam, fam.output_marginal())
    pw_avg, pw_max = MB.mi_upper_pairwise(fam)
    assert exact <= aux_avg + 1e-12
    assert aux_avg <= aux_max + 1e-12
    assert aux_avg <= pw_avg + 1e-12
    assert pw_avg <= pw_max + 1e-12


def test_conditional_aux_bound_dominates_conditional_mi():
    rng = np.random.default_rng(7)
    prior, px = np.full(3, 1 / 3), np.array([0.4, 0.6])
    ch = rng.dirichlet(np.ones(3), size=(3, 2))  # [v, x, y]
    aux = [np.full(3, 1 / 3), np.full(3, 1 / 3)]
    j3 = prior[:, None, None] * ch.transpose(0, 2, 1) * px[None, None, :]
    assert MB.mi_upper_aux_conditional(prior, ch, px, aux) >= M.conditional_mutual_information(j3) - 1e-12


# ---------------------------------------------------------------------------
# covering


def test_covering_with_one_center_is_max_divergence():
    fam = random_family(3)
    q = np.full(4, 0.25)
    _, mx = MB.mi_upper_aux(fam, q)
    assert MB.mi_upper_covering(fam, [q], mx) == pytest.approx(mx, abs=1e-15)


def test_covering_by_all_rows():
    fam = random_family(4)
    val = MB.mi_upper_covering(fam, list(fam.channel.rows), 0.0)
    assert val == pytest.approx(math.log(4), abs=1e-15)
    assert val >= fam.exact_mi()


def test_covering_two_clusters():
    base = [np.array([0.7, 0.2, 0.05, 0.05]), np.array([0.05, 0.05, 0.2, 0.7])]
    rng = np.random.default_rng(5)
    rows = [0.9 * base[i % 2] + 0.1 * rng.dirichlet(np.ones(4)) for i in range(6)]
    fam = MB.HypothesisFamily(np.full(6, 1 / 6), rows)
    centers = [np.mean(rows[0::2], axis=0), np.mean(rows[1::2], axis=0)]
    eps = max(min(M.kl_divergence(r, c) for c in centers) for r in rows)
    assert MB.mi_upper_covering(fam, centers, eps) >= fam.exact_mi()


def test_covering_rejects_insufficient_radius():
    fam = random_family(6)
    with pytest.raises(MB.CoveringViolation) as info:
        MB.mi_upper_covering(fam, [np.full(4, 0.25)], 1e-6)
    assert info.value.divergence > 1e-6


# ---------------------------------------------------------------------------
# tensorization


def test_tensorization_single_sample_is_exact():
    fam = random_family(8)
    r = MB.tensorization_upper(MB.ProductModel((fam.channel.rows,)), fam.prior)
    assert r.verified and r.bound == pytest.approx(r.exact, abs=1e-15)


def test_tensorization_two_bsc_samples():
    r = MB.tensorization_upper(MB.ProductModel.iid(bsc(0.1), 2), [0.5, 0.5])
    i1 = M.mutual_information(M.JointPMF.from_channel([0.5, 0.5], bsc(0.1)))
    assert r.bound == pytest.approx(2 * i1, abs=1e-15)
    # exact two-sample expansion: Y1 Y2 in {00, 01, 10, 11}
    joint = 0.5 * np.array([[0.81, 0.09, 0.09, 0.01], [0.01, 0.09, 0.09, 0.81]])
    assert r.exact == pytest.approx(M.mutual_information(joint), abs=1e-15)
    assert r.exact <= r.bound


def test_tensorization_deterministic_channels():
    ident = np.eye(3)
    r = MB.tensorization_upper(MB.ProductModel.iid(ident, 3), np.full(3, 1 / 3))
    assert r.exact == pytest.approx(math.log(3), abs=1e-14)
    assert r.bound == pytest.approx(3 * math.log(3), abs=1e-14)


@given(st.integers(0, 2**31 - 1), st.integers(1, 3))
@settings(max_examples=60)
def test_tensorization_holds_on_random_products(seed, n):
    rng = np.random.default_rng(seed)
    nv = int(rng.integers(2, 5))
    chans = tuple(rng.dirichlet(np.full(int(rng.integers(2, 5)), 0.5), size=nv) for _ in range(n))
    r = MB.tensorization_upper(MB.ProductModel(chans), rng.dirichlet(np.ones(nv)))
    assert r.verified and r.exact <= r.bound + 1e-12


def test_non_adaptive_tree_matches_product_model():
    rng = np.random.default_rng(10)
    ch = rng.dirichlet(np.ones(2), size=(2, 2))  # [v, x, y]
    prior = [0.3, 0.7]
    inputs = (1, 0)
    tree = MB.AdaptivePolicyTree.non_adaptive(inputs, ch)
    a = MB.adaptive_tensorization_upper(tree, prior)
    b = MB.tensorization_upper(MB.ProductModel(tuple(ch[:, x, :] for x in inputs)), prior)
    assert a.bound == pytest.approx(b.bound, abs=1e-14)
    assert a.exact == pytest.approx(b.exact, abs=1e-14)


def test_adaptive_policy_inequality_enumerated():
    ch = np.array([[[0.9, 0.1], [0.5, 0.5]], [[0.6, 0.4], [0.1, 0.9]]])

    def policy(xh, yh):
        return 0 if not yh else int(yh[-1])

    r = MB.adaptive_tensorization_upper(MB.AdaptivePolicyTree(2, policy, ch), [0.5, 0.5])
    # exact I(V; X^2, Y^2) by hand enumeration of the four histories
    joint = np.zeros((2, 4))
    for v, y1, y2 in itertools.product(range(2), repeat=3):
        x2 = y1
        joint[v, 2 * y1 + y2] += 0.5 * ch[v, 0, y1] * ch[v, x2, y2]
    assert r.exact == pytest.approx(M.mutual_information(joint), abs=1e-15)
    assert r.exact <= r.bound + 1e-12


def test_adaptive_channel_independent_of_v():
    ch = np.tile(np.array([[0.3, 0.7], [0.8, 0.2]]), (2, 1, 1))
    r = MB.adaptive_tensorization_upper(MB.AdaptivePolicyTree(2, lambda xh, yh: len(yh) % 2, ch), [0.5, 0.5])
    assert r.bound == pytest.approx(0.0, abs=1e-15) and r.exact == pytest.approx(0.0, abs=1e-15)


def test_adaptive_cap_is_enforced():
    ch = np.full((2, 1, 10), 0.1)
    with pytest.raises(M.ValidationError):
        MB.adaptive_tensorization_upper(MB.AdaptivePolicyTree(7, lambda xh, yh: 0, ch), [0.5, 0.5])


def test_function_reduction_dominates():
    prior = np.full(4, 0.25)
    psi = lambda v, x: int(v in x)  # noqa: E731 - membership test as U
    s_u, s_v = MB.function_reduction_upper(prior, [(0, 1), (1, 2), (3,)], psi, bsc(0.2))
    assert s_u >= s_v - 1e-15


# ---------------------------------------------------------------------------
# data processing


def test_dpi_identity_and_constant_second_stage():
    fam = random_family(12)
    lhs, rhs, ok = MB.dpi_check(fam.prior, fam.channel.rows, np.eye(4))
    assert ok and lhs == pytest.approx(rhs, abs=1e-14)
    lhs, rhs, ok = MB.dpi_check(fam.prior, fam.channel.rows, np.tile([1.0, 0.0], (4, 1)))
    assert ok and lhs == 0.0


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=200)
def test_dpi_holds(seed):
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(2, 7, size=3)
    _, _, ok = MB.dpi_check(rng.dirichlet(np.ones(a)), rng.dirichlet(np.ones(b), size=a),
                            rng.dirichlet(np.ones(c), size=b))
    assert ok
