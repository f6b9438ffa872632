"""Randomized property suites behind ``converse-kit verify``.

Each suite returns a list of counterexamples; an empty list means every
check passed.  Library functions are looked up through their modules at
call time so a patched build is what gets tested.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import fano as F
from . import measures as M
from . import mi_bounds as MB
from . import reductions as R
from .applications import convex as CX
from .applications import density as DE
from .applications import group_testing as GT
from .applications import ising as IS
from .applications import sparse as SP
from .oracle import decoding as OD
from .oracle import group_testing as OGT
from .oracle import ising_enum as OI
from .oracle import packing as OP

SUITES = ("fano", "divergences", "tensorization", "packing", "applications")


def random_pmf(rng: np.random.Generator, size: int, sparse: bool = False) -> np.ndarray:
    x = rng.exponential(size=size)
    if sparse and size > 1:
        x[rng.random(size) < 0.3] = 0.0
        if x.sum() == 0:
            x[rng.integers(size)] = 1.0
    return x / x.sum()


def random_channel(rng, rows: int, cols: int, sparse: bool = False) -> np.ndarray:
    return np.array([random_pmf(rng, cols, sparse) for _ in range(rows)])


def _fail(name: str, **instance) -> dict:
    out = {"check": name}
    for k, v in instance.items():
        out[k] = v.tolist() if isinstance(v, np.ndarray) else v
    return out


def suite_fano(trials: int, seed: int, tol: float) -> list[dict]:
    rng = np.random.default_rng([seed, 1])
    fails = []
    for _ in range(trials):
        m = int(rng.integers(2, 9))
        ny = int(rng.integers(2, 9))
        prior = np.full(m, 1.0 / m)
        ch = random_channel(rng, m, ny, sparse=bool(rng.integers(2)))
        mi = M.mutual_information(M.JointPMF.from_channel(prior, ch))
        pe = OD.bayes_optimal_error(prior, ch)
        floor = F.fano_pe_lower_binary(mi) if m == 2 else F.fano_pe_lower(mi, m)
        if pe < floor - tol:
            fails.append(_fail("fano_pe_lower", prior=prior, channel=ch, bayes_error=pe, bound=floor))
        dist = rng.integers(0, 4, size=(m, m)).astype(float)
        np.fill_diagonal(dist, 0.0)
        rc = F.RecoveryCriterion(dist, float(rng.integers(0, 3)))
        nmax = F.neighborhood_counts(rc).n_max
        if nmax < m:
            pe_t = OD.bayes_optimal_approx_error(prior, ch, rc)
            floor_t = F.approx_fano_pe_lower(mi, m, nmax)
            if pe_t < floor_t - tol:
                fails.append(_fail("approx_fano_pe_lower", prior=prior, channel=ch, distance=dist,
                                   threshold=rc.threshold, bayes_error=pe_t, bound=floor_t))
    return fails


def suite_divergences(trials: int, seed: int, tol: float) -> list[dict]:
    rng = np.random.default_rng([seed, 2])
    fails = []
    for _ in range(trials):
        size = int(rng.integers(2, 17))
        p = random_pmf(rng, size, sparse=bool(rng.integers(2)))
        q = random_pmf(rng, size)
        kl, tv = M.kl_divergence(p, q), M.tv_distance(p, q)
        h2, chi = M.hellinger_sq(p, q), M.chi_sq(p, q)
        eta = q.min()
        checks = {
            "pinsker": kl >= 2 * tv**2 - tol,
            "reverse_pinsker": kl <= 2 / eta * tv**2 + tol,
            "hellinger_lower": 0.5 * h2 <= tv + tol,
            "hellinger_upper": tv <= math.sqrt(h2) * math.sqrt(max(0.0, 1 - h2 / 4)) + tol,
            "kl_log_chi": kl <= math.log1p(chi) + tol,
            "log_chi_chi": math.log1p(chi) <= chi + tol,
        }
        event = rng.random(size) < 0.5
        checks["event_dpi"] = M.event_binary_kl(p, q, event) <= kl + tol
        for name, ok in checks.items():
            if not ok:
                fails.append(_fail(name, p=p, q=q))
    return fails


def suite_tensorization(trials: int, seed: int, tol: float) -> list[dict]:
    rng = np.random.default_rng([seed, 3])
    fails = []
    for _ in range(trials):
        nv = int(rng.integers(2, 5))
        prior = random_pmf(rng, nv)
        chans = [random_channel(rng, nv, int(rng.integers(2, 5)), sparse=True)
                 for _ in range(int(rng.integers(1, 4)))]
        try:
            MB.tensorization_upper(MB.ProductModel(tuple(chans)), prior)
        except MB.InvariantViolation as e:
            fails.append(_fail("tensorization", prior=prior, channels=[c.tolist() for c in chans], error=str(e)))
        table = rng.integers(0, 2, size=(2, 2, 2))
        ch = random_channel(rng, 4, 2).reshape(2, 2, 2)

        def policy(xh, yh, table=table):
            return int(table[len(xh), xh[-1] if xh else 0, yh[-1] if yh else 0])

        tree = MB.AdaptivePolicyTree(2, policy, ch)
        try:
            MB.adaptive_tensorization_upper(tree, random_pmf(rng, 2))
        except MB.InvariantViolation as e:
            fails.append(_fail("adaptive_tensorization", channel=ch, policy_table=table, error=str(e)))
        lhs, rhs, ok = MB.dpi_check(prior, chans[0], random_channel(rng, chans[0].shape[1], 3))
        if not ok:
            fails.append(_fail("dpi", lhs=lhs, rhs=rhs))
    return fails


def tie_free_points(rng, n: int, eps: float, gap: float = 1e-9) -> np.ndarray:
    while True:
        pts = rng.random((n, 2))
        d = np.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1))
        if np.all(np.abs(d - eps) > gap) and np.all(np.abs(d - 2 * eps) > gap):
            return pts


def suite_packing(trials: int, seed: int, tol: float) -> list[dict]:
    rng = np.random.default_rng([seed, 4])
    fails = []
    for _ in range(trials):
        eps = float(rng.uniform(0.1, 0.4))
        pts = tie_free_points(rng, 12, eps)
        ms = R.MetricPointSet.from_coordinates(pts)
        pack, pack2 = R.exact_packing_number(ms, eps), R.exact_packing_number(ms, 2 * eps)
        cover = R.exact_covering_number(ms, eps)
        if pack != OP.exhaustive_packing_number(ms, eps) or cover != OP.exhaustive_covering_number(ms, eps):
            fails.append(_fail("exact_vs_exhaustive", points=pts, eps=eps))
        if not pack2 <= cover <= pack:
            fails.append(_fail("packing_covering_sandwich", points=pts, eps=eps,
                               pack_2eps=pack2, cover=cover, pack=pack))
        if len(R.greedy_packing(ms, eps)) > pack or len(R.greedy_covering(ms, eps)) < cover:
            fails.append(_fail("greedy_vs_exact", points=pts, eps=eps))
    return fails


def suite_applications(trials: int, seed: int, tol: float) -> list[dict]:
    rng = np.random.default_rng([seed, 5])
    fails = []
    # group testing: MI ceiling and the Fano floor on exact joints
    for _ in range(max(1, trials // 50)):
        p, k, n = 8, 2, int(rng.integers(1, 7))
        X = (rng.random((n, p)) < 0.3).astype(int)
        g = OGT.gt_exact_joint(p, k, X, 0.1)
        if g.mi > n * GT.gt_capacity(0.1) + tol:
            fails.append(_fail("gt_mi_ceiling", design=X, mi=g.mi))
        if g.map_error < F.fano_pe_lower(g.mi, math.comb(p, k)) - tol:
            fails.append(_fail("gt_fano_floor", design=X, map_error=g.map_error))
    # Ising: exact KL to the empty graph stays below lambda tanh lambda
    for lam in (0.1, 0.5, 1.0, 2.0, 3.0):
        kl = OI.kl_to_empty(OI.IsingModel(4, ((0, 1),), lam))
        if kl > IS.ising_single_edge_stats(lam)[1] + tol:
            fails.append(_fail("ising_edge_kl", lam=lam, kl=kl))
    # density chain on random piecewise-constant pairs
    for _ in range(trials):
        bins = 16
        f2 = 0.5 + random_pmf(rng, bins) * bins * 0.5
        f1 = random_pmf(rng, bins) * bins
        try:
            DE.density_divergence_chain(f1, f2, 0.5)
        except MB.InvariantViolation as e:
            fails.append(_fail("density_chain", f1=f1, f2=f2, error=str(e)))
    # convex construction: per-query KL under its ceiling
    ep = float(rng.uniform(0.001, 0.124))
    for x in np.linspace(0, 1, 101):
        for v in (1, 2):
            if CX.scvx_per_query_kl(ep, 1.0, float(x), v) > CX.scvx_per_query_kl_upper(ep, 1.0) + tol:
                fails.append(_fail("scvx_kl", eps_prime=ep, x=float(x), v=v))
    # monotone in delta and zero at delta = 1
    deltas = np.linspace(0, 1, 11)
    calcs: dict[str, Callable[[float], float]] = {
        "gt_exact": lambda d: GT.gt_exact_tests_lower(GT.GroupTestingSpec(20, 3, 0.05, d)),
        "ising_exact": lambda d: IS.ising_exact_samples_lower(IS.IsingSpec(20, 0.5, d)),
        "erdos_renyi": lambda d: IS.erdos_renyi_samples_lower(20, 0.2, d),
    }
    for name, fn in calcs.items():
        vals = [fn(float(d)) for d in deltas]
        if any(b > a for a, b in zip(vals, vals[1:])) or vals[-1] != 0:
            fails.append(_fail("delta_monotone", calculator=name, values=vals))
    fam = SP.sparse_packing_family(6, 2, 1.0)
    cov = fam.vectors().T @ fam.vectors() / fam.size
    if np.abs(cov - (2 / 6) * np.eye(6)).max() > 1e-12:
        fails.append(_fail("sparse_covariance", p=6, k=2))
    return fails


SUITE_FUNCS = {
    "fano": suite_fano,
    "divergences": suite_divergences,
    "tensorization": suite_tensorization,
    "packing": suite_packing,
    "applications": suite_applications,
}


def run_suite(name: str, trials: int, seed: int, tol: float) -> list[dict]:
    if name not in SUITE_FUNCS:
        raise M.ValidationError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
    return SUITE_FUNCS[name](trials, seed, tol)
