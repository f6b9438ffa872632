"""Exact joints and seeded simulation for noisy group testing."""

from __future__ import annotations

import itertools
import math
import time
from typing import NamedTuple

import numpy as np

from ..applications.group_testing import GroupTestingSpec
from ..measures import JointPMF, ValidationError, mutual_information
from .decoding import bayes_optimal_error
from .montecarlo import SimResult, run_blocks

EXACT_MAX_P = 10
EXACT_MAX_K = 2
EXACT_MAX_TESTS = 6
MAP_MAX_SETS = 10**6


class GTJoint(NamedTuple):
    joint: JointPMF
    mi: float
    map_error: float
    sets: list


def defective_sets(p: int, k: int) -> np.ndarray:
    """All size-``k`` subsets as rows of item indices, in lexicographic order."""
    return np.array(list(itertools.combinations(range(p), k)), dtype=int).reshape(-1, k)


def or_outcomes(design: np.ndarray, sets: np.ndarray) -> np.ndarray:
    """Noiseless outcomes, ``[set, test]``: 1 when a test contains a defective."""
    return design[:, sets].any(axis=2).T.astype(np.int8)


def bernoulli_design(n: int, p: int, nu: float, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return (rng.random((n, p)) < nu).astype(np.int8)


def gt_exact_joint(p: int, k: int, design, eps: float) -> GTJoint:
    """Joint of ``(S, Y^n)`` for a fixed design with uniform ``S``."""
    X = np.asarray(design, dtype=np.int8)
    if X.ndim != 2 or X.shape[1] != p:
        raise ValidationError("design must be an n x p binary matrix")
    n = X.shape[0]
    if p > EXACT_MAX_P or k > EXACT_MAX_K or n > EXACT_MAX_TESTS:
        raise ValidationError(
            f"exact joint needs p <= {EXACT_MAX_P}, k <= {EXACT_MAX_K}, n <= {EXACT_MAX_TESTS}")
    if not 0 <= eps < 0.5:
        raise ValidationError("noise eps must lie in [0, 1/2)")
    sets = defective_sets(p, k)
    u = or_outcomes(X, sets)  # [M, n]
    ys = ((np.arange(2**n)[:, None] >> np.arange(n)[::-1]) & 1).astype(np.int8)  # [2^n, n]
    flips = (u[:, None, :] != ys[None, :, :]).sum(axis=2)  # [M, 2^n]
    channel = eps**flips * (1 - eps) ** (n - flips)
    M = len(sets)
    joint = JointPMF(channel / M)
    prior = np.full(M, 1.0 / M)
    return GTJoint(joint, mutual_information(joint), bayes_optimal_error(prior, channel),
                   [tuple(s) for s in sets])


def _decode_map(X, y, sets):
    # with eps < 1/2 the likelihood falls with every mismatch, so MAP = fewest mismatches
    u = X[:, sets].any(axis=2)  # [n, M]
    mism = (u != y[:, None]).sum(axis=0)
    return int(np.argmin(mism))


def _decode_plugin(X, y, k):
    score = X.T @ (2 * y.astype(int) - 1)
    order = np.argsort(-score, kind="stable")
    return tuple(sorted(order[:k].tolist()))


def gt_simulate(spec: GroupTestingSpec, n: int, decoder: str = "map", trials: int = 1000,
                seed: int = 0, nu: float | None = None, workers: int = 1) -> SimResult:
    """Empirical exact-recovery error over fresh Bernoulli(``nu``) designs.

    ``decoder`` is ``"map"`` (optimal for the drawn design) or ``"plugin"``
    (per-item positive-minus-negative test count, top ``k``).
    """
    p, k, eps = spec.p, spec.k, spec.eps
    nu = 1.0 / k if nu is None else nu
    if not 0 <= nu <= 1:
        raise ValidationError("design density nu must lie in [0, 1]")
    if n < 0:
        raise ValidationError("n must be nonnegative")
    if decoder not in ("map", "plugin"):
        raise ValidationError("decoder must be 'map' or 'plugin'")
    if decoder == "map" and math.comb(p, k) > MAP_MAX_SETS:
        raise ValidationError(f"MAP decoding over C({p},{k}) sets exceeds the cap {MAP_MAX_SETS}")
    sets = defective_sets(p, k) if decoder == "map" else None
    start = time.perf_counter()

    def block(rng, size):
        errs = np.empty(size)
        for t in range(size):
            S = np.sort(rng.choice(p, size=k, replace=False))
            X = (rng.random((n, p)) < nu).astype(np.int8)
            y = X[:, S].any(axis=1) ^ (rng.random(n) < eps)
            if decoder == "map":
                if n == 0:
                    guess = tuple(sets[0])
                else:
                    guess = tuple(sets[_decode_map(X, y, sets)])
            else:
                guess = _decode_plugin(X, y, k)
            errs[t] = guess != tuple(S)
        return errs

    samples = run_blocks(trials, seed, block, workers)
    est = float(samples.mean())
    se = math.sqrt(est * (1 - est) / trials)
    return SimResult(est, se, trials, seed, time.perf_counter() - start)
