"""Seeded Monte Carlo estimators.

Trials are split into fixed blocks; block ``b`` draws from
``default_rng([seed, b])``.  Blocks are independent of how many workers run
them, so results depend only on ``(inputs, seed, trials)``.  Normals come
from numpy's ``Generator.standard_normal`` (ziggurat).
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import logsumexp

from ..measures import ValidationError, as_pmf

BLOCK = 512
MAX_COMPONENTS = 10**4
MAX_DIM = 16
MAX_BALL_DIM = 8


@dataclass(frozen=True)
class SimResult:
    estimate: float
    stderr: float
    trials: int
    seed: int
    wall_time: float = field(default=0.0, compare=False)


def run_blocks(trials: int, seed: int, block_fn: Callable[[np.random.Generator, int], np.ndarray],
               workers: int = 1) -> np.ndarray:
    """Per-trial samples from ``block_fn(rng, size)`` over deterministic blocks."""
    if trials < 1:
        raise ValidationError("need at least one trial")
    sizes = [min(BLOCK, trials - s) for s in range(0, trials, BLOCK)]

    def one(b):
        return np.asarray(block_fn(np.random.default_rng([seed, b]), sizes[b]), dtype=float)

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, range(len(sizes))))
    else:
        parts = [one(b) for b in range(len(sizes))]
    return np.concatenate(parts)


def summarize(samples: np.ndarray, seed: int, start: float) -> SimResult:
    n = samples.size
    est = float(samples.mean())
    se = float(samples.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return SimResult(est, se, n, seed, time.perf_counter() - start)


def mixture_mi_mc(means, sigma: float, prior=None, trials: int = 10_000, seed: int = 0,
                  workers: int = 1) -> SimResult:
    """``I(V; Y)`` for ``Y = mean_V + sigma Z`` by averaging ``ln P(y|v) / P(y)``."""
    mu = np.asarray(means, dtype=float)
    if mu.ndim == 1:  # scalar components
        mu = mu[:, None]
    K, d = mu.shape
    if K > MAX_COMPONENTS or d > MAX_DIM:
        raise ValidationError(f"need at most {MAX_COMPONENTS} components of dimension <= {MAX_DIM}")
    if not sigma > 0:
        raise ValidationError("sigma must be positive")
    w = np.full(K, 1.0 / K) if prior is None else as_pmf(prior).mass
    logw = np.log(w, where=w > 0, out=np.full(K, -np.inf))
    start = time.perf_counter()

    def block(rng, size):
        v = rng.choice(K, size=size, p=w)
        y = mu[v] + sigma * rng.standard_normal((size, d))
        # Gaussian normalizers cancel in the ratio
        sq = ((y[:, None, :] - mu[None, :, :]) ** 2).sum(axis=-1) / (2 * sigma**2)
        own = -sq[np.arange(size), v]
        mix = logsumexp(logw[None, :] - sq, axis=1)
        return own - mix

    return summarize(run_blocks(trials, seed, block, workers), seed, start)


@dataclass(frozen=True)
class Box:
    lo: Sequence[float]
    hi: Sequence[float]

    def bounds(self):
        return np.asarray(self.lo, float), np.asarray(self.hi, float)

    def contains(self, x):
        lo, hi = self.bounds()
        return np.all((x >= lo) & (x <= hi), axis=1)


@dataclass(frozen=True)
class L2Ball:
    center: Sequence[float]
    radius: float

    def bounds(self):
        c = np.asarray(self.center, float)
        return c - self.radius, c + self.radius

    def contains(self, x):
        return ((x - np.asarray(self.center, float)) ** 2).sum(axis=1) <= self.radius**2


@dataclass(frozen=True)
class LinfBall:
    center: Sequence[float]
    radius: float

    def bounds(self):
        c = np.asarray(self.center, float)
        return c - self.radius, c + self.radius

    def contains(self, x):
        return np.abs(x - np.asarray(self.center, float)).max(axis=1) <= self.radius


def ball_volume_mc(dim: int, bodies, trials: int = 100_000, seed: int = 0, workers: int = 1) -> SimResult:
    """Volume of an intersection of boxes and balls by rejection sampling."""
    if not 1 <= dim <= MAX_BALL_DIM:
        raise ValidationError(f"dimension must lie in [1, {MAX_BALL_DIM}]")
    bodies = [bodies] if not isinstance(bodies, (list, tuple)) else list(bodies)
    if not bodies:
        raise ValidationError("need at least one body")
    lo = np.full(dim, -np.inf)
    hi = np.full(dim, np.inf)
    for b in bodies:
        blo, bhi = b.bounds()
        if blo.shape != (dim,):
            raise ValidationError("body dimension mismatch")
        lo, hi = np.maximum(lo, blo), np.minimum(hi, bhi)
    if np.any(hi <= lo):
        return SimResult(0.0, 0.0, trials, seed)
    box_vol = float(np.prod(hi - lo))
    start = time.perf_counter()

    def block(rng, size):
        x = lo + (hi - lo) * rng.random((size, dim))
        inside = np.ones(size, dtype=bool)
        for b in bodies:
            inside &= b.contains(x)
        return inside * box_vol

    return summarize(run_blocks(trials, seed, block, workers), seed, start)
