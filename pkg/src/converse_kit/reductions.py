"""Packing and covering numbers, and reductions from estimation to testing."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .fano import approx_fano_pe_lower, fano_pe_lower, fano_pe_lower_binary
from .measures import LN2, ValidationError
from .report import NATS, BoundReport

PACKING_CAP = 24
COVERING_CAP = 20


@dataclass(frozen=True)
class MetricPointSet:
    """Finite set with a symmetric pairwise distance table."""

    dist: np.ndarray
    is_metric: bool = True
    points: tuple = field(default=())

    def __post_init__(self):
        d = np.asarray(self.dist, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValidationError("distance table must be square")
        if np.any(d < 0) or not np.allclose(d, d.T, rtol=0, atol=1e-12):
            raise ValidationError("distance table must be symmetric and nonnegative")
        if np.any(np.diag(d) != 0):
            raise ValidationError("distance table must have a zero diagonal")
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)
        if not self.points:
            object.__setattr__(self, "points", tuple(range(d.shape[0])))

    @property
    def size(self) -> int:
        return self.dist.shape[0]

    @classmethod
    def from_coordinates(cls, coords) -> "MetricPointSet":
        x = np.asarray(coords, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        diff = x[:, None, :] - x[None, :, :]
        return cls(np.sqrt((diff**2).sum(axis=-1)), True, tuple(map(tuple, x)))

    def triangle_violations(self, samples: int = 2000, seed: int = 0, tol: float = 1e-9) -> int:
        """Number of sampled triples breaking the triangle inequality."""
        n = self.size
        rng = np.random.default_rng(seed)
        i, j, k = rng.integers(0, n, size=(3, samples))
        return int(np.sum(self.dist[i, k] > self.dist[i, j] + self.dist[j, k] + tol))


@dataclass(frozen=True)
class LossModel:
    """Loss ``phi(rho(theta, theta_hat))`` through a nondecreasing ``phi``."""

    phi: Callable[[float], float]
    description: str = "custom"

    @classmethod
    def squared(cls) -> "LossModel":
        return cls(lambda r: r * r, "squared")

    @classmethod
    def identity(cls) -> "LossModel":
        return cls(lambda r: r, "identity")

    def check(self, grid=None) -> bool:
        grid = np.linspace(0, 10, 101) if grid is None else np.asarray(grid)
        vals = np.array([self.phi(float(r)) for r in grid])
        return bool(vals[0] >= 0 and np.all(np.diff(vals) >= 0))


# ---------------------------------------------------------------------------
# packing


def greedy_packing(ms: MetricPointSet, eps: float) -> list[int]:
    """Insert points in index order whenever they stay ``eps``-separated."""
    if eps <= 0:
        raise ValidationError("eps must be positive")
    kept: list[int] = []
    for i in range(ms.size):
        if all(ms.dist[i, j] >= eps for j in kept):
            kept.append(i)
    return kept


def _popcount(x: int) -> int:
    return bin(x).count("1")


def exact_packing_number(ms: MetricPointSet, eps: float, cap: int = PACKING_CAP) -> int:
    """Maximum independent set of the graph joining points closer than ``eps``."""
    if eps <= 0:
        raise ValidationError("eps must be positive")
    n = ms.size
    if n > cap:
        raise ValidationError(f"{n} points exceed the exact packing cap {cap}")
    conflict = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and ms.dist[i, j] < eps:
                conflict[i] |= 1 << j
    best = len(greedy_packing(ms, eps))

    def search(cand: int, size: int):
        nonlocal best
        while cand:
            if size + _popcount(cand) <= best:
                return
            # isolated candidates join every maximum set, so take them outright
            isolated = [v for v in _bits(cand) if conflict[v] & cand == 0]
            if isolated:
                for v in isolated:
                    cand &= ~(1 << v)
                size += len(isolated)
                continue
            v = max(_bits(cand), key=lambda u: (_popcount(conflict[u] & cand), -u))
            search(cand & ~(1 << v) & ~conflict[v], size + 1)
            cand &= ~(1 << v)
        best = max(best, size)

    search((1 << n) - 1, 0)
    return best


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


# ---------------------------------------------------------------------------
# covering


def _balls(ms: MetricPointSet, eps: float) -> list[int]:
    return [sum(1 << j for j in range(ms.size) if ms.dist[i, j] <= eps) for i in range(ms.size)]


def greedy_covering(ms: MetricPointSet, eps: float) -> list[int]:
    """Repeatedly take the center covering the most uncovered points."""
    if eps < 0:
        raise ValidationError("eps must be nonnegative")
    balls = _balls(ms, eps)
    uncovered = (1 << ms.size) - 1
    centers: list[int] = []
    while uncovered:
        gains = [_popcount(b & uncovered) for b in balls]
        c = int(np.argmax(gains))  # argmax returns the lowest index on ties
        centers.append(c)
        uncovered &= ~balls[c]
    return centers


def exact_covering_number(ms: MetricPointSet, eps: float, cap: int = COVERING_CAP) -> int:
    """Minimum number of ``eps``-balls centered at points of the set."""
    if eps < 0:
        raise ValidationError("eps must be nonnegative")
    n = ms.size
    if n > cap:
        raise ValidationError(f"{n} points exceed the exact covering cap {cap}")
    balls = _balls(ms, eps)
    covers_of = [[c for c in range(n) if balls[c] >> j & 1] for j in range(n)]
    best = len(greedy_covering(ms, eps))

    def search(uncovered: int, used: int):
        nonlocal best
        if not uncovered:
            best = min(best, used)
            return
        largest = max(_popcount(b & uncovered) for b in balls)
        if used + math.ceil(_popcount(uncovered) / largest) >= best:
            return
        # branch on the uncovered point with the fewest candidate centers
        j = min(_bits(uncovered), key=lambda u: (len(covers_of[u]), u))
        for c in sorted(covers_of[j], key=lambda c: -_popcount(balls[c] & uncovered)):
            search(uncovered & ~balls[c], used + 1)

    search((1 << n) - 1, 0)
    return best


def packing_report(ms: MetricPointSet, eps: float) -> BoundReport:
    """Packing number, exact under the cap and a greedy lower bound above it."""
    if ms.size <= PACKING_CAP:
        return BoundReport("packing_number", exact_packing_number(ms, eps), "count",
                           intermediates={"eps": eps, "exact": True},
                           provenance=["packing number by branch and bound"])
    return BoundReport("packing_number", len(greedy_packing(ms, eps)), "count",
                       intermediates={"eps": eps, "exact": False, "one_sided": "lower"},
                       provenance=["greedy packing (lower bound only)"])


def covering_report(ms: MetricPointSet, eps: float) -> BoundReport:
    """Covering number, exact under the cap and a greedy upper bound above it."""
    if ms.size <= COVERING_CAP:
        return BoundReport("covering_number", exact_covering_number(ms, eps), "count",
                           intermediates={"eps": eps, "exact": True},
                           provenance=["covering number by branch and bound"])
    return BoundReport("covering_number", len(greedy_covering(ms, eps)), "count",
                       intermediates={"eps": eps, "exact": False, "one_sided": "upper"},
                       provenance=["greedy covering (upper bound only)"])


# ---------------------------------------------------------------------------
# reductions to hypothesis testing


def _testing_pe(m: int, mi_upper: float) -> tuple[float, str]:
    if m < 2:
        raise ValidationError(f"need at least 2 hypotheses, got {m}")
    if m == 2:
        return fano_pe_lower_binary(mi_upper), "binary Fano bound with inverse binary entropy"
    return fano_pe_lower(mi_upper, m), "Fano bound for uniform V"


def minimax_bound_exact(loss: LossModel, eps: float, m: int, mi_upper: float) -> BoundReport:
    """``phi(eps/2) * Pe_lower`` for an ``eps``-separated set of ``m`` parameters."""
    pe, how = _testing_pe(m, mi_upper)
    scale = loss.phi(eps / 2)
    return BoundReport(
        "minimax_risk_lower", scale * pe, "loss", vacuous=pe == 0,
        intermediates={"mi_upper": mi_upper, "log_m": math.log(m), "m": m,
                       "phi_half_eps": scale, "pe_lower": pe, "eps": eps},
        provenance=["reduction of estimation to exact recovery", how],
    )


def minimax_bound_approx(loss: LossModel, eps: float, m: int, n_max: int, mi_upper: float) -> BoundReport:
    """``phi(eps/2) * (1 - (I + ln 2) / ln(m / n_max))``."""
    if n_max == 1:
        return minimax_bound_exact(loss, eps, m, mi_upper)
    pe = approx_fano_pe_lower(mi_upper, m, n_max)
    scale = loss.phi(eps / 2)
    return BoundReport(
        "minimax_risk_lower", scale * pe, "loss", vacuous=pe == 0,
        intermediates={"mi_upper": mi_upper, "log_m": math.log(m), "m": m, "n_max": n_max,
                       "log_m_over_n_max": math.log(m) - math.log(n_max),
                       "phi_half_eps": scale, "pe_lower": pe, "eps": eps},
        provenance=["reduction of estimation to approximate recovery", "approximate-recovery Fano bound"],
    )


LOCAL_VARIANTS = ("aux-min", "aux-avg", "aux-max", "pairwise-avg", "pairwise-max")


def local_bound(loss: LossModel, eps: float, divergences, variant: str) -> BoundReport:
    """Local approach: a divergence statistic replaces the mutual information.

    ``divergences`` is the length-``M`` vector ``D(P_v || Q)`` for the aux
    variants or the ``M x M`` table ``D(P_v || P_v')`` for the pairwise ones.
    Uniform weights over the ``M`` hypotheses throughout.
    """
    if variant not in LOCAL_VARIANTS:
        raise ValidationError(f"unknown variant {variant!r}; choose from {LOCAL_VARIANTS}")
    d = np.asarray(divergences, dtype=float)
    if d.size == 0:
        raise ValidationError("empty divergence input")
    notes = []
    if variant.startswith("aux"):
        if d.ndim != 1:
            raise ValidationError("aux variants take a 1-D vector of divergences to the auxiliary")
        stat = {"aux-min": d.min, "aux-avg": d.mean, "aux-max": d.max}[variant]()
        if variant == "aux-min":
            notes.append("the minimum over v is not an upper bound on I(V;Y) for every auxiliary "
                         "(take Q equal to one P_v); the result can exceed the true minimax risk")
    else:
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValidationError("pairwise variants take a square divergence table")
        stat = d.mean() if variant == "pairwise-avg" else d.max()
    m = d.shape[0]
    rep = minimax_bound_exact(loss, eps, m, float(stat))
    rep.intermediates.update({"variant": variant, "divergence_statistic": float(stat)})
    rep.provenance.insert(0, f"local approach with {variant} divergence statistic")
    rep.notes.extend(notes)
    return rep


def global_bound(loss: LossModel, eps_p: float, eps_c: float, n: int,
                 log_pack: float, log_cover_kl: float) -> BoundReport:
    """Global approach: ``phi(eps_p/2)(1 - (ln N_KL + n eps_c + ln 2) / ln M)``."""
    if log_pack <= 0:
        raise ValidationError("log packing number must be positive")
    mi_upper = log_cover_kl + n * eps_c
    frac = (mi_upper + LN2) / log_pack
    pe = min(1.0, max(0.0, 1.0 - frac))
    scale = loss.phi(eps_p / 2)
    return BoundReport(
        "minimax_risk_lower", scale * pe, "loss", vacuous=pe == 0,
        intermediates={"mi_upper": mi_upper, "log_pack": log_pack, "log_cover_kl": log_cover_kl,
                       "n_eps_c": n * eps_c, "fraction": frac, "phi_half_eps_p": scale,
                       "eps_p": eps_p, "eps_c": eps_c, "n": n},
        provenance=["global approach: packing number against KL covering number",
                    "covering bound on mutual information"],
    )


def optimization_bound(eps: float, m: int, mi_upper: float) -> BoundReport:
    """``eps * Pe_lower`` when at most one function is ``eps``-optimal at any point."""
    pe, how = _testing_pe(m, mi_upper)
    return BoundReport(
        "optimization_error_lower", eps * pe, "loss", vacuous=pe == 0,
        intermediates={"mi_upper": mi_upper, "m": m, "pe_lower": pe, "eps": eps},
        provenance=["reduction of optimization to hypothesis testing", how],
    )
