"""Exact information measures over finite alphabets.

Every quantity is in nats.  The conventions ``0 ln 0 = 0`` and
``p ln(p/0) = +inf`` for ``p > 0`` hold everywhere; an infinite divergence
is a value, not an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import entr, rel_entr

PMF_TOL = 1e-12
LN2 = math.log(2.0)


class ValidationError(ValueError):
    """Input violates a documented precondition."""


def _check_mass(mass: np.ndarray, what: str) -> np.ndarray:
    if mass.size == 0:
        raise ValidationError(f"{what}: empty alphabet")
    if not np.all(np.isfinite(mass)):
        raise ValidationError(f"{what}: non-finite mass")
    if np.any(mass < 0):
        raise ValidationError(f"{what}: negative mass {float(mass.min())!r}")
    total = float(mass.sum())
    if abs(total - 1.0) > PMF_TOL:
        raise ValidationError(f"{what}: mass sums to {total!r}, not 1")
    # renormalize only within tolerance; anything else was rejected above
    return mass / total


@dataclass(frozen=True)
class FinitePMF:
    """Probability mass function on ``{0, ..., size-1}``."""

    mass: np.ndarray

    def __post_init__(self):
        mass = _check_mass(np.asarray(self.mass, dtype=float).ravel(), "FinitePMF")
        mass.setflags(write=False)
        object.__setattr__(self, "mass", mass)

    @property
    def alphabet_size(self) -> int:
        return self.mass.size

    @classmethod
    def uniform(cls, size: int) -> "FinitePMF":
        return cls(np.full(size, 1.0 / size))

    def __len__(self):
        return self.mass.size


@dataclass(frozen=True)
class JointPMF:
    """Joint mass function of a pair ``(V, Y)``; rows index ``V``."""

    mass: np.ndarray

    def __post_init__(self):
        mass = np.asarray(self.mass, dtype=float)
        if mass.ndim != 2:
            raise ValidationError("JointPMF needs a 2-D table")
        mass = _check_mass(mass, "JointPMF")
        mass.setflags(write=False)
        object.__setattr__(self, "mass", mass)

    @property
    def rows(self) -> int:
        return self.mass.shape[0]

    @property
    def cols(self) -> int:
        return self.mass.shape[1]

    def marginal_v(self) -> FinitePMF:
        return FinitePMF(self.mass.sum(axis=1))

    def marginal_y(self) -> FinitePMF:
        return FinitePMF(self.mass.sum(axis=0))

    @classmethod
    def from_channel(cls, prior, channel) -> "JointPMF":
        prior = as_pmf(prior)
        channel = as_channel(channel)
        if channel.input_size != prior.alphabet_size:
            raise ValidationError("prior length does not match channel input size")
        return cls(prior.mass[:, None] * channel.rows)


@dataclass(frozen=True)
class ChannelMatrix:
    """Row-stochastic table ``rows[v, y] = P(y | v)``."""

    rows: np.ndarray

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=float)
        if rows.ndim != 2:
            raise ValidationError("ChannelMatrix needs a 2-D table")
        checked = np.vstack([_check_mass(r, f"channel row {i}") for i, r in enumerate(rows)])
        checked.setflags(write=False)
        object.__setattr__(self, "rows", checked)

    @property
    def input_size(self) -> int:
        return self.rows.shape[0]

    @property
    def output_size(self) -> int:
        return self.rows.shape[1]

    def row(self, v: int) -> FinitePMF:
        return FinitePMF(self.rows[v])


@dataclass(frozen=True)
class GaussianScalar:
    mean: float
    variance: float

    def __post_init__(self):
        if not self.variance > 0:
            raise ValidationError(f"variance must be positive, got {self.variance!r}")


def as_pmf(p) -> FinitePMF:
    return p if isinstance(p, FinitePMF) else FinitePMF(p)


def as_joint(j) -> JointPMF:
    return j if isinstance(j, JointPMF) else JointPMF(j)


def as_channel(c) -> ChannelMatrix:
    return c if isinstance(c, ChannelMatrix) else ChannelMatrix(c)


def _pair(p, q) -> tuple[np.ndarray, np.ndarray]:
    p, q = as_pmf(p).mass, as_pmf(q).mass
    if p.size != q.size:
        raise ValidationError(f"alphabet sizes differ: {p.size} vs {q.size}")
    return p, q


def _check_probability(a: float, name: str = "a") -> float:
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise ValidationError(f"{name} must lie in [0, 1], got {a!r}")
    return a


# ---------------------------------------------------------------------------
# entropies


def entropy(p) -> float:
    """Shannon entropy ``-sum p ln p``."""
    return float(entr(as_pmf(p).mass).sum())


def joint_entropy(mass) -> float:
    """Entropy of a joint table of any shape."""
    mass = _check_mass(np.asarray(mass, dtype=float), "joint table")
    return float(entr(mass).sum())


def conditional_entropy(mass, target_axes: Sequence[int]) -> float:
    """``H(target | rest)`` for a joint table; ``target_axes`` selects the target."""
    mass = _check_mass(np.asarray(mass, dtype=float), "joint table")
    rest = tuple(a for a in range(mass.ndim) if a not in set(target_axes))
    if not rest:
        return float(entr(mass).sum())
    drop = tuple(a for a in range(mass.ndim) if a not in rest)
    return float(entr(mass).sum() - entr(mass.sum(axis=drop)).sum())


def binary_entropy(a: float) -> float:
    """``H2(a) = a ln(1/a) + (1-a) ln(1/(1-a))``."""
    a = _check_probability(a)
    return float(entr(a) + entr(1.0 - a))


def inv_binary_entropy(h: float) -> float:
    """Inverse of ``binary_entropy`` on ``[0, 1/2]``, by bisection."""
    h = float(h)
    if not 0.0 <= h <= LN2 + 1e-15:
        raise ValidationError(f"h must lie in [0, ln 2], got {h!r}")
    if h >= LN2:
        return 0.5
    if h == 0.0:
        return 0.0
    lo, hi = 0.0, 0.5
    # H2 is strictly increasing on [0, 1/2]; stop once the bracket stops shrinking
    while hi - lo > 1e-16:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if binary_entropy(mid) < h:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# mutual information


def mutual_information(j) -> float:
    """``I(V;Y)`` of a joint table, as ``D(P_VY || P_V x P_Y)``."""
    mass = as_joint(j).mass
    pv = mass.sum(axis=1, keepdims=True)
    py = mass.sum(axis=0, keepdims=True)
    mi = float(rel_entr(mass, pv * py).sum())
    return max(mi, 0.0)


def mutual_information_avg_form(j) -> float:
    """``sum_v P(v) D(P_{Y|V=v} || P_Y)``, the average-divergence form of ``I(V;Y)``."""
    mass = as_joint(j).mass
    pv = mass.sum(axis=1)
    py = mass.sum(axis=0)
    total = 0.0
    for v in np.flatnonzero(pv > 0):
        total += pv[v] * float(rel_entr(mass[v] / pv[v], py).sum())
    return total


def conditional_mutual_information(j3) -> float:
    """``I(V;Y|X)`` for a table indexed ``[v, y, x]``."""
    mass = _check_mass(np.asarray(j3, dtype=float), "three-way joint")
    if mass.ndim != 3:
        raise ValidationError("three-way joint must be a 3-D table indexed [v, y, x]")
    px = mass.sum(axis=(0, 1))
    total = 0.0
    for x in np.flatnonzero(px > 0):
        block = mass[:, :, x] / px[x]
        pv = block.sum(axis=1, keepdims=True)
        py = block.sum(axis=0, keepdims=True)
        total += px[x] * float(rel_entr(block, pv * py).sum())
    return max(total, 0.0)


# ---------------------------------------------------------------------------
# divergences


def kl_divergence(p, q) -> float:
    """``D(p || q)``; ``+inf`` when ``p`` charges a zero of ``q``."""
    p, q = _pair(p, q)
    return float(rel_entr(p, q).sum())


def tv_distance(p, q) -> float:
    p, q = _pair(p, q)
    return float(0.5 * np.abs(p - q).sum())


def hellinger_sq(p, q) -> float:
    """Squared Hellinger distance ``sum (sqrt p - sqrt q)^2``, in ``[0, 2]``."""
    p, q = _pair(p, q)
    return float(((np.sqrt(p) - np.sqrt(q)) ** 2).sum())


def chi_sq(p, q) -> float:
    """``chi^2(p || q) = sum (p - q)^2 / q``; ``+inf`` on support violation."""
    p, q = _pair(p, q)
    if np.any((q == 0) & (p > 0)):
        return math.inf
    nz = q > 0
    return float((((p[nz] - q[nz]) ** 2) / q[nz]).sum())


def gaussian_kl(a: GaussianScalar, b: GaussianScalar) -> float:
    """KL divergence between equal-variance univariate Gaussians."""
    if a.variance != b.variance:
        raise ValidationError("gaussian_kl only covers equal variances")
    return (a.mean - b.mean) ** 2 / (2.0 * a.variance)


def binary_kl(a: float, b: float) -> float:
    """``D2(a || b)`` between Bernoulli(a) and Bernoulli(b)."""
    a = _check_probability(a, "a")
    b = _check_probability(b, "b")
    return float(rel_entr(a, b) + rel_entr(1.0 - a, 1.0 - b))


def event_binary_kl(p, q, event) -> float:
    """``D2(P[E] || Q[E])`` from the masses of an event and its complement.

    Summing the two sides separately avoids the spurious ``+inf`` that
    ``binary_kl(P[E], Q[E])`` would give when ``Q[E]`` rounds to exactly 1.
    """
    p, q = _pair(p, q)
    e = np.asarray(event, dtype=bool)
    if e.shape != p.shape:
        raise ValidationError("event mask must match the alphabet")
    return float(rel_entr(p[e].sum(), q[e].sum()) + rel_entr(p[~e].sum(), q[~e].sum()))
