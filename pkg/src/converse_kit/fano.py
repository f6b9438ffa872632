"""Fano's inequality and its variants as computable lower bounds.

All bounds clamp into [0, 1]; a clamped bound is vacuous, not an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.special import gammaln

from .measures import LN2, ValidationError, binary_entropy, inv_binary_entropy


@dataclass(frozen=True)
class RecoveryCriterion:
    """Distance table ``distance[v, vhat]`` and success threshold ``t``."""

    distance: np.ndarray
    threshold: float

    def __post_init__(self):
        d = np.asarray(self.distance, dtype=float)
        if d.ndim != 2 or d.size == 0:
            raise ValidationError("distance must be a non-empty 2-D table")
        d.setflags(write=False)
        object.__setattr__(self, "distance", d)
        object.__setattr__(self, "threshold", float(self.threshold))

    @property
    def v_size(self) -> int:
        return self.distance.shape[0]

    @property
    def vhat_size(self) -> int:
        return self.distance.shape[1]

    @classmethod
    def exact(cls, m: int) -> "RecoveryCriterion":
        """Equality distance with ``t = 0``: success means ``vhat == v``."""
        return cls(1.0 - np.eye(m), 0.0)

    def within(self) -> np.ndarray:
        """Boolean table ``d(v, vhat) <= t``."""
        return self.distance <= self.threshold


class NeighborhoodCounts(NamedTuple):
    n_max: int
    n_min: int
    per_vhat: np.ndarray


@dataclass(frozen=True)
class ConditionalFanoEntry:
    weight: float
    cond_entropy: float
    support_size: int

    def __post_init__(self):
        if not 0.0 <= self.weight <= 1.0:
            raise ValidationError(f"weight must lie in [0, 1], got {self.weight!r}")
        if self.support_size <= 2:
            raise ValidationError(
                f"support_size {self.support_size} leaves ln(|V_a| - 1) <= 0; "
                "treat binary blocks with fano_pe_lower_binary instead"
            )
        if not -1e-12 <= self.cond_entropy <= math.log(self.support_size) + 1e-12:
            raise ValidationError("cond_entropy must lie in [0, ln(support_size)]")


@dataclass(frozen=True)
class VolumeRatio:
    total_volume: float
    sup_ball_volume: float

    def __post_init__(self):
        if not (self.total_volume > 0 and self.sup_ball_volume > 0):
            raise ValidationError("volumes must be positive")
        if self.sup_ball_volume > self.total_volume:
            raise ValidationError("sup_ball_volume exceeds total_volume")

    @property
    def log_ratio(self) -> float:
        return math.log(self.total_volume) - math.log(self.sup_ball_volume)


def _check_m(m: int) -> int:
    if m < 2:
        raise ValidationError(f"alphabet size must be at least 2, got {m}")
    return m


def _check_mi(mi: float) -> float:
    mi = float(mi)
    if math.isnan(mi) or mi < 0:
        raise ValidationError(f"mutual information must be nonnegative, got {mi!r}")
    return mi


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))


def fano_entropy_rhs(pe: float, m: int) -> float:
    """``H2(pe) + pe ln(m - 1)``; upper-bounds ``H(V | Vhat)``."""
    _check_m(m)
    return binary_entropy(pe) + pe * math.log(m - 1)


def fano_pe_lower(mi: float, m: int) -> float:
    """``max(0, 1 - (mi + ln 2) / ln m)`` for uniform ``V`` on ``m`` values.

    At ``m = 2`` this is identically 0; use :func:`fano_pe_lower_binary`.
    """
    _check_m(m)
    mi = _check_mi(mi)
    return _clamp01(1.0 - (mi + LN2) / math.log(m))


def fano_pe_lower_binary(mi: float) -> float:
    """``H2^{-1}(ln 2 - mi)`` for a uniform bit."""
    mi = _check_mi(mi)
    return inv_binary_entropy(min(LN2, max(0.0, LN2 - mi)))


def neighborhood_counts(rc: RecoveryCriterion) -> NeighborhoodCounts:
    per = rc.within().sum(axis=0).astype(int)
    return NeighborhoodCounts(int(per.max()), int(per.min()), per)


def approx_fano_pe_lower(mi: float, m: int, n_max: int) -> float:
    """``max(0, 1 - (mi + ln 2) / ln(m / n_max))``."""
    mi = _check_mi(mi)
    if n_max < 1:
        raise ValidationError(f"n_max must be at least 1, got {n_max}")
    if n_max >= m:
        raise ValidationError(f"n_max={n_max} >= m={m}: ln(m / n_max) <= 0")
    if n_max == 1:
        # share the exact-recovery arithmetic so both routes agree bit-for-bit
        return fano_pe_lower(mi, m)
    return _clamp01(1.0 - (mi + LN2) / (math.log(m) - math.log(n_max)))


def approx_fano_entropy_rhs(pe_t: float, m: int, n_max: int, n_min: int) -> float:
    """``H2(pe_t) + pe_t ln((m - n_min) / n_max) + ln n_max``."""
    if n_max < 1:
        raise ValidationError("n_max must be at least 1")
    if not 0 <= n_min <= n_max <= m:
        raise ValidationError("need 0 <= n_min <= n_max <= m")
    if n_max == 1 and n_min == 1:
        return fano_entropy_rhs(pe_t, m)
    h = binary_entropy(pe_t)
    if m == n_min:
        # every vhat covers every v, so pe_t can only be rounding residue
        if pe_t > 1e-12:
            raise ValidationError("pe_t > 0 is impossible when n_min equals m")
        mid = 0.0
    else:
        mid = pe_t * math.log((m - n_min) / n_max) if pe_t > 0 else 0.0
    return h + mid + math.log(n_max)


def conditional_fano_pe_lower(entries: Sequence[ConditionalFanoEntry]) -> float:
    """``sum_a P[A=a] max(0, (H(V|Vhat, A=a) - ln 2) / ln(|V_a| - 1))``."""
    if sum(e.weight for e in entries) > 1.0 + 1e-12:
        raise ValidationError("weights sum to more than 1")
    total = 0.0
    for e in entries:
        total += e.weight * max(0.0, (e.cond_entropy - LN2) / math.log(e.support_size - 1))
    return _clamp01(total)


def continuum_fano_pe_lower(mi: float, vr: VolumeRatio) -> float:
    """Volume-ratio form: ``1 - (mi + ln 2) / ln(Vol(V) / sup Vol(V ∩ ball))``."""
    mi = _check_mi(mi)
    denom = vr.log_ratio
    if denom <= 0:
        raise ValidationError("total volume equals the ball volume: zero denominator")
    return _clamp01(1.0 - (mi + LN2) / denom)


# ---------------------------------------------------------------------------
# volumes for the continuum form


def box_volume(sides: Sequence[float]) -> float:
    sides = np.asarray(sides, dtype=float)
    if np.any(sides <= 0):
        raise ValidationError("box sides must be positive")
    return float(np.prod(sides))


def l2_ball_volume(dim: int, radius: float) -> float:
    """``pi^{d/2} r^d / Gamma(d/2 + 1)``."""
    if dim < 1 or radius <= 0:
        raise ValidationError("need dim >= 1 and radius > 0")
    return math.exp(0.5 * dim * math.log(math.pi) + dim * math.log(radius) - gammaln(0.5 * dim + 1))


def linf_ball_volume(dim: int, radius: float) -> float:
    if dim < 1 or radius <= 0:
        raise ValidationError("need dim >= 1 and radius > 0")
    return (2.0 * radius) ** dim
