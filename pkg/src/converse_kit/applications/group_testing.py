"""Noisy group testing: OR of the tested items, passed through a BSC."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..fano import fano_entropy_rhs
from ..measures import LN2, ValidationError, binary_entropy
from ..report import BoundReport, conservative_ceil


@dataclass(frozen=True)
class GroupTestingSpec:
    p: int
    k: int
    eps: float = 0.0
    delta: float = 0.0
    L: int | None = None
    alpha: float | None = None

    def __post_init__(self):
        if not 1 <= self.k <= self.p:
            raise ValidationError("need 1 <= k <= p")
        if not 0 <= self.eps < 0.5:
            raise ValidationError("noise eps must lie in [0, 1/2)")
        if not 0 <= self.delta <= 1:
            raise ValidationError("delta must lie in [0, 1]")
        if self.L is not None and not self.k <= self.L <= self.p:
            raise ValidationError("list size L must satisfy k <= L <= p")
        if self.alpha is not None and not 0 <= self.alpha < 1:
            raise ValidationError("alpha must lie in [0, 1)")


def gt_capacity(eps: float) -> float:
    """Per-test information ceiling ``ln 2 - H2(eps)``."""
    if not 0 <= eps < 0.5:
        raise ValidationError("noise eps must lie in [0, 1/2)")
    return LN2 - binary_entropy(eps)


def _ln_binom(n: int, r: int) -> float:
    return math.log(math.comb(n, r))


def _required_info(delta: float, m: int, n_nbhd: int) -> float:
    """Least ``I(S; Y | X)`` compatible with ``P_e <= delta`` by the entropy form.

    Uses ``H(S | Shat) <= H2(delta) + delta ln((m - N)/N) + ln N`` with ``N``
    estimates-per-neighborhood (``N = 1`` is exact recovery).  Zero once
    ``delta`` reaches the guessing error ``(m - N)/m``.
    """
    if n_nbhd >= m or delta >= (m - n_nbhd) / m:
        return 0.0
    if n_nbhd == 1:
        residual = fano_entropy_rhs(delta, m) if m >= 2 else 0.0
    else:
        residual = binary_entropy(delta) + delta * math.log((m - n_nbhd) / n_nbhd) + math.log(n_nbhd)
    return max(0.0, math.log(m) - residual)


def gt_exact_report(spec: GroupTestingSpec) -> BoundReport:
    """Tests needed for exact recovery with error at most ``delta``.

    Valid for non-adaptive and adaptive designs alike: both route the
    information through at most ``gt_capacity`` nats per test.
    """
    m = math.comb(spec.p, spec.k)
    cap = gt_capacity(spec.eps)
    need = _required_info(spec.delta, m, 1)
    weakened = max(0.0, (1 - spec.delta) * math.log(m) - LN2)
    n = conservative_ceil(need / cap)
    return BoundReport(
        "n_lower", n, "tests", vacuous=n == 0,
        intermediates={"log_m": math.log(m), "m": m, "capacity": cap,
                       "info_required": need, "info_required_weakened": weakened,
                       "n_lower_weakened": conservative_ceil(weakened / cap)},
        provenance=["Fano inequality, entropy form", "data processing through the test outcomes",
                    "tensorization over tests", "binary symmetric channel capacity"],
    )


def gt_exact_tests_lower(spec: GroupTestingSpec) -> int:
    return gt_exact_report(spec).value


def gt_nmax(p: int, k: int, L: int, alpha: float) -> int:
    """Defective sets with at most ``floor(alpha k)`` items outside a size-``L`` list."""
    jmax = math.floor(alpha * k)
    return sum(math.comb(p - L, j) * math.comb(L, k - j) for j in range(jmax + 1))


def gt_nmax_log_upper(p: int, k: int, L: int, alpha: float) -> float:
    """Count-free upper bound on ``ln gt_nmax``: ``floor(alpha k) + 1`` times the largest term."""
    j = math.floor(alpha * k)

    def xlog(a, b):
        return 0.0 if a == 0 else a * math.log(b / a)

    return math.log(j + 1) + xlog(j, p * math.e) + xlog(k - j, L * math.e)


def gt_approx_report(spec: GroupTestingSpec) -> BoundReport:
    """Tests needed so that a size-``L`` list misses at most ``alpha k`` defectives."""
    if spec.L is None or spec.alpha is None:
        raise ValidationError("approximate recovery needs L and alpha")
    m = math.comb(spec.p, spec.k)
    nmax = gt_nmax(spec.p, spec.k, spec.L, spec.alpha)
    cap = gt_capacity(spec.eps)
    need = _required_info(spec.delta, m, nmax)
    if nmax < m:
        weakened = max(0.0, (1 - spec.delta) * (math.log(m) - math.log(nmax)) - LN2)
    else:
        weakened = 0.0
    n = conservative_ceil(need / cap)
    return BoundReport(
        "n_lower", n, "tests", vacuous=n == 0,
        intermediates={"log_m": math.log(m), "m": m, "n_max": nmax, "log_n_max": math.log(nmax),
                       "capacity": cap, "info_required": need,
                       "info_required_weakened": weakened,
                       "n_lower_weakened": conservative_ceil(weakened / cap)},
        provenance=["approximate-recovery Fano inequality, entropy form",
                    "exact neighborhood count for list decoding",
                    "tensorization over tests", "binary symmetric channel capacity"],
    )


def gt_approx_tests_lower(spec: GroupTestingSpec) -> int:
    return gt_approx_report(spec).value
