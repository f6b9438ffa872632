"""Sparse linear regression ``Y = X theta + Z`` with ``k``-sparse ``theta``."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..measures import ValidationError
from ..reductions import LossModel, minimax_bound_approx
from ..report import BoundReport, conservative_ceil

ENUMERATION_CAP = 16


@dataclass(frozen=True)
class SparseRegressionSpec:
    p: int
    k: int
    sigma: float
    frob_sq: float
    delta: float | None = None

    def __post_init__(self):
        if not 1 <= self.k < self.p:
            raise ValidationError("need 1 <= k < p")
        if not self.sigma > 0 or not self.frob_sq > 0:
            raise ValidationError("sigma and frob_sq must be positive")
        if self.delta is not None and not self.delta > 0:
            raise ValidationError("delta must be positive")


@dataclass(frozen=True)
class SparseFamily:
    """Vectors in ``{-1, 0, 1}^p`` with exactly ``k`` nonzeros, scaled by ``eps_prime``.

    Success radius is Hamming distance ``t = k/2``.
    """

    p: int
    k: int
    eps_prime: float

    @property
    def size(self) -> int:
        return 2**self.k * math.comb(self.p, self.k)

    @property
    def threshold(self) -> float:
        return self.k / 2

    @property
    def separation(self) -> float:
        """Pairs farther than ``t`` in Hamming distance are this far apart in l2."""
        return self.eps_prime * math.sqrt(self.threshold)

    def n_max_paper(self) -> int:
        """``sum_{j <= ceil(k/2)} 2^j C(p, j)``, an upper bound on the ball size."""
        return sum(2**j * math.comb(self.p, j) for j in range(math.ceil(self.k / 2) + 1))

    def n_max_exact(self) -> int:
        """Members within Hamming distance ``t`` of any fixed member.

        A neighbor moves ``a`` support positions (distance ``2a``) and flips
        ``b`` shared signs (distance ``b``).
        """
        p, k, t = self.p, self.k, self.threshold
        total = 0
        for a in range(k + 1):
            for b in range(k - a + 1):
                if 2 * a + b <= t:
                    total += math.comb(k, a) * math.comb(p - k, a) * 2**a * math.comb(k - a, b)
        return total

    def vectors(self) -> np.ndarray:
        """All members as rows (unscaled), in lexicographic support order."""
        if self.p > ENUMERATION_CAP:
            raise ValidationError(f"p={self.p} exceeds the enumeration cap {ENUMERATION_CAP}")
        rows = []
        for support in itertools.combinations(range(self.p), self.k):
            for signs in itertools.product((-1, 1), repeat=self.k):
                v = np.zeros(self.p)
                v[list(support)] = signs
                rows.append(v)
        return np.array(rows)

    def parameters(self) -> np.ndarray:
        return self.eps_prime * self.vectors()


def sparse_packing_family(p: int, k: int, eps_prime: float) -> SparseFamily:
    if not 1 <= k <= p:
        raise ValidationError("need 1 <= k <= p")
    if eps_prime <= 0:
        raise ValidationError("eps_prime must be positive")
    return SparseFamily(p, k, eps_prime)


def sparse_eps_prime_sq(spec: SparseRegressionSpec) -> float:
    return spec.sigma**2 * spec.p * math.log(spec.p / spec.k) / (2 * spec.frob_sq)


def sparse_mi_upper(eps_prime_sq: float, sigma: float, k: int, p: int, frob_sq: float) -> float:
    """``(eps'^2 / 2 sigma^2) E||X V||^2`` with ``E||X V||^2 = (k/p) ||X||_F^2``."""
    return eps_prime_sq / (2 * sigma**2) * (k / p) * frob_sq


def sparse_headline(spec: SparseRegressionSpec) -> float:
    return spec.sigma**2 * spec.k * spec.p * math.log(spec.p / spec.k) / (32 * spec.frob_sq)


def sparse_minimax_risk_lower(spec: SparseRegressionSpec, n_max: str = "paper") -> BoundReport:
    """Finite-size proof chain for the squared-error minimax risk.

    ``n_max`` selects the neighborhood count: ``"paper"`` uses the
    closed-form sum, ``"exact"`` the true ball size (never larger).
    """
    ep2 = sparse_eps_prime_sq(spec)
    fam = sparse_packing_family(spec.p, spec.k, math.sqrt(ep2))
    if n_max == "paper":
        nmax = fam.n_max_paper()
    elif n_max == "exact":
        nmax = fam.n_max_exact()
    else:
        raise ValidationError("n_max must be 'paper' or 'exact'")
    mi = sparse_mi_upper(ep2, spec.sigma, spec.k, spec.p, spec.frob_sq)
    inter = {"eps_prime_sq": ep2, "mi_upper": mi, "v_size": fam.size, "n_max": nmax,
             "n_max_mode": n_max, "separation_eps": fam.separation,
             "headline": sparse_headline(spec)}
    prov = ["reduction to approximate recovery with Hamming radius k/2",
            "tensorization and Gaussian KL to a zero-mean auxiliary",
            "covariance of the uniform sparse sign vector"]
    if nmax >= fam.size:
        return BoundReport("minimax_risk_lower", 0.0, "squared l2", vacuous=True,
                           intermediates=inter, provenance=prov)
    rep = minimax_bound_approx(LossModel.squared(), fam.separation, fam.size, nmax, mi)
    rep.intermediates.update(inter)
    rep.provenance = prov + rep.provenance
    rep.units = "squared l2"
    rep.notes.append("headline is the asymptotic display form, reported alongside")
    return rep


def sparse_samples_lower(p: int, k: int, sigma: float, gamma: float, delta: float,
                         n_max: str = "paper") -> BoundReport:
    """Measurements needed for risk ``delta`` when ``||X||_F^2 <= n p gamma``.

    The proof-chain bound is ``C / ||X||_F^2`` for a constant ``C``, so it
    inverts exactly.
    """
    if not gamma > 0 or not delta > 0:
        raise ValidationError("gamma and delta must be positive")
    unit = sparse_minimax_risk_lower(SparseRegressionSpec(p, k, sigma, 1.0), n_max)
    c = unit.value  # risk bound at ||X||_F^2 = 1
    need = c / (p * gamma * delta)
    headline = sigma**2 * k * math.log(p / k) / (32 * delta * gamma)
    n = conservative_ceil(need)
    return BoundReport(
        "n_lower", n, "samples", vacuous=n == 0,
        intermediates={"pre_ceiling": need, "headline": headline, "risk_times_frob": c,
                       "pe_lower": unit.intermediates.get("pe_lower", 0.0)},
        provenance=unit.provenance + ["Frobenius budget n p gamma"],
    )
