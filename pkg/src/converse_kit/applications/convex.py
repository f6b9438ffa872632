"""Strongly convex optimization on [0, 1] with a noisy first-order oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from ..measures import LN2, GaussianScalar, ValidationError, gaussian_kl, inv_binary_entropy
from ..reductions import optimization_bound
from ..report import BoundReport, conservative_ceil


@dataclass(frozen=True)
class ConvexOptSpec:
    sigma: float
    delta: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValidationError("sigma must be positive")
        if not self.delta > 0:
            raise ValidationError("delta must be positive")


@dataclass(frozen=True)
class Quadratic:
    """``f(x) = (x - center)^2 / 2``."""

    center: float

    def __call__(self, x):
        return 0.5 * (x - self.center) ** 2

    def grad(self, x):
        return x - self.center


@dataclass(frozen=True)
class ScvxConstruction:
    f1: Quadratic
    f2: Quadratic
    x_star_1: float
    x_star_2: float

    def __getitem__(self, v: int) -> Quadratic:
        return {1: self.f1, 2: self.f2}[v]


REFERENCE = Quadratic(0.5)


def _check_eps_prime(eps_prime: float):
    if not 0 < eps_prime < 1 / 8:
        raise ValidationError("eps_prime must lie in (0, 1/8) so both minimizers stay inside (0, 1)")


def scvx_construction(eps_prime: float) -> ScvxConstruction:
    """Two quadratics whose minimizers sit ``sqrt(2 eps')`` either side of 1/2."""
    _check_eps_prime(eps_prime)
    r = math.sqrt(2 * eps_prime)
    return ScvxConstruction(Quadratic(0.5 - r), Quadratic(0.5 + r), 0.5 - r, 0.5 + r)


def scvx_per_query_kl(eps_prime: float, sigma: float, x: float, v: int) -> float:
    """KL of the (value, gradient) observation under ``f_v`` against the reference ``f_0``."""
    _check_eps_prime(eps_prime)
    if not 0 <= x <= 1:
        raise ValidationError("query point must lie in [0, 1]")
    f = scvx_construction(eps_prime)[v]
    var = sigma**2
    return (gaussian_kl(GaussianScalar(f(x), var), GaussianScalar(REFERENCE(x), var))
            + gaussian_kl(GaussianScalar(f.grad(x), var), GaussianScalar(REFERENCE.grad(x), var)))


def scvx_per_query_kl_upper(eps_prime: float, sigma: float) -> float:
    return 2 * eps_prime / sigma**2


def scvx_risk_lower(n: int, sigma: float, eps: float, eps_prime: float) -> float:
    """``eps * H2^{-1}(ln 2 - 2 n eps' / sigma^2)``."""
    return scvx_risk_report(n, sigma, eps, eps_prime).value


def scvx_risk_report(n: int, sigma: float, eps: float, eps_prime: float) -> BoundReport:
    _check_eps_prime(eps_prime)
    if not 0 < eps < eps_prime:
        raise ValidationError("need 0 < eps < eps_prime")
    mi = n * scvx_per_query_kl_upper(eps_prime, sigma)
    rep = optimization_bound(eps, 2, mi)
    rep.intermediates["h2_inverse_argument"] = min(LN2, max(0.0, LN2 - mi))
    rep.provenance.insert(0, "two-function construction with disjoint eps-optimal sets")
    rep.provenance.append("adaptive tensorization with per-query KL ceiling 2 eps'/sigma^2")
    return rep


def scvx_queries_report(spec: ConvexOptSpec, eps_prime: float | None = None) -> BoundReport:
    """Queries needed for optimality gap ``delta``.

    Headline ``sigma^2 ln 2 / (40 delta)`` from ``eps = 10 delta`` with
    ``eps'`` approaching ``eps``; the proof-level threshold at a concrete
    ``eps' > eps`` is reported too.
    """
    value = spec.sigma**2 * LN2 / (40 * spec.delta)
    eps = 10 * spec.delta
    inter = {"pre_ceiling": value, "eps": eps}
    if eps_prime is None:
        eps_prime = eps
    inter["eps_prime"] = eps_prime
    inter["proof_threshold"] = spec.sigma**2 * LN2 / (4 * eps_prime)
    inter["h2_inverse_half_ln2"] = inv_binary_entropy(LN2 / 2)
    n = conservative_ceil(value)
    rep = BoundReport("n_lower", n, "queries", vacuous=n == 0, intermediates=inter,
                      provenance=["two-function construction", "binary Fano bound",
                                  "inverse binary entropy at ln 2 / 2 exceeds 1/10"])
    if eps >= 1 / 8:
        rep.notes.append("eps = 10 delta is not below 1/8; the construction requires smaller delta")
    return rep


def scvx_queries_lower(spec: ConvexOptSpec) -> int:
    return scvx_queries_report(spec).value
