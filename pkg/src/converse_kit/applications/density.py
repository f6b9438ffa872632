"""Density estimation on [0, 1] under a density floor, squared L2 loss."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import rel_entr

from ..measures import LN2, ValidationError
from ..mi_bounds import InvariantViolation
from ..reductions import LossModel, global_bound
from ..report import BoundReport, conservative_ceil

BALANCE_TOL = 1e-9


@dataclass(frozen=True)
class DensitySpec:
    """``c_lo / eps <= ln M(eps) <= c_hi / eps`` for the l2 packing numbers."""

    eta: float
    c_lo: float
    c_hi: float
    n: int | None = None
    delta: float | None = None

    def __post_init__(self):
        if not 0 < self.eta < 1:
            raise ValidationError("eta must lie in (0, 1)")
        if not 0 < self.c_lo <= self.c_hi:
            raise ValidationError("need 0 < c_lo <= c_hi")
        if self.n is not None and self.n < 1:
            raise ValidationError("n must be positive")
        if self.delta is not None and not self.delta > 0:
            raise ValidationError("delta must be positive")


def density_radii(spec: DensitySpec, n: int) -> dict:
    """Covering radius balancing the two information terms, then packing radius for a half fraction."""
    c_prime = spec.c_hi / math.sqrt(spec.eta)
    eps_c = (c_prime / n) ** (2 / 3)
    inv_eps_p = (2 / spec.c_lo) * (2 * c_prime ** (2 / 3) * n ** (1 / 3) + LN2)
    return {"c_prime": c_prime, "eps_c": eps_c, "eps_p": 1 / inv_eps_p}


def density_minimax_risk_lower(spec: DensitySpec, n: int | None = None) -> BoundReport:
    n = spec.n if n is None else n
    if n is None or n < 1:
        raise ValidationError("need a positive sample size n")
    r = density_radii(spec, n)
    eps_c, eps_p = r["eps_c"], r["eps_p"]
    cover_term = spec.c_hi * (spec.eta * eps_c) ** -0.5
    data_term = n * eps_c
    if abs(cover_term - data_term) > BALANCE_TOL * max(1.0, data_term):
        raise InvariantViolation(f"covering and data terms do not balance: {cover_term!r} vs {data_term!r}")
    rep = global_bound(LossModel.squared(), eps_p, eps_c, n,
                       log_pack=spec.c_lo / eps_p, log_cover_kl=cover_term)
    frac = rep.intermediates["fraction"]
    if abs(frac - 0.5) > BALANCE_TOL:
        raise InvariantViolation(f"fraction {frac!r} is not 1/2")
    rep.units = "squared L2"
    rep.intermediates.update(r)
    rep.intermediates.update({"cover_term": cover_term, "data_term": data_term,
                              "scaled_by_n_2_3": rep.value * n ** (2 / 3)})
    rep.provenance.insert(0, "KL covering radius from chi-square and the density floor")
    rep.notes.append("packing-entropy lower constant c_lo used in the denominator")
    return rep


def density_samples_lower(spec: DensitySpec) -> BoundReport:
    """Smallest ``n`` at which the bound ``eps_p^2 / 8`` can reach ``delta``."""
    if spec.delta is None:
        raise ValidationError("need delta")
    c_prime = spec.c_hi / math.sqrt(spec.eta)
    root = (spec.c_lo / (2 * math.sqrt(8 * spec.delta)) - LN2) / (2 * c_prime ** (2 / 3))
    need = max(0.0, root) ** 3
    leading = (spec.c_lo / (4 * math.sqrt(8) * c_prime ** (2 / 3))) ** 3
    n = conservative_ceil(need)
    return BoundReport(
        "n_lower", n, "samples", vacuous=n == 0,
        intermediates={"pre_ceiling": need, "shape_constant": leading, "delta_exponent": -1.5},
        provenance=["inversion of the balanced global-approach bound"],
    )


def density_divergence_chain(f1, f2, eta: float, widths=None) -> tuple[float, float, float]:
    """Exact KL, chi-square and squared L2 between piecewise-constant densities.

    ``f1`` and ``f2`` are heights on a shared grid with bin ``widths``
    (equal bins on [0, 1] by default).  Checks ``KL <= chi2 <= L2^2 / eta``.
    """
    f1 = np.asarray(f1, dtype=float)
    f2 = np.asarray(f2, dtype=float)
    if f1.shape != f2.shape or f1.ndim != 1:
        raise ValidationError("densities must be 1-D and share a grid")
    w = np.full(f1.size, 1.0 / f1.size) if widths is None else np.asarray(widths, dtype=float)
    if abs(w.sum() - 1) > 1e-12:
        raise ValidationError("bin widths must cover [0, 1]")
    for f in (f1, f2):
        if np.any(f < 0) or abs(f @ w - 1) > 1e-12:
            raise ValidationError("heights must be nonnegative and integrate to 1")
    if np.any(f2 < eta):
        raise ValidationError(f"second density drops below the floor eta={eta}")
    kl = float(np.sum(w * rel_entr(f1, f2)))
    chi2 = float(np.sum(w * (f1 - f2) ** 2 / f2))
    l2sq = float(np.sum(w * (f1 - f2) ** 2))
    if kl > chi2 + 1e-12 or chi2 > l2sq / eta + 1e-12:
        raise InvariantViolation(f"divergence chain broken: kl={kl}, chi2={chi2}, l2sq/eta={l2sq / eta}")
    return kl, chi2, l2sq
