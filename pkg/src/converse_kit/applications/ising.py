"""Forest-structured Ising model selection.

Two restricted ensembles drive every bound: all spanning trees (many graphs,
at most ``ln 2`` nats per node per sample) and weak-edge ensembles whose
members are hard to tell from the empty graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..measures import LN2, ValidationError, binary_entropy
from ..report import BoundReport, conservative_ceil


@dataclass(frozen=True)
class IsingSpec:
    p: int
    lam: float
    delta: float = 0.0
    alpha: float | None = None

    def __post_init__(self):
        if self.p < 3:
            raise ValidationError("need p >= 3 nodes")
        if not self.lam >= 0:
            raise ValidationError("edge strength lambda must be nonnegative")
        if not 0 <= self.delta <= 1:
            raise ValidationError("delta must lie in [0, 1]")
        if self.alpha is not None and not 0 < self.alpha < 0.5:
            raise ValidationError("alpha must lie in (0, 1/2)")


def ising_single_edge_stats(lam: float) -> tuple[float, float]:
    """Edge correlation ``tanh lambda`` and the KL ceiling ``lambda tanh lambda``."""
    if lam < 0:
        raise ValidationError("lambda must be nonnegative")
    t = math.tanh(lam)
    return t, lam * t


def single_edge_kl_exact(lam: float) -> float:
    """``D(P_edge || P_empty) = lambda tanh lambda - ln cosh lambda``."""
    return lam * math.tanh(lam) - math.log(math.cosh(lam))


def log_num_trees(p: int) -> float:
    """``ln p^(p-2)`` (Cayley)."""
    return (p - 2) * math.log(p)


def num_perfect_matchings(p: int) -> int:
    """Graphs made of ``floor(p/2)`` disjoint edges on a fixed set of ``2 floor(p/2)`` nodes."""
    m = p // 2
    return math.factorial(2 * m) // (2**m * math.factorial(m))


def _ratio(num: float, den: float) -> float:
    if num <= 0:
        return 0.0
    return math.inf if den == 0 else num / den


def _fano_numerator(delta: float, log_card: float) -> float:
    return max(0.0, (1 - delta) * log_card - LN2)


def _ceil_report(name, value, units, inter, prov, asymptotic=False) -> BoundReport:
    n = conservative_ceil(value)
    return BoundReport(name, n, units, vacuous=n == 0, asymptotic=asymptotic,
                       intermediates=inter, provenance=prov)


def ising_exact_report(spec: IsingSpec) -> BoundReport:
    p, d = spec.p, spec.delta
    _, kl_edge = ising_single_edge_stats(spec.lam)
    n1 = _ratio(_fano_numerator(d, log_num_trees(p)), p * LN2)
    n2 = _ratio(_fano_numerator(d, math.log(math.comb(p, 2))), kl_edge)
    return _ceil_report(
        "n_lower", max(n1, n2), "samples",
        {"n_trees_branch": n1, "n_single_edge_branch": n2, "log_num_trees": log_num_trees(p),
         "log_num_single_edge": math.log(math.comb(p, 2)), "mi_trees": p * LN2,
         "mi_single_edge": kl_edge},
        ["Fano inequality on the tree ensemble", "Fano inequality on the single-edge ensemble",
         "auxiliary-distribution KL bound against the empty graph"],
    )


def ising_exact_samples_lower(spec: IsingSpec) -> float:
    return ising_exact_report(spec).value


def ising_nmax_trees(p: int, alpha: float) -> int:
    jmax = math.floor(alpha * p)
    other = math.comb(p, 2) - p + 1
    return sum(math.comb(p - 1, j) * math.comb(other, j) for j in range(jmax + 1))


def ising_nmax_matchings(p: int, alpha: float) -> int:
    m = p // 2
    jmax = math.floor(alpha * p)
    other = math.comb(p, 2) - m
    return sum(math.comb(m, j) * math.comb(other, j) for j in range(jmax + 1))


def ising_nmax_trees_log_upper(p: int, alpha: float) -> float:
    """Count-free upper bound on ``ln ising_nmax_trees``."""
    ap = alpha * p
    return math.log(ap + 1) + p * LN2 + ap * math.log(p * p * math.e / ap)


def ising_approx_report(spec: IsingSpec) -> BoundReport:
    if spec.alpha is None:
        raise ValidationError("approximate recovery needs alpha")
    p, d, a = spec.p, spec.delta, spec.alpha
    m = p // 2
    _, kl_edge = ising_single_edge_stats(spec.lam)
    n1max = ising_nmax_trees(p, a)
    n2max = ising_nmax_matchings(p, a)
    log_g1 = log_num_trees(p)
    log_g2 = math.log(num_perfect_matchings(p))
    n1 = _ratio(_fano_numerator(d, log_g1 - math.log(n1max)), p * LN2)
    n2 = _ratio(_fano_numerator(d, log_g2 - math.log(n2max)), m * kl_edge)
    return _ceil_report(
        "n_lower", max(n1, n2), "samples",
        {"n_trees_branch": n1, "n_matching_branch": n2, "n_max_trees": n1max,
         "n_max_matchings": n2max, "log_num_trees": log_g1, "log_num_matchings": log_g2,
         "log_num_matchings_as_printed": math.lgamma(p + 1) - m * LN2,
         "mi_trees": p * LN2, "mi_matchings": m * kl_edge},
        ["approximate-recovery Fano inequality on the tree ensemble",
         "approximate-recovery Fano inequality on the isolated-edge ensemble",
         "exact edit-distance neighborhood counts"],
    )


def ising_approx_samples_lower(spec: IsingSpec) -> float:
    return ising_approx_report(spec).value


def ising_adaptive_report(spec: IsingSpec) -> BoundReport:
    """Observed-node budget for adaptive sampling.

    Tree branch: at most ``ln 2`` nats per observed node.  Matching branch:
    observed nodes carry at most ``n/2`` isolated edges, so at most
    ``lambda tanh lambda / 2`` nats per node.
    """
    p, d = spec.p, spec.delta
    _, kl_edge = ising_single_edge_stats(spec.lam)
    log_g2 = math.log(num_perfect_matchings(p))
    n1 = _ratio(_fano_numerator(d, log_num_trees(p)), LN2)
    n2 = _ratio(_fano_numerator(d, log_g2), 0.5 * kl_edge)
    return _ceil_report(
        "n_node_lower", max(n1, n2), "observed nodes",
        {"n_trees_branch": n1, "n_matching_branch": n2, "log_num_trees": log_num_trees(p),
         "log_num_matchings": log_g2, "log_num_matchings_as_printed": math.lgamma(p + 1) - (p // 2) * LN2},
        ["Fano inequality with adaptive tensorization",
         "per-node information ceilings for both ensembles"],
    )


def ising_adaptive_nodes_lower(spec: IsingSpec) -> float:
    return ising_adaptive_report(spec).value


def erdos_renyi_report(p: int, q: float, delta: float) -> BoundReport:
    if not 0 < q < 1:
        raise ValidationError("edge probability q must lie in (0, 1)")
    if not 0 <= delta <= 1:
        raise ValidationError("delta must lie in [0, 1]")
    value = p * binary_entropy(q) / (2 * LN2) * (1 - delta)
    rep = _ceil_report("n_lower", value, "samples", {"pre_ceiling": value, "h2_q": binary_entropy(q)},
                       ["conditional Fano inequality over the typical set of random graphs"],
                       asymptotic=True)
    rep.notes.append("asymptotic display form, o(1) dropped")
    return rep


def erdos_renyi_samples_lower(p: int, q: float, delta: float) -> int:
    return erdos_renyi_report(p, q, delta).value
