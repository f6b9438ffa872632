"""Exact Ising enumeration over all ``2^p`` spin configurations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.special import logsumexp

from ..measures import FinitePMF, JointPMF, ValidationError, kl_divergence, mutual_information

MAX_NODES = 12
MAX_ENSEMBLE_NODES = 10
MAX_ENSEMBLE_CELLS = 10**7


@dataclass(frozen=True)
class IsingModel:
    """``P(y) ∝ exp(lam * sum_{(i,j) in edges} y_i y_j)`` over ``y in {-1, 1}^p``."""

    p: int
    edges: tuple
    lam: float

    def __post_init__(self):
        if self.p < 1:
            raise ValidationError("need at least one node")
        if self.lam < 0:
            raise ValidationError("lambda must be nonnegative")
        clean = set()
        for i, j in self.edges:
            if i == j or not (0 <= i < self.p and 0 <= j < self.p):
                raise ValidationError(f"invalid edge ({i}, {j})")
            clean.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", tuple(sorted(clean)))

    def is_forest(self) -> bool:
        parent = list(range(self.p))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, j in self.edges:
            ri, rj = find(i), find(j)
            if ri == rj:
                return False
            parent[ri] = rj
        return True


class IsingEnumeration(NamedTuple):
    pmf: FinitePMF
    log_z: float
    correlations: np.ndarray


def spin_states(p: int) -> np.ndarray:
    """All ``2^p`` configurations as rows of ``+-1``; row ``s`` is the binary expansion of ``s``."""
    bits = (np.arange(2**p)[:, None] >> np.arange(p)[::-1]) & 1
    return 2 * bits - 1


def _log_weights(model: IsingModel, states: np.ndarray) -> np.ndarray:
    if not model.edges:
        return np.zeros(states.shape[0])
    e = np.array(model.edges)
    return model.lam * (states[:, e[:, 0]] * states[:, e[:, 1]]).sum(axis=1)


def ising_enumerate(model: IsingModel) -> IsingEnumeration:
    if model.p > MAX_NODES:
        raise ValidationError(f"p={model.p} exceeds the enumeration cap {MAX_NODES}")
    states = spin_states(model.p)
    logw = _log_weights(model, states)
    log_z = float(logsumexp(logw))
    mass = np.exp(logw - log_z)
    corr = (states * mass[:, None]).T @ states
    return IsingEnumeration(FinitePMF(mass), log_z, corr)


def ising_ensemble_mi(models: Sequence[IsingModel]) -> float:
    """Exact ``I(G; Y)`` for one sample with ``G`` uniform over ``models``."""
    if not models:
        raise ValidationError("empty ensemble")
    p = models[0].p
    if any(m.p != p for m in models):
        raise ValidationError("ensemble members must share p")
    if p > MAX_ENSEMBLE_NODES or len(models) * 2**p > MAX_ENSEMBLE_CELLS:
        raise ValidationError("ensemble exceeds the enumeration caps")
    rows = np.array([ising_enumerate(m).pmf.mass for m in models])
    return mutual_information(JointPMF(rows / len(models)))


def single_edge_ensemble(p: int, lam: float) -> list[IsingModel]:
    return [IsingModel(p, ((i, j),), lam) for i, j in itertools.combinations(range(p), 2)]


def enumerate_matchings(p: int) -> list[tuple]:
    """All graphs of ``p // 2`` disjoint edges on nodes ``0 .. 2(p//2) - 1``."""
    nodes = list(range(2 * (p // 2)))

    def rec(rest):
        if not rest:
            yield ()
            return
        a = rest[0]
        for idx in range(1, len(rest)):
            b = rest[idx]
            for tail in rec(rest[1:idx] + rest[idx + 1:]):
                yield ((a, b),) + tail

    return list(rec(nodes))


def kl_to_empty(model: IsingModel) -> float:
    """Exact ``D(P_G || P_empty)`` by enumeration."""
    empty = IsingModel(model.p, (), model.lam)
    return kl_divergence(ising_enumerate(model).pmf, ising_enumerate(empty).pmf)
