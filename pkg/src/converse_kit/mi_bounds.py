"""Upper bounds on mutual information, with exact checks where enumerable."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import rel_entr

from .measures import (
    ChannelMatrix,
    FinitePMF,
    JointPMF,
    ValidationError,
    as_channel,
    as_pmf,
    kl_divergence,
    mutual_information,
)

MAX_JOINT_CELLS = 10**7
MI_SLACK = 1e-12


class InvariantViolation(AssertionError):
    """An inequality that must hold on valid inputs failed numerically."""


class CoveringViolation(ValidationError):
    def __init__(self, v: int, divergence: float, eps: float):
        self.v = v
        self.divergence = divergence
        super().__init__(
            f"hypothesis v={v} has minimal divergence {divergence!r} to the centers, above eps={eps!r}"
        )


@dataclass(frozen=True)
class HypothesisFamily:
    prior: FinitePMF
    channel: ChannelMatrix

    def __post_init__(self):
        object.__setattr__(self, "prior", as_pmf(self.prior))
        object.__setattr__(self, "channel", as_channel(self.channel))
        if self.prior.alphabet_size != self.channel.input_size:
            raise ValidationError("prior length does not match channel input size")

    def joint(self) -> JointPMF:
        return JointPMF.from_channel(self.prior, self.channel)

    def exact_mi(self) -> float:
        return mutual_information(self.joint())

    def output_marginal(self) -> FinitePMF:
        return FinitePMF(self.prior.mass @ self.channel.rows)


@dataclass(frozen=True)
class ProductModel:
    """Samples ``Y_1..Y_n`` conditionally independent given ``V``."""

    channels: tuple

    def __post_init__(self):
        chans = tuple(as_channel(c) for c in self.channels)
        if not chans:
            raise ValidationError("need at least one sample channel")
        if len({c.input_size for c in chans}) != 1:
            raise ValidationError("sample channels must share the input alphabet")
        object.__setattr__(self, "channels", chans)

    @property
    def n(self) -> int:
        return len(self.channels)

    @classmethod
    def iid(cls, channel, n: int) -> "ProductModel":
        return cls((channel,) * n)


@dataclass(frozen=True)
class AdaptivePolicyTree:
    """Adaptive sampling with a deterministic policy.

    ``policy(x_hist, y_hist)`` returns the next input index; ``channel`` is
    indexed ``[v, x, y]``.
    """

    horizon: int
    policy: Callable[[tuple, tuple], int]
    channel: np.ndarray

    def __post_init__(self):
        ch = np.asarray(self.channel, dtype=float)
        if ch.ndim != 3:
            raise ValidationError("channel must be indexed [v, x, y]")
        for v in range(ch.shape[0]):
            ChannelMatrix(ch[v])  # validates every (v, x) row
        if self.horizon < 1:
            raise ValidationError("horizon must be at least 1")
        object.__setattr__(self, "channel", ch)

    @classmethod
    def non_adaptive(cls, inputs: Sequence[int], channel) -> "AdaptivePolicyTree":
        inputs = tuple(int(x) for x in inputs)
        return cls(len(inputs), lambda xh, yh: inputs[len(xh)], channel)


@dataclass(frozen=True)
class TensorizationResult:
    bound: float
    exact: float | None
    verified: bool


# ---------------------------------------------------------------------------
# KL-based bounds


def _divergences_to(rows: np.ndarray, q: np.ndarray) -> np.ndarray:
    return np.array([rel_entr(r, q).sum() for r in rows])


def mi_upper_aux(fam: HypothesisFamily, q) -> tuple[float, float]:
    """Average and maximum of ``D(P_{Y|V=v} || q)`` over ``v``."""
    q = as_pmf(q)
    if q.alphabet_size != fam.channel.output_size:
        raise ValidationError("auxiliary distribution has the wrong alphabet size")
    d = _divergences_to(fam.channel.rows, q.mass)
    support = fam.prior.mass > 0
    avg = float(np.sum(fam.prior.mass[support] * d[support]))
    return avg, float(d[support].max())


def mi_upper_aux_conditional(prior, channel, input_pmf, aux_per_x) -> float:
    """Conditional form: ``sum_x P(x) sum_v P(v) D(P_{Y|V=v,X=x} || Q_x)``.

    ``channel`` is indexed ``[v, x, y]`` and ``aux_per_x[x]`` is ``Q_x``;
    ``X`` is independent of ``V``.
    """
    prior = as_pmf(prior)
    px = as_pmf(input_pmf)
    ch = np.asarray(channel, dtype=float)
    total = 0.0
    for x in np.flatnonzero(px.mass > 0):
        fam = HypothesisFamily(prior, ch[:, x, :])
        total += px.mass[x] * mi_upper_aux(fam, aux_per_x[x])[0]
    return total


def pairwise_divergences(fam: HypothesisFamily) -> np.ndarray:
    rows = fam.channel.rows
    return np.array([[kl_divergence(a, b) for b in rows] for a in rows])


def mi_upper_pairwise(fam: HypothesisFamily) -> tuple[float, float]:
    """Prior-weighted average and maximum of pairwise ``D(P_v || P_v')``."""
    d = pairwise_divergences(fam)
    w = fam.prior.mass
    support = w > 0
    sub = d[np.ix_(support, support)]
    wv = w[support]
    # 0 * inf never arises because only supported pairs are kept
    avg = float(wv @ sub @ wv)
    return avg, float(sub.max())


def mi_upper_covering(fam: HypothesisFamily, centers: Sequence, eps: float) -> float:
    """``ln N + eps`` once every hypothesis is within ``eps`` of some center."""
    if not centers:
        raise ValidationError("need at least one center")
    cs = [as_pmf(c).mass for c in centers]
    worst_v, worst = -1, -math.inf
    for v in np.flatnonzero(fam.prior.mass > 0):
        best = min(float(rel_entr(fam.channel.rows[v], c).sum()) for c in cs)
        if best > worst:
            worst_v, worst = int(v), best
    if worst > eps + MI_SLACK:
        raise CoveringViolation(worst_v, worst, eps)
    return math.log(len(cs)) + eps


# ---------------------------------------------------------------------------
# tensorization


def _product_joint(pm: ProductModel, prior: FinitePMF) -> np.ndarray:
    """Table over ``(v, y_1 ... y_n)`` flattened to ``v x prod|Y_i|``."""
    table = prior.mass[:, None]
    for ch in pm.channels:
        table = (table[:, :, None] * ch.rows[:, None, :]).reshape(table.shape[0], -1)
    return table


def tensorization_upper(pm: ProductModel, prior) -> TensorizationResult:
    """``sum_i I(V; Y_i)`` with the exact ``I(V; Y^n)`` when enumerable."""
    prior = as_pmf(prior)
    if prior.alphabet_size != pm.channels[0].input_size:
        raise ValidationError("prior length does not match the sample channels")
    bound = sum(mutual_information(JointPMF.from_channel(prior, ch)) for ch in pm.channels)
    cells = prior.alphabet_size * math.prod(ch.output_size for ch in pm.channels)
    if cells > MAX_JOINT_CELLS:
        return TensorizationResult(bound, None, False)
    exact = mutual_information(JointPMF(_product_joint(pm, prior)))
    if exact > bound + MI_SLACK:
        raise InvariantViolation(f"I(V;Y^n)={exact!r} exceeds sum of per-sample MI {bound!r}")
    return TensorizationResult(bound, exact, True)


def _traverse(tree: AdaptivePolicyTree, prior: FinitePMF):
    """Exact joint over (v, history) plus per-step (v, x_i, y_i) tables."""
    nv, nx, ny = tree.channel.shape
    steps = np.zeros((tree.horizon, nv, nx, ny))
    leaves: dict[tuple, np.ndarray] = {}
    # frontier of histories with their per-v path probability
    frontier = [((), (), prior.mass.copy())]
    for i in range(tree.horizon):
        nxt = []
        for xh, yh, w in frontier:
            x = int(tree.policy(xh, yh))
            if not 0 <= x < nx:
                raise ValidationError(f"policy chose input {x} outside [0, {nx})")
            for y in range(ny):
                wy = w * tree.channel[:, x, y]
                steps[i, :, x, y] += wy
                nxt.append((xh + (x,), yh + (y,), wy))
        frontier = nxt
    for xh, yh, w in frontier:
        leaves[(xh, yh)] = w
    return leaves, steps


def _conditional_mi(table_vxy: np.ndarray) -> float:
    """``I(V; Y | X)`` from a table indexed ``[v, x, y]``."""
    total = 0.0
    px = table_vxy.sum(axis=(0, 2))
    for x in np.flatnonzero(px > 0):
        block = table_vxy[:, x, :]
        pv = block.sum(axis=1, keepdims=True)
        py = block.sum(axis=0, keepdims=True)
        total += float(rel_entr(block, pv * py / px[x]).sum())
    return max(total, 0.0)


def adaptive_tensorization_upper(tree: AdaptivePolicyTree, prior) -> TensorizationResult:
    """``sum_i I(V; Y_i | X_i)``, checked against the exact ``I(V; X^n, Y^n)``.

    Raises ``ValidationError`` when the history tree exceeds the cell cap and
    ``InvariantViolation`` if the inequality fails on the enumerated joint.
    """
    prior = as_pmf(prior)
    nv, _, ny = tree.channel.shape
    if prior.alphabet_size != nv:
        raise ValidationError("prior length does not match the channel")
    cells = nv * ny**tree.horizon
    if cells > MAX_JOINT_CELLS:
        raise ValidationError(f"history tree needs {cells} cells, above the cap {MAX_JOINT_CELLS}")
    leaves, steps = _traverse(tree, prior)
    bound = sum(_conditional_mi(steps[i]) for i in range(tree.horizon))
    joint = np.column_stack(list(leaves.values()))
    exact = mutual_information(JointPMF(joint))
    if exact > bound + MI_SLACK:
        raise InvariantViolation(f"I(V;X^n,Y^n)={exact!r} exceeds {bound!r}")
    return TensorizationResult(bound, exact, True)


def function_reduction_upper(prior, inputs: Sequence, psi: Callable, u_channel) -> tuple[float, float]:
    """Compare ``sum_i I(U_i; Y_i)`` with ``sum_i I(V; Y_i | X_i)`` for fixed inputs.

    ``Y_i`` depends on ``(V, X_i)`` only through ``U_i = psi(v, x_i)``, and
    ``u_channel`` is the channel from ``U`` to ``Y``.  Returns
    ``(sum_u, sum_v)``; the first dominates the second.
    """
    prior = as_pmf(prior)
    uch = as_channel(u_channel)
    sum_u = sum_v = 0.0
    for x in inputs:
        u_of_v = np.array([psi(v, x) for v in range(prior.alphabet_size)], dtype=int)
        pu = np.bincount(u_of_v, weights=prior.mass, minlength=uch.input_size)
        sum_u += mutual_information(JointPMF(pu[:, None] * uch.rows))
        sum_v += mutual_information(JointPMF(prior.mass[:, None] * uch.rows[u_of_v]))
    return sum_u, sum_v


def dpi_check(prior, ch1, ch2) -> tuple[float, float, bool]:
    """Data processing along ``V -> Y -> Vhat``: ``(I(V;Vhat), I(V;Y), holds)``."""
    prior = as_pmf(prior)
    c1, c2 = as_channel(ch1), as_channel(ch2)
    if c1.output_size != c2.input_size:
        raise ValidationError("second channel input must match first channel output")
    rhs = mutual_information(JointPMF.from_channel(prior, c1))
    lhs = mutual_information(JointPMF(prior.mass[:, None] * (c1.rows @ c2.rows)))
    return lhs, rhs, lhs <= rhs + MI_SLACK
