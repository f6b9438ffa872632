"""Exact optimal decoding for finite hypothesis tests."""

from __future__ import annotations

import itertools

import numpy as np
from scipy.special import entr

from ..fano import RecoveryCriterion
from ..measures import ValidationError, as_channel, as_pmf

DECODER_ENUMERATION_CAP = 10**6


def _weighted(prior, channel) -> np.ndarray:
    prior, channel = as_pmf(prior), as_channel(channel)
    if prior.alphabet_size != channel.input_size:
        raise ValidationError("prior length does not match channel input size")
    return prior.mass[:, None] * channel.rows


def map_decoder(prior, channel) -> np.ndarray:
    """MAP estimate for each output; ties go to the lowest index."""
    return np.argmax(_weighted(prior, channel), axis=0)


def bayes_optimal_error(prior, channel) -> float:
    """``1 - sum_y max_v P(v) P(y|v)``: the least error of any decoder."""
    w = _weighted(prior, channel)
    return float(max(0.0, 1.0 - w.max(axis=0).sum()))


def bayes_optimal_approx_error(prior, channel, rc: RecoveryCriterion) -> float:
    """Least ``P[d(V, Vhat) > t]`` over decoders into the ``vhat`` alphabet."""
    w = _weighted(prior, channel)
    if rc.v_size != w.shape[0]:
        raise ValidationError("criterion rows must match the hypothesis count")
    score = rc.within().T.astype(float) @ w  # [vhat, y]
    return float(max(0.0, 1.0 - score.max(axis=0).sum()))


def all_decoders(vhat_size: int, y_size: int):
    """Every deterministic map from outputs to estimates, as index tuples."""
    if vhat_size**y_size > DECODER_ENUMERATION_CAP:
        raise ValidationError("too many decoders to enumerate")
    return itertools.product(range(vhat_size), repeat=y_size)


def decoder_error(prior, channel, decoder, rc: RecoveryCriterion | None = None) -> float:
    """Error probability of a fixed deterministic decoder ``y -> decoder[y]``."""
    w = _weighted(prior, channel)
    dec = np.asarray(decoder, dtype=int)
    if rc is None:
        hit = w[dec, np.arange(w.shape[1])].sum()
    else:
        hit = (w * rc.within()[:, dec]).sum()
    return float(1.0 - hit)


def exhaustive_min_error(prior, channel, rc: RecoveryCriterion | None = None) -> float:
    """Brute-force minimum over all deterministic decoders."""
    w = _weighted(prior, channel)
    vhat = w.shape[0] if rc is None else rc.vhat_size
    return min(decoder_error(prior, channel, d, rc) for d in all_decoders(vhat, w.shape[1]))


def decoder_joint(prior, channel, decoder, vhat_size: int | None = None) -> np.ndarray:
    """Joint table of ``(V, Vhat)`` induced by a deterministic decoder."""
    w = _weighted(prior, channel)
    dec = np.asarray(decoder, dtype=int)
    out = np.zeros((w.shape[0], vhat_size or w.shape[0]))
    for y, vh in enumerate(dec):
        out[:, vh] += w[:, y]
    return out


def conditional_entropy_v_given_vhat(joint_v_vhat: np.ndarray) -> float:
    """``H(V | Vhat) = H(V, Vhat) - H(Vhat)``."""
    j = np.asarray(joint_v_vhat, dtype=float)
    return float(entr(j).sum() - entr(j.sum(axis=0)).sum())
