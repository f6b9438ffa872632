"""Exhaustive subset enumeration for packing and covering numbers."""

from __future__ import annotations

import numpy as np

from ..measures import ValidationError
from ..reductions import MetricPointSet

EXHAUSTIVE_CAP = 16


def _subset_masks(n: int) -> np.ndarray:
    if n > EXHAUSTIVE_CAP:
        raise ValidationError(f"{n} points exceed the exhaustive cap {EXHAUSTIVE_CAP}")
    return (np.arange(2**n)[:, None] >> np.arange(n)) & 1


def exhaustive_packing_number(ms: MetricPointSet, eps: float) -> int:
    """Largest subset whose pairwise distances are all at least ``eps``."""
    n = ms.size
    masks = _subset_masks(n).astype(bool)
    i, j = np.nonzero(np.triu(ms.dist < eps, k=1))
    ok = ~np.any(masks[:, i] & masks[:, j], axis=1)
    return int(masks[ok].sum(axis=1).max())


def exhaustive_covering_number(ms: MetricPointSet, eps: float) -> int:
    """Smallest subset of centers leaving no point farther than ``eps``."""
    masks = _subset_masks(ms.size)
    covered = (masks @ (ms.dist <= eps).astype(int)) > 0
    ok = covered.all(axis=1)
    return int(masks[ok].sum(axis=1).min())
