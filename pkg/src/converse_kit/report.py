"""Result container shared by every bound calculator."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .measures import LN2

NATS = "nats"


@dataclass
class BoundReport:
    """A computed lower bound plus the quantities it was assembled from.

    ``value`` is a probability, a loss, or a sample count depending on
    ``units``.  ``vacuous`` is set whenever the bound clamped to zero.
    """

    name: str
    value: float
    units: str
    vacuous: bool = False
    asymptotic: bool = False
    intermediates: dict[str, Any] = field(default_factory=dict)
    provenance: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not (self.value >= 0 or math.isnan(self.value)):
            raise ValueError(f"bound value must be nonnegative, got {self.value!r}")

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "units": self.units,
            "vacuous": self.vacuous,
            "asymptotic": self.asymptotic,
            "intermediates": dict(self.intermediates),
            "provenance": list(self.provenance),
            "notes": list(self.notes),
        }


def nats_to_bits(x: float) -> float:
    return x / LN2


def conservative_ceil(x: float) -> float:
    """Ceiling that ignores floating-point excess of a few ulps.

    Sample-count bounds are ``ceil`` of a ratio; a ratio that is an integer
    in exact arithmetic can land one ulp above it, which would inflate a
    lower bound by one.  Infinity passes through.
    """
    if math.isinf(x) or math.isnan(x):
        return x
    if x <= 0:
        return 0
    return int(math.ceil(x * (1.0 - 1e-12)))
