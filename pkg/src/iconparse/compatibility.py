"""Compatibility scoring between icons.

Three layers: single feature against single feature, a candidate's
intrinsic feature set against one case slot's selectional set, and the
distance-faded value of an actual role/filler allotment.  All functions
are pure and safe to call from any thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lexicon import Feature, FeatureSet


@dataclass(frozen=True)
class FadingConfig:
    """Exponential distance fade ``gamma ** distance``.

    Any gamma in (0, 1) gives a weight that starts at 1 for distance 0 and
    decreases strictly toward 0, so adjacent icons are favoured as fillers
    over far-away ones.
    """

    gamma: float = 0.5

    def __post_init__(self):
        if not (isinstance(self.gamma, float) or isinstance(self.gamma, int)):
            raise ValueError("gamma must be a number")
        if math.isnan(self.gamma) or not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma must lie strictly between 0 and 1, got {self.gamma!r}")


def feature_compat(f1: Feature, f2: Feature) -> float:
    """Compatibility of two attribute/value features.

    Distinct attributes never interact (0).  On a shared attribute,
    integer values either agree (+1) or clash (-1); if at least one side
    is real-valued the result is the product of the magnitudes.
    """
    if f1.attribute != f2.attribute:
        return 0.0
    if f1.value.kind == "int" and f2.value.kind == "int":
        return 1.0 if f1.value.magnitude == f2.value.magnitude else -1.0
    return f1.value.magnitude * f2.value.magnitude


def structure_compat(intrinsic: FeatureSet, selectional: FeatureSet) -> float:
    """How well a candidate's intrinsic features fill one case slot.

    Sum of all pairwise feature compatibilities, divided by the size of
    the selectional (filtering) set.  The measure is deliberately
    asymmetric: it is normalized by what the predicate expects, not by
    what the candidate offers.
    """
    if len(selectional) == 0:
        raise ValueError("selectional set must not be empty")
    total = 0.0
    for expected in selectional:
        for offered in intrinsic:
            total += feature_compat(offered, expected)
    return total / len(selectional)


def fading(distance: int, cfg: FadingConfig = FadingConfig()) -> float:
    """Weight of a role/filler pair separated by ``distance`` positions."""
    if distance < 0:
        raise ValueError("distance must be non-negative")
    return cfg.gamma ** distance


def weighted_value(
    predicate_pos: int,
    case_type: str,
    candidate_pos: int,
    raw: float,
    cfg: FadingConfig = FadingConfig(),
) -> float:
    """Distance-faded value of one candidate filling one case of a predicate.

    ``case_type`` identifies the slot of the allotment; it does not enter
    the arithmetic.  The two positions must differ: an icon cannot fill
    one of its own case slots.
    """
    if predicate_pos == candidate_pos:
        raise ValueError("an icon cannot fill one of its own case slots")
    return fading(abs(predicate_pos - candidate_pos), cfg) * raw
