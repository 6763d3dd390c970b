"""Operation counters used to validate the complexity claims."""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace


@dataclass
class OpCounters:
    """Counts of the elementary operations performed by one parse.

    structure_compat_evals
        Role/filler scorings at the feature-structure level.
    assignment_scorings
        Assignments whose value was computed, or recomputed after an edit.
    elementary_sums
        Binary additions spent combining assignment scores into
        interpretation scores.
    interpretations_scored
        Interpretations whose total score was computed.

    Counters reset at the start of every parse, append or removal and only
    grow while that operation runs.
    """

    structure_compat_evals: int = 0
    assignment_scorings: int = 0
    elementary_sums: int = 0
    interpretations_scored: int = 0

    def reset(self) -> None:
        self.structure_compat_evals = 0
        self.assignment_scorings = 0
        self.elementary_sums = 0
        self.interpretations_scored = 0

    def as_dict(self) -> dict[str, int]:
        return asdict(self)

    def snapshot(self) -> "OpCounters":
        return replace(self)
