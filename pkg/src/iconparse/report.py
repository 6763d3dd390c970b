"""Serializable parse reports shared by the CLI and the HTTP service.

A report is a pure function of (lexicon, sequence, config): it echoes the
sequence, lists the ranked interpretations with a full per-slot score
decomposition (raw compatibility, distance, fading weight, faded value),
and carries the operation counters and wall time of the parse.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .chart import IconInstance, Interpretation
from .compatibility import FadingConfig, fading, structure_compat
from .counters import OpCounters
from .lexicon import Lexicon


def format_score(x: float) -> str:
    """Stable textual form used by every front end: rounded to 9 decimals,
    negative zero normalized away."""
    return str(round(x, 9) + 0.0)


def interpretation_payload(
    lexicon: Lexicon,
    instances: Sequence[IconInstance],
    interpretations: Sequence[Interpretation],
    fading_cfg: FadingConfig,
) -> list[dict]:
    """Plain-dict view of ranked interpretations.  The per-slot raw scores
    are recomputed directly from the lexicon here, so the decomposition is
    engine-independent and never touches parser counters."""
    by_id = {inst.instance_id: inst for inst in instances}
    out = []
    for rank, interp in enumerate(interpretations, start=1):
        assignments = []
        for pid, assignment in interp.choices:
            pred = by_id[pid]
            entry = lexicon.lookup(pred.lexicon_id)
            fills = []
            for case, cand_id in assignment.fills:
                cand = by_id[cand_id]
                slot = entry.case_slot(case)
                raw = structure_compat(lexicon.lookup(cand.lexicon_id).intrinsic, slot.selectional)
                distance = abs(pred.position - cand.position)
                fade = fading(distance, fading_cfg)
                fills.append(
                    {
                        "case": case,
                        "candidate_instance": cand_id,
                        "candidate": cand.lexicon_id,
                        "candidate_position": cand.position,
                        "raw": raw,
                        "distance": distance,
                        "fading": fade,
                        "value": fade * raw,
                    }
                )
            assignments.append(
                {
                    "predicate_instance": pid,
                    "predicate": pred.lexicon_id,
                    "position": pred.position,
                    "score": assignment.score,
                    "fills": fills,
                }
            )
        out.append({"rank": rank, "score": interp.score, "assignments": assignments})
    return out


@dataclass
class ParseReport:
    sequence: list[dict]
    interpretations: list[dict]
    counters: dict
    wall_ms: float

    def to_dict(self) -> dict:
        return {
            "sequence": self.sequence,
            "interpretations": self.interpretations,
            "counters": self.counters,
            "wall_ms": self.wall_ms,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ParseReport":
        return cls(doc["sequence"], doc["interpretations"], doc["counters"], doc["wall_ms"])

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "ParseReport":
        return cls.from_dict(json.loads(text))


def build_report(
    lexicon: Lexicon,
    instances: Sequence[IconInstance],
    interpretations: Sequence[Interpretation],
    counters: OpCounters,
    fading_cfg: FadingConfig,
    wall_ms: float,
) -> ParseReport:
    sequence = [
        {"position": inst.position, "instance_id": inst.instance_id, "lexicon_id": inst.lexicon_id}
        for inst in instances
    ]
    return ParseReport(
        sequence,
        interpretation_payload(lexicon, instances, interpretations, fading_cfg),
        counters.as_dict(),
        wall_ms,
    )


def compact_interpretation(interp: dict) -> str:
    """One-line rendering, e.g. ``drink(agent=cat, object=milk) score=1.0``."""
    parts = []
    for assignment in interp["assignments"]:
        filled = ", ".join(f"{f['case']}={f['candidate']}" for f in assignment["fills"])
        parts.append(f"{assignment['predicate']}({filled})")
    body = "; ".join(parts) if parts else "(empty)"
    return f"{body} score={format_score(interp['score'])}"
