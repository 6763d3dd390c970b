"""Chart-based semantic parser for icon sequences.

A parse fills three memo tables: raw role/filler compatibilities
(predicate, case, candidate -> score), scored assignments per predicate,
and ranked whole-sequence interpretations.  The tables live in a
``ChartParser`` session so that appending icons recomputes only the pairs
and assignments that involve a new icon, and removing icons only purges
and re-scores what the removal touched.  The interpretations table is
always rebuilt in full.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .compatibility import FadingConfig, fading, structure_compat
from .counters import OpCounters
from .errors import ParseStateError, SequenceTooLongError, UnknownInstanceError
from .lexicon import LexEntry, Lexicon


@dataclass(frozen=True)
class IconInstance:
    """One occupied slot of the input sequence.  Positions are 1-based and
    contiguous; instance ids are stable across incremental edits."""

    instance_id: int
    lexicon_id: str
    position: int


@dataclass(frozen=True)
class ParserConfig:
    """Pruning and fading knobs.

    ``pair_threshold`` may be ``-inf``, and ``top_k_assignments`` /
    ``top_m_interpretations`` may be ``None``, to disable pruning entirely
    (as used when validating against the recursive baseline).  The hard
    sequence-length cap keeps the exponential interpretation product in
    the range where an interactive parse stays responsive.
    """

    fading: FadingConfig = FadingConfig()
    pair_threshold: float = 0.1
    top_k_assignments: int | None = 3
    top_m_interpretations: int | None = 10
    strict_fill: bool = False
    max_sequence_length: int = 20

    def __post_init__(self):
        if math.isnan(self.pair_threshold):
            raise ValueError("pair_threshold must not be NaN")
        if self.pair_threshold != float("-inf") and self.pair_threshold < 0:
            raise ValueError("pair_threshold must be >= 0, or -inf to disable pruning")
        if self.top_k_assignments is not None and self.top_k_assignments < 1:
            raise ValueError("top_k_assignments must be >= 1, or None for no limit")
        if self.top_m_interpretations is not None and self.top_m_interpretations < 1:
            raise ValueError("top_m_interpretations must be >= 1, or None for no limit")
        if self.max_sequence_length < 1:
            raise ValueError("max_sequence_length must be >= 1")


@dataclass(frozen=True)
class Assignment:
    """Injective allotment of candidate icons to one predicate's case slots.

    ``fills`` keeps the predicate's declared slot order; unfilled slots are
    simply absent.  ``score`` is the sum over filled slots of the
    distance-faded raw compatibility.
    """

    predicate_instance: int
    fills: tuple[tuple[str, int], ...]
    score: float

    def fills_map(self) -> dict[str, int]:
        return dict(self.fills)


@dataclass(frozen=True)
class Interpretation:
    """One assignment per predicate, in sequence order; the score is the
    sum of the assignment scores."""

    choices: tuple[tuple[int, Assignment], ...]
    score: float

    def assignment_for(self, predicate_instance: int) -> Assignment | None:
        for pid, assignment in self.choices:
            if pid == predicate_instance:
                return assignment
        return None


def assignment_sort_key(assignment: Assignment, positions: Mapping[int, int]):
    """Deterministic ordering: score descending, then the filled
    (case, candidate position) pairs compared lexicographically."""
    fills_vec = tuple(sorted((case, positions[cand]) for case, cand in assignment.fills))
    return (-assignment.score, fills_vec)


class ChartParser:
    """A single-writer parse session over one lexicon.

    Mutating calls (``parse_from_scratch``, ``add_icons``,
    ``remove_icons``) must be serialized by the caller; reads on a
    quiescent session are safe from any thread.  ``counters`` reset at the
    start of every mutating call and describe that call only.

    Internally the session keeps the full scored assignment pool of every
    predicate; the public assignments table is the pool truncated to the
    configured top K.  Keeping the pool is what makes removals exactly
    equivalent to a parse from scratch: entries below the cut can move up
    when better ones are purged.
    """

    def __init__(self, lexicon: Lexicon, config: ParserConfig | None = None):
        self.lexicon = lexicon
        self.config = config or ParserConfig()
        self.counters = OpCounters()
        self._instances: list[IconInstance] = []
        self._next_instance_id = 1
        self._compat: dict[tuple[int, str, int], float] = {}
        self._pools: dict[int, list[Assignment]] = {}
        self._retained: dict[int, list[Assignment]] = {}
        self._interpretations: list[Interpretation] = []
        self._parsed = False

    # -- read-only views ------------------------------------------------

    @property
    def parsed(self) -> bool:
        return self._parsed

    @property
    def sequence(self) -> tuple[IconInstance, ...]:
        return tuple(self._instances)

    @property
    def compatibility_table(self) -> dict[tuple[int, str, int], float]:
        return dict(self._compat)

    @property
    def assignments_table(self) -> dict[int, list[Assignment]]:
        return {pid: list(rows) for pid, rows in self._retained.items()}

    @property
    def interpretations_table(self) -> list[Interpretation]:
        return list(self._interpretations)

    def entry_for(self, instance: IconInstance) -> LexEntry:
        return self.lexicon.lookup(instance.lexicon_id)

    def predicates(self) -> list[IconInstance]:
        return [inst for inst in self._instances if self.entry_for(inst).predicative]

    def instance_at(self, position: int) -> IconInstance:
        if not 1 <= position <= len(self._instances):
            raise ValueError(f"no icon at position {position}")
        return self._instances[position - 1]

    def best_interpretation(self) -> Interpretation:
        if not self._parsed:
            raise ParseStateError("nothing has been parsed yet")
        return self._interpretations[0]

    def enumerate_assignments(self, predicate_instance: int) -> list[Assignment]:
        """The retained (sorted, truncated) assignments of one predicate."""
        if not self._parsed:
            raise ParseStateError("nothing has been parsed yet")
        if predicate_instance in self._retained:
            return list(self._retained[predicate_instance])
        if any(inst.instance_id == predicate_instance for inst in self._instances):
            raise ValueError(f"instance {predicate_instance} is not predicative")
        raise UnknownInstanceError([predicate_instance])

    def enumerate_interpretations(self) -> list[Interpretation]:
        """Re-rank the cartesian product of the retained assignments."""
        if not self._parsed:
            raise ParseStateError("nothing has been parsed yet")
        self._interpretations = self._product_interpretations()
        return self.interpretations_table

    # -- interface operations --------------------------------------------

    def parse_from_scratch(self, lexicon_ids: Iterable[str]) -> list[Interpretation]:
        ids = list(lexicon_ids)
        for icon_id in ids:  # fail fast, state untouched
            self.lexicon.lookup(icon_id)
        if len(ids) > self.config.max_sequence_length:
            raise SequenceTooLongError(len(ids), self.config.max_sequence_length)
        self.counters.reset()
        self._next_instance_id = 1
        self._instances = [
            IconInstance(self._take_id(), icon_id, pos)
            for pos, icon_id in enumerate(ids, start=1)
        ]
        self._compat = {}
        self._fill_compat(new_ids=None)
        self._pools = {
            pred.instance_id: self._score_pool(pred, require_new=None)
            for pred in self.predicates()
        }
        self._rebuild_views()
        self._parsed = True
        return self.interpretations_table

    def add_icons(self, lexicon_ids: Iterable[str]) -> list[Interpretation]:
        ids = list(lexicon_ids)
        if not self._parsed:
            return self.parse_from_scratch(ids)
        for icon_id in ids:
            self.lexicon.lookup(icon_id)
        total = len(self._instances) + len(ids)
        if total > self.config.max_sequence_length:
            raise SequenceTooLongError(total, self.config.max_sequence_length)
        self.counters.reset()
        if not ids:
            return self.interpretations_table
        start = len(self._instances)
        fresh = [
            IconInstance(self._take_id(), icon_id, start + offset)
            for offset, icon_id in enumerate(ids, start=1)
        ]
        self._instances.extend(fresh)
        new_ids = {inst.instance_id for inst in fresh}
        self._fill_compat(new_ids=new_ids)
        positions = self._positions()
        for pred in self.predicates():
            pid = pred.instance_id
            if pid in new_ids:
                self._pools[pid] = self._score_pool(pred, require_new=None)
                continue
            additions = self._score_pool(pred, require_new=new_ids)
            if self.config.strict_fill:
                # drop the placeholder if real total fills are now possible
                merged = [a for a in self._pools[pid] if a.fills] + additions
                if not merged:
                    merged = [Assignment(pid, (), 0.0)]
            else:
                merged = self._pools[pid] + additions
            merged.sort(key=lambda a: assignment_sort_key(a, positions))
            self._pools[pid] = merged
        self._rebuild_views()
        return self.interpretations_table

    def remove_icons(self, instance_ids: Iterable[int]) -> list[Interpretation]:
        if not self._parsed:
            raise ParseStateError("nothing has been parsed yet")
        ids = list(instance_ids)
        live = {inst.instance_id for inst in self._instances}
        unknown = [iid for iid in ids if iid not in live]
        if unknown:
            raise UnknownInstanceError(unknown)
        self.counters.reset()
        if not ids:
            return self.interpretations_table
        removed = set(ids)
        old_positions = self._positions()
        self._instances = [
            replace(inst, position=pos)
            for pos, inst in enumerate(
                (i for i in self._instances if i.instance_id not in removed), start=1
            )
        ]
        new_positions = self._positions()
        self._compat = {
            key: value
            for key, value in self._compat.items()
            if key[0] not in removed and key[2] not in removed
        }
        pools: dict[int, list[Assignment]] = {}
        for pred in self.predicates():
            pid = pred.instance_id
            kept: list[Assignment] = []
            for assignment in self._pools[pid]:
                if any(cand in removed for _, cand in assignment.fills):
                    continue
                if assignment.fills and self._distances_changed(
                    assignment, pid, old_positions, new_positions
                ):
                    # compaction moved icons closer; re-fade from the raw values
                    assignment = self._score_assignment(pid, assignment.fills, new_positions)
                kept.append(assignment)
            if not kept:
                kept = [Assignment(pid, (), 0.0)]
            kept.sort(key=lambda a: assignment_sort_key(a, new_positions))
            pools[pid] = kept
        self._pools = pools
        self._rebuild_views()
        return self.interpretations_table

    # -- internals --------------------------------------------------------

    def _take_id(self) -> int:
        iid = self._next_instance_id
        self._next_instance_id += 1
        return iid

    def _positions(self) -> dict[int, int]:
        return {inst.instance_id: inst.position for inst in self._instances}

    def _fill_compat(self, new_ids: set[int] | None) -> None:
        """Score every (predicate, case, candidate) pair and keep the ones at
        or above the threshold.  With ``new_ids`` given, pairs between two
        old icons are skipped entirely: their raw values are distance-free
        and already stored."""
        threshold = self.config.pair_threshold
        for pred in self.predicates():
            entry = self.entry_for(pred)
            for slot in entry.case_structure:
                for cand in self._instances:
                    if cand.instance_id == pred.instance_id:
                        continue
                    if (
                        new_ids is not None
                        and pred.instance_id not in new_ids
                        and cand.instance_id not in new_ids
                    ):
                        continue
                    raw = structure_compat(self.entry_for(cand).intrinsic, slot.selectional)
                    self.counters.structure_compat_evals += 1
                    if raw >= threshold:
                        self._compat[(pred.instance_id, slot.case_type, cand.instance_id)] = raw

    def _score_assignment(
        self,
        predicate_instance: int,
        fills: Sequence[tuple[str, int]],
        positions: Mapping[int, int],
    ) -> Assignment:
        cfg = self.config.fading
        score = 0.0
        for case, cand in fills:
            raw = self._compat[(predicate_instance, case, cand)]
            score += fading(abs(positions[predicate_instance] - positions[cand]), cfg) * raw
        self.counters.assignment_scorings += 1
        return Assignment(predicate_instance, tuple(fills), score)

    def _score_pool(
        self, pred: IconInstance, require_new: set[int] | None
    ) -> list[Assignment]:
        """Enumerate and score the assignments of one predicate from the
        compatibility table.

        Strict mode enumerates injective total maps from the case slots to
        passing candidates; the default additionally lets each slot stay
        unfilled.  With ``require_new`` given, only maps that use at least
        one of those instances are scored (incremental append).  A
        predicate with no enumerable map at all contributes a single empty
        assignment of score 0 so interpretations still cover it.
        """
        entry = self.entry_for(pred)
        positions = self._positions()
        pid = pred.instance_id
        slot_candidates = [
            (
                slot.case_type,
                [
                    inst.instance_id
                    for inst in self._instances
                    if inst.instance_id != pid
                    and (pid, slot.case_type, inst.instance_id) in self._compat
                ],
            )
            for slot in entry.case_structure
        ]
        strict = self.config.strict_fill
        pool: list[Assignment] = []
        fills: list[tuple[str, int]] = []
        used: set[int] = set()

        def walk(idx: int) -> None:
            if idx == len(slot_candidates):
                if require_new is not None and not any(c in require_new for _, c in fills):
                    return
                pool.append(self._score_assignment(pid, tuple(fills), positions))
                return
            case_type, candidates = slot_candidates[idx]
            if not strict:
                walk(idx + 1)
            for cand in candidates:
                if cand in used:
                    continue
                used.add(cand)
                fills.append((case_type, cand))
                walk(idx + 1)
                fills.pop()
                used.discard(cand)

        walk(0)
        if not pool and require_new is None:
            pool.append(Assignment(pid, (), 0.0))
        pool.sort(key=lambda a: assignment_sort_key(a, positions))
        return pool

    def _rebuild_views(self) -> None:
        k = self.config.top_k_assignments
        self._retained = {
            pid: list(pool) if k is None else pool[:k] for pid, pool in self._pools.items()
        }
        self._interpretations = self._product_interpretations()

    def _product_interpretations(self) -> list[Interpretation]:
        preds = self.predicates()
        if not preds:
            self.counters.interpretations_scored += 1
            return [Interpretation((), 0.0)]
        rows = [self._retained[p.instance_id] for p in preds]
        n_sums = len(preds) - 1

        def scored():
            for combo in itertools.product(*(range(len(r)) for r in rows)):
                score = 0.0
                for row, j in zip(rows, combo):
                    score += row[j].score
                self.counters.interpretations_scored += 1
                self.counters.elementary_sums += n_sums
                yield ((-score, combo), score)

        m = self.config.top_m_interpretations
        if m is None:
            selected = sorted(scored(), key=lambda item: item[0])
        else:
            selected = heapq.nsmallest(m, scored(), key=lambda item: item[0])
        out = []
        for (_neg, combo), score in selected:
            choices = tuple((preds[i].instance_id, rows[i][j]) for i, j in enumerate(combo))
            out.append(Interpretation(choices, score))
        return out

    @staticmethod
    def _distances_changed(
        assignment: Assignment,
        pid: int,
        old_positions: Mapping[int, int],
        new_positions: Mapping[int, int],
    ) -> bool:
        for _, cand in assignment.fills:
            old_d = abs(old_positions[pid] - old_positions[cand])
            new_d = abs(new_positions[pid] - new_positions[cand])
            if old_d != new_d:
                return True
        return False


# The session object doubles as the stored parser state.
ParserState = ChartParser
