"""Recursive backtracking baseline and closed-form work predictors.

The baseline recomputes every intermediate value exactly the way a naive
depth-first engine does: each predicate's assignment set is re-derived for
every combination of upstream assignment choices, and every case slot
re-scores all candidates on every visit (injectivity is only checked once
a leaf is reached, after the scoring work is already spent).  Its counters
therefore grow explosively with the sequence length, which is the point:
the chart parser must reach the same rankings while scoring each
role/filler pair exactly once.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass
from typing import Iterable

from .chart import (
    Assignment,
    ChartParser,
    IconInstance,
    Interpretation,
    ParserConfig,
    assignment_sort_key,
)
from .compatibility import fading, structure_compat
from .counters import OpCounters
from .errors import SequenceTooLongError, WorkBudgetError
from .lexicon import Lexicon

DEFAULT_WORK_BUDGET = 5_000_000


def permutations(n: int, v: int) -> int:
    """Ordered selections of v distinct items out of n: n! / (n - v)!."""
    if n < 0 or v < 0:
        raise ValueError("permutations is defined for non-negative counts")
    if v > n:
        raise ValueError(f"cannot select {v} distinct items out of {n}")
    return math.perm(n, v)


@dataclass(frozen=True)
class ComplexityParams:
    """Worst-case parameters for the predictors: sequence length ``n`` with
    every icon predicative at uniform valency ``v``, plus the cost ratios of
    one role/filler scoring (``a``) and one assignment scoring (``b``)
    relative to an elementary binary sum.  The closed forms assume
    ``n - 1 > v``."""

    n: int
    v: int
    a: float = 1
    b: float = 1

    def __post_init__(self):
        if self.n < 1 or self.v < 1:
            raise ValueError("n and v must be >= 1")
        if self.a <= 0 or self.b <= 0:
            raise ValueError("cost ratios a and b must be positive")
        if self.n - 1 <= self.v:
            raise ValueError("the predictors require n - 1 > v")


def predict_recursive_ops(params: ComplexityParams):
    """Elementary operations of the naive engine on the worst case.

    Exact integer arithmetic whenever the cost ratios are integers, so the
    hyperexponential values at larger n never overflow or wrap.
    """
    p = permutations(params.n - 1, params.v)
    interpretation_sums = (params.n - 1) * p**params.n
    evals_per_set = sum((params.n - 1) ** k for k in range(1, params.v + 1))
    assignment_calcs = sum(p**k for k in range(1, params.n + 1))
    return interpretation_sums + params.a * evals_per_set * assignment_calcs


def predict_chart_ops(params: ComplexityParams):
    """Elementary operations of the chart engine on the worst case: the
    same interpretation-summing term, plus one table fill per
    (predicate, case, candidate) pair and one scoring per assignment."""
    p = permutations(params.n - 1, params.v)
    interpretation_sums = (params.n - 1) * p**params.n
    table_fill = params.a * params.v * params.n * (params.n - 1)
    assignment_fill = params.b * params.n * p
    return interpretation_sums + table_fill + assignment_fill


def estimate_recursive_work(
    lexicon: Lexicon, lexicon_ids: Iterable[str], config: ParserConfig | None = None
) -> int:
    """Upper bound on the operations ``recursive_parse`` would count,
    assuming every role/filler pair passes the threshold."""
    config = config or ParserConfig()
    ids = list(lexicon_ids)
    n = len(ids)
    entries = [lexicon.lookup(icon_id) for icon_id in ids]
    predicative = [e for e in entries if e.predicative]
    if not predicative:
        return 1
    k = config.top_k_assignments
    total = 0
    prefix = 1
    for entry in predicative:
        v = entry.valency
        if config.strict_fill:
            full = math.perm(n - 1, v) if n - 1 >= v else 0
            evals = sum((n - 1) ** j for j in range(1, v + 1))
        else:
            full = sum(
                math.comb(v, j) * math.perm(n - 1, j)
                for j in range(0, min(v, n - 1) + 1)
            )
            evals = sum(n ** (j - 1) * (n - 1) for j in range(1, v + 1))
        retained = max(1, full if k is None else min(full, k))
        total += prefix * (evals + full)
        prefix *= retained
    total += prefix * len(predicative)
    return total


@dataclass
class RecursiveResult:
    interpretations: list[Interpretation]
    counters: OpCounters


def recursive_parse(
    lexicon: Lexicon,
    lexicon_ids: Iterable[str],
    config: ParserConfig | None = None,
    work_budget: int = DEFAULT_WORK_BUDGET,
) -> RecursiveResult:
    """Parse by pure depth-first backtracking, memoizing nothing.

    Produces the same ranked interpretations as the chart parser under the
    same configuration; refuses to start when the predicted worst-case
    work exceeds ``work_budget``.
    """
    config = config or ParserConfig()
    ids = list(lexicon_ids)
    entries = [lexicon.lookup(icon_id) for icon_id in ids]
    if len(ids) > config.max_sequence_length:
        raise SequenceTooLongError(len(ids), config.max_sequence_length)
    predicted = estimate_recursive_work(lexicon, ids, config)
    if predicted > work_budget:
        raise WorkBudgetError(predicted, work_budget)

    counters = OpCounters()
    instances = [IconInstance(pos, icon_id, pos) for pos, icon_id in enumerate(ids, start=1)]
    positions = {inst.instance_id: inst.position for inst in instances}
    entry_of = {inst.instance_id: entries[inst.position - 1] for inst in instances}
    preds = [inst for inst in instances if entry_of[inst.instance_id].predicative]
    k = config.top_k_assignments

    def assignment_set(pred: IconInstance) -> list[Assignment]:
        # Recomputed in full on every call; nothing is looked up in a table.
        entry = entry_of[pred.instance_id]
        others = [inst for inst in instances if inst.instance_id != pred.instance_id]
        found: list[Assignment] = []
        trail: list[tuple[str, int | None, float]] = []

        def slot_walk(idx: int) -> None:
            if idx == len(entry.case_structure):
                chosen = [(case, cand, raw) for case, cand, raw in trail if cand is not None]
                cands = [cand for _, cand, _ in chosen]
                if len(set(cands)) != len(cands):
                    return  # duplicate filler; the scoring work above was still spent
                score = 0.0
                for _case, cand, raw in chosen:
                    score += fading(abs(positions[pred.instance_id] - positions[cand]), config.fading) * raw
                counters.assignment_scorings += 1
                found.append(
                    Assignment(
                        pred.instance_id,
                        tuple((case, cand) for case, cand, _ in chosen),
                        score,
                    )
                )
                return
            slot = entry.case_structure[idx]
            if not config.strict_fill:
                trail.append((slot.case_type, None, 0.0))
                slot_walk(idx + 1)
                trail.pop()
            for cand in others:
                raw = structure_compat(entry_of[cand.instance_id].intrinsic, slot.selectional)
                counters.structure_compat_evals += 1
                if raw < config.pair_threshold:
                    continue
                trail.append((slot.case_type, cand.instance_id, raw))
                slot_walk(idx + 1)
                trail.pop()

        slot_walk(0)
        if not found:
            found = [Assignment(pred.instance_id, (), 0.0)]
        found.sort(key=lambda a: assignment_sort_key(a, positions))
        return found if k is None else found[:k]

    def interp_walk(depth: int, chosen: list[tuple[int, Assignment]], combo: list[int]):
        if depth == len(preds):
            score = 0.0
            for _, assignment in chosen:
                score += assignment.score
            counters.interpretations_scored += 1
            counters.elementary_sums += max(0, len(preds) - 1)
            yield ((-score, tuple(combo)), tuple(chosen), score)
            return
        # the whole assignment set of this predicate is re-derived for every
        # combination of upstream choices
        for j, assignment in enumerate(assignment_set(preds[depth])):
            chosen.append((preds[depth].instance_id, assignment))
            combo.append(j)
            yield from interp_walk(depth + 1, chosen, combo)
            chosen.pop()
            combo.pop()

    stream = interp_walk(0, [], [])
    m = config.top_m_interpretations
    if m is None:
        ranked = sorted(stream, key=lambda item: item[0])
    else:
        ranked = heapq.nsmallest(m, stream, key=lambda item: item[0])
    interpretations = [Interpretation(choices, score) for _key, choices, score in ranked]
    return RecursiveResult(interpretations, counters)


def rankings_equal(
    lhs: list[Interpretation], rhs: list[Interpretation], tol: float = 1e-9
) -> tuple[bool, str | None]:
    """Compare two ranked interpretation lists; on mismatch, describe the
    first diverging rank."""
    if len(lhs) != len(rhs):
        return False, f"ranking lengths differ: {len(lhs)} vs {len(rhs)}"
    for rank, (a, b) in enumerate(zip(lhs, rhs), start=1):
        if abs(a.score - b.score) > tol:
            return False, f"rank {rank}: scores differ ({a.score!r} vs {b.score!r})"
        fills_a = {pid: asg.fills for pid, asg in a.choices}
        fills_b = {pid: asg.fills for pid, asg in b.choices}
        if fills_a != fills_b:
            return False, f"rank {rank}: fills differ ({fills_a} vs {fills_b})"
    return True, None


@dataclass
class EngineComparison:
    equal: bool
    divergence: str | None
    chart_counters: OpCounters
    recursive_counters: OpCounters
    chart_wall_s: float
    recursive_wall_s: float
    predicted_chart_ops: object | None = None
    predicted_recursive_ops: object | None = None


def compare_engines(
    lexicon: Lexicon,
    lexicon_ids: Iterable[str],
    config: ParserConfig | None = None,
    work_budget: int = DEFAULT_WORK_BUDGET,
    a: float = 1,
    b: float = 1,
) -> EngineComparison:
    """Run both engines on the same input and cross-check the rankings.

    The closed-form predictions are included for context whenever the
    sequence has a uniform predicate valency in the predictors' domain.
    """
    config = config or ParserConfig()
    ids = list(lexicon_ids)
    parser = ChartParser(lexicon, config)
    t0 = time.perf_counter()
    chart_interps = parser.parse_from_scratch(ids)
    chart_wall = time.perf_counter() - t0
    t0 = time.perf_counter()
    result = recursive_parse(lexicon, ids, config, work_budget)
    recursive_wall = time.perf_counter() - t0
    equal, divergence = rankings_equal(chart_interps, result.interpretations)

    predicted_chart = predicted_recursive = None
    valencies = {lexicon.lookup(i).valency for i in ids if lexicon.lookup(i).predicative}
    if len(valencies) == 1:
        v = valencies.pop()
        n = len(ids)
        if v >= 1 and n - 1 > v:
            params = ComplexityParams(n, v, a, b)
            predicted_chart = predict_chart_ops(params)
            predicted_recursive = predict_recursive_ops(params)
    return EngineComparison(
        equal,
        divergence,
        parser.counters,
        result.counters,
        chart_wall,
        recursive_wall,
        predicted_chart,
        predicted_recursive,
    )
