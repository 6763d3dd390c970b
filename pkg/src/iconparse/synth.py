"""Synthetic inputs: saturated worst cases for benchmarks and a
budget-bounded random instance generator for cross-engine testing."""

from __future__ import annotations

import random

from .baseline import estimate_recursive_work
from .chart import ParserConfig
from .lexicon import CaseSlot, FeatureSet, LexEntry, Lexicon

_ATTRIBUTES = (
    "animate",
    "human",
    "liquid",
    "solid",
    "male",
    "adult",
    "edible",
    "mobile",
    "abstract",
    "bright",
)
_CASES = ("agent", "object", "goal", "source")


def worst_case_lexicon(n: int, valency: int) -> tuple[Lexicon, list[str]]:
    """n icons, all predicative at the given valency, built so that every
    role/filler pair scores exactly 1.0: no threshold up to 1 ever sheds a
    pair, and every injective slot map is a live assignment."""
    marker = FeatureSet.from_mapping({"thing": 1})
    slots = tuple(CaseSlot(f"role{j}", marker) for j in range(1, valency + 1))
    ids = [f"icon{i:02d}" for i in range(1, n + 1)]
    entries = {icon_id: LexEntry(icon_id, icon_id, marker, slots) for icon_id in ids}
    return Lexicon(entries, "synthetic saturated lexicon"), ids


def random_instance(
    rng: random.Random,
    max_n: int = 5,
    max_valency: int = 2,
    config: ParserConfig | None = None,
    max_work: int = 15_000,
) -> tuple[Lexicon, list[str]]:
    """A random lexicon plus a sequence drawn from it (repeats allowed),
    resampled until the predicted recursive work under ``config`` stays at
    or below ``max_work`` so both engines finish quickly."""
    config = config or ParserConfig()
    n_cap = max_n
    for _ in range(200):
        # bias toward longer sequences; short ones still occur
        n = min(n_cap, max(rng.randint(0, n_cap), rng.randint(0, n_cap)))
        pool: list[str] = []
        entries: dict[str, LexEntry] = {}
        for i in range(max(1, n)):
            icon_id = f"w{i}"
            intrinsic = _random_features(rng, rng.randint(1, 3))
            slots: tuple[CaseSlot, ...] = ()
            if rng.random() < 0.6:
                valency = rng.randint(1, max_valency)
                cases = rng.sample(_CASES, valency)
                slots = tuple(
                    CaseSlot(case, _random_features(rng, rng.randint(1, 2))) for case in cases
                )
            entries[icon_id] = LexEntry(icon_id, icon_id, intrinsic, slots)
            pool.append(icon_id)
        lexicon = Lexicon(entries, "randomized test lexicon")
        sequence = [rng.choice(pool) for _ in range(n)]
        if estimate_recursive_work(lexicon, sequence, config) <= max_work:
            return lexicon, sequence
        n_cap = max(1, n_cap - 1)  # shrink and retry
    raise RuntimeError(f"could not generate an instance under the work budget {max_work}")


def _random_features(rng: random.Random, count: int) -> FeatureSet:
    mapping: dict[str, object] = {}
    for attr in rng.sample(_ATTRIBUTES, count):
        if rng.random() < 0.7:
            mapping[attr] = rng.choice((-1, 1))
        else:
            mapping[attr] = round(rng.uniform(-1.0, 1.0), 2)
    return FeatureSet.from_mapping(mapping)
