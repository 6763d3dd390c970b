"""Semantic chart parsing of grammarless icon sequences.

Sequences of icons carry no morphology and no reliable word order, so this
package assigns case-role fillers to predicative icons purely by semantic
feature compatibility, faded by positional distance.  A chart of memo
tables (pair compatibilities, per-predicate assignments, ranked
interpretations) supports full parses plus incremental append and removal;
a deliberately naive recursive engine and closed-form work predictors
validate both the rankings and the complexity claims.
"""

from .baseline import (
    ComplexityParams,
    DEFAULT_WORK_BUDGET,
    EngineComparison,
    RecursiveResult,
    compare_engines,
    estimate_recursive_work,
    permutations,
    predict_chart_ops,
    predict_recursive_ops,
    rankings_equal,
    recursive_parse,
)
from .chart import (
    Assignment,
    ChartParser,
    IconInstance,
    Interpretation,
    ParserConfig,
    ParserState,
    assignment_sort_key,
)
from .compatibility import (
    FadingConfig,
    fading,
    feature_compat,
    structure_compat,
    weighted_value,
)
from .counters import OpCounters
from .errors import (
    IconParseError,
    LexiconError,
    ParseStateError,
    SequenceTooLongError,
    UnknownIconError,
    UnknownInstanceError,
    WorkBudgetError,
)
from .lexicon import (
    BUILTIN_LEXICONS,
    CaseSlot,
    Feature,
    FeatureSet,
    FeatureValue,
    LexEntry,
    Lexicon,
    builtin_lexicon,
    dumps_lexicon,
    is_predicative,
    lexicon_from_dict,
    load_lexicon,
    loads_lexicon,
    serialize_lexicon,
)
from .report import ParseReport, build_report, compact_interpretation, format_score
from .synth import random_instance, worst_case_lexicon

__version__ = "0.1.0"
