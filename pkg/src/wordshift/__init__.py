"""Pairwise corpus comparison with per-word contribution decomposition.

Any text-difference measure expressible as a (difference of) weighted
averages, from relative frequency and Shannon/Tsallis entropy to the KL
and Jensen-Shannon divergences and dictionary scores, is reduced to per-word
components, decomposed into frequency and score contributions, and
rendered as a deterministic SVG word shift graph.
"""

__version__ = "0.1.0"

from .corpus import (
    TokenDistribution,
    TokenizerOptions,
    build_distribution,
    load_counts,
    load_text,
    mixture,
    tokenize,
    union_vocabulary,
)
from .errors import DomainError, ParseError
from .lexicon import ResolvedScore, ScoreLexicon, StopLens, apply_stop_lens, load_lexicon, resolve_scores
from .measures import (
    CORPUS1_AVERAGE,
    MEASURE_KINDS,
    ComponentRow,
    MeasureSpec,
    ShiftComponents,
    build_components,
    dictionary_components,
    jsd_components,
    kld_components,
    relative_frequency_components,
    shannon_entropy_components,
    tsallis_entropy_components,
)
from .render import GraphDocument, RenderOptions, render_shift_graph
from .shift import (
    ContributionClass,
    ShiftResult,
    WordContribution,
    analyze,
    classify,
    cumulative,
    decompose,
    rank,
    summarize,
)

__all__ = [
    "TokenDistribution",
    "TokenizerOptions",
    "build_distribution",
    "load_counts",
    "load_text",
    "mixture",
    "tokenize",
    "union_vocabulary",
    "DomainError",
    "ParseError",
    "ResolvedScore",
    "ScoreLexicon",
    "StopLens",
    "apply_stop_lens",
    "load_lexicon",
    "resolve_scores",
    "CORPUS1_AVERAGE",
    "MEASURE_KINDS",
    "ComponentRow",
    "MeasureSpec",
    "ShiftComponents",
    "build_components",
    "dictionary_components",
    "jsd_components",
    "kld_components",
    "relative_frequency_components",
    "shannon_entropy_components",
    "tsallis_entropy_components",
    "GraphDocument",
    "RenderOptions",
    "render_shift_graph",
    "ContributionClass",
    "ShiftResult",
    "WordContribution",
    "analyze",
    "classify",
    "cumulative",
    "decompose",
    "rank",
    "summarize",
]
