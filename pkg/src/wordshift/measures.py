"""Comparison measures expressed in canonical shift form.

Every supported measure (relative frequency, Shannon entropy, generalized
Tsallis entropy, Kullback-Leibler divergence, Jensen-Shannon divergence,
dictionary averages) is a difference of weighted averages. Each
constructor here reduces its measure to the same per-word quadruple
``(p1, p2, phi1, phi2)`` plus a reference score, so a single decomposition
engine (:mod:`wordshift.shift`) can explain any of them word by word.

The defining identity is that the measure's total difference equals
``sum(p2*phi2 - p1*phi1)`` over the vocabulary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

from .corpus import TokenDistribution, mixture, union_vocabulary, validate_weights
from .errors import DomainError
from .lexicon import ResolvedScore, ScoreLexicon, StopLens, apply_stop_lens, resolve_scores

# Reference-score rule: use corpus 1's weighted average, sum(p1*phi1).
# For the entropy measures this is exactly the entropy of corpus 1.
CORPUS1_AVERAGE = "corpus1_average"

MEASURE_KINDS = (
    "relative_frequency",
    "shannon_entropy",
    "tsallis_entropy",
    "kld",
    "jsd",
    "dictionary",
)

Reference = float | str | None


class ComponentRow(NamedTuple):
    """One word's weights and scores in the two corpora."""

    word: str
    p1: float
    p2: float
    phi1: float
    phi2: float
    borrowed1: bool = False
    borrowed2: bool = False


@dataclass(frozen=True)
class ShiftComponents:
    """A measure reduced to per-word weighted-average components.

    ``rows`` are sorted by word. All fields are finite by construction;
    zero-frequency conventions are applied by the measure constructors so
    no NaN or infinity can reach the decomposition.
    """

    measure: str
    rows: tuple[ComponentRow, ...]
    reference_score: float
    labels: tuple[str, str]
    corpus_sizes: tuple[int, int]
    log_base: float = 2.0
    alpha: float | None = None
    pi1: float | None = None
    pi2: float | None = None

    def __post_init__(self) -> None:
        if not self.rows:
            raise DomainError(f"measure {self.measure!r} produced an empty vocabulary")
        for row in self.rows:
            for name, value in (("p1", row.p1), ("p2", row.p2), ("phi1", row.phi1), ("phi2", row.phi2)):
                if not math.isfinite(value):
                    raise ValueError(f"non-finite {name} for word {row.word!r} in {self.measure}")
            if row.p1 < 0.0 or row.p2 < 0.0:
                raise ValueError(f"negative frequency for word {row.word!r}")
        if not math.isfinite(self.reference_score):
            raise ValueError("reference score must be finite")

    def phi_totals(self) -> tuple[float, float]:
        """Weighted averages (Phi1, Phi2) whose difference is the measure."""
        phi1_total = sum(row.p1 * row.phi1 for row in self.rows)
        phi2_total = sum(row.p2 * row.phi2 for row in self.rows)
        return phi1_total, phi2_total

    def delta_phi(self) -> float:
        phi1_total, phi2_total = self.phi_totals()
        return phi2_total - phi1_total


def _log_fn(base: float) -> Callable[[float], float]:
    if base <= 0.0 or base == 1.0:
        raise ValueError(f"log base must be positive and != 1, got {base}")
    if base == 2.0:
        return math.log2
    if base == 10.0:
        return math.log10
    if base == math.e:
        return math.log
    ln_base = math.log(base)
    return lambda x: math.log(x) / ln_base


def _resolve_reference(rows: Sequence[ComponentRow], reference: Reference, default: Reference) -> float:
    rule = default if reference is None else reference
    if rule == CORPUS1_AVERAGE:
        return sum(row.p1 * row.phi1 for row in rows)
    if isinstance(rule, str):
        raise ValueError(f"unknown reference rule {rule!r}")
    return float(rule)


def relative_frequency_components(d1: TokenDistribution, d2: TokenDistribution, *,
                                  reference: Reference = None) -> ShiftComponents:
    """Frequency differences as a shift: every word scores 1, so each word
    contributes ``p2 - p1`` and the totals cancel to zero."""
    rows = tuple(
        ComponentRow(word, d1.probability(word), d2.probability(word), 1.0, 1.0)
        for word in union_vocabulary(d1, d2)
    )
    return ShiftComponents(
        measure="relative_frequency",
        rows=rows,
        reference_score=_resolve_reference(rows, reference, 0.0),
        labels=(d1.label, d2.label),
        corpus_sizes=(d1.total_tokens, d2.total_tokens),
    )


def shannon_entropy_components(d1: TokenDistribution, d2: TokenDistribution,
                               log_base: float = 2.0, *,
                               reference: Reference = None) -> ShiftComponents:
    """Entropy difference as a shift: each word is weighted by its surprisal
    ``log(1/p)``, set to 0 where the word is absent (its p*phi term vanishes
    in the limit). The reference defaults to corpus 1's entropy."""
    log = _log_fn(log_base)
    rows = []
    for word in union_vocabulary(d1, d2):
        p1 = d1.probability(word)
        p2 = d2.probability(word)
        phi1 = log(1.0 / p1) if p1 > 0.0 else 0.0
        phi2 = log(1.0 / p2) if p2 > 0.0 else 0.0
        rows.append(ComponentRow(word, p1, p2, phi1, phi2))
    rows = tuple(rows)
    return ShiftComponents(
        measure="shannon_entropy",
        rows=rows,
        reference_score=_resolve_reference(rows, reference, CORPUS1_AVERAGE),
        labels=(d1.label, d2.label),
        corpus_sizes=(d1.total_tokens, d2.total_tokens),
        log_base=log_base,
    )


def tsallis_entropy_components(d1: TokenDistribution, d2: TokenDistribution,
                               alpha: float, log_base: float = 2.0, *,
                               reference: Reference = None) -> ShiftComponents:
    """Generalized-entropy difference of order ``alpha`` as a shift.

    Word scores are ``-p**(alpha-1) / (alpha-1)``; the additive constant
    ``1/(alpha-1)`` cancels in the difference and is omitted, and absent
    words score 0. The power-law family is base-free: ``log_base`` is
    recorded for provenance only, and the alpha -> 1 limit is the
    natural-log Shannon difference. alpha = 1 itself must go through
    :func:`shannon_entropy_components`.
    """
    if alpha == 1.0:
        raise ValueError("alpha = 1 is the Shannon limit; use shannon_entropy_components")
    if alpha < 0.0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    scale = alpha - 1.0
    rows = []
    for word in union_vocabulary(d1, d2):
        p1 = d1.probability(word)
        p2 = d2.probability(word)
        phi1 = -(p1 ** scale) / scale if p1 > 0.0 else 0.0
        phi2 = -(p2 ** scale) / scale if p2 > 0.0 else 0.0
        rows.append(ComponentRow(word, p1, p2, phi1, phi2))
    rows = tuple(rows)
    return ShiftComponents(
        measure="tsallis_entropy",
        rows=rows,
        reference_score=_resolve_reference(rows, reference, CORPUS1_AVERAGE),
        labels=(d1.label, d2.label),
        corpus_sizes=(d1.total_tokens, d2.total_tokens),
        log_base=log_base,
        alpha=alpha,
    )


def kld_components(d1: TokenDistribution, d2: TokenDistribution,
                   log_base: float = 2.0, *,
                   reference: Reference = None) -> ShiftComponents:
    """Kullback-Leibler divergence of the comparison ``d2`` from the
    reference ``d1`` as a shift.

    Both weight slots carry ``p2`` so each word contributes
    ``p2*log(1/p1) - p2*log(1/p2)``, the extra encoding cost of the word.
    Words absent from the comparison contribute 0; words absent from the
    reference make the divergence undefined and raise :class:`DomainError`.
    """
    missing = sorted(set(d2.counts) - set(d1.counts))
    if missing:
        raise DomainError(
            "KLD undefined: comparison corpus uses words absent from the reference: "
            + ", ".join(missing)
        )
    log = _log_fn(log_base)
    rows = []
    for word in union_vocabulary(d1, d2):
        p1 = d1.probability(word)
        p2 = d2.probability(word)
        if p2 > 0.0:
            rows.append(ComponentRow(word, p2, p2, log(1.0 / p2), log(1.0 / p1)))
        else:
            rows.append(ComponentRow(word, 0.0, 0.0, 0.0, 0.0))
    rows = tuple(rows)
    return ShiftComponents(
        measure="kld",
        rows=rows,
        reference_score=_resolve_reference(rows, reference, 0.0),
        labels=(d1.label, d2.label),
        corpus_sizes=(d1.total_tokens, d2.total_tokens),
        log_base=log_base,
    )


def jsd_components(d1: TokenDistribution, d2: TokenDistribution,
                   pi1: float = 0.5, pi2: float = 0.5,
                   alpha: float = 1.0, log_base: float = 2.0, *,
                   reference: Reference = None) -> ShiftComponents:
    """Jensen-Shannon divergence as a shift, against the mixture
    ``m = pi1*p1 + pi2*p2``.

    For alpha = 1 each word's scores are the weighted log-ratios to the
    mixture, ``phi2 = pi2*log(p2/m)`` and ``phi1 = -pi1*log(p1/m)``, with a
    zero-frequency side contributing 0. For alpha != 1 the generalized
    power form is used; alpha < 1 is undefined when a word is missing from
    one corpus (the power diverges) and raises :class:`DomainError`.
    """
    validate_weights(pi1, pi2)
    if alpha < 0.0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    mix = mixture(d1, d2, pi1, pi2)
    rows = []
    if alpha == 1.0:
        log = _log_fn(log_base)
        for word, m in mix.items():
            p1 = d1.probability(word)
            p2 = d2.probability(word)
            phi1 = -pi1 * log(p1 / m) if p1 > 0.0 else 0.0
            phi2 = pi2 * log(p2 / m) if p2 > 0.0 else 0.0
            rows.append(ComponentRow(word, p1, p2, phi1, phi2))
    else:
        scale = alpha - 1.0
        if alpha < 1.0:
            one_sided = sorted(
                word for word in mix
                if d1.probability(word) == 0.0 or d2.probability(word) == 0.0
            )
            if one_sided:
                raise DomainError(
                    f"generalized JSD with alpha = {alpha} < 1 is undefined for words "
                    "appearing in only one corpus: " + ", ".join(one_sided)
                )
        for word, m in mix.items():
            p1 = d1.probability(word)
            p2 = d2.probability(word)
            pow1 = p1 ** scale if p1 > 0.0 else 0.0
            pow2 = p2 ** scale if p2 > 0.0 else 0.0
            pow_m = m ** scale
            phi1 = pi1 * (pow_m - pow1) / scale
            phi2 = pi2 * (pow2 - pow_m) / scale
            rows.append(ComponentRow(word, p1, p2, phi1, phi2))
    rows = tuple(rows)
    return ShiftComponents(
        measure="jsd",
        rows=rows,
        reference_score=_resolve_reference(rows, reference, 0.0),
        labels=(d1.label, d2.label),
        corpus_sizes=(d1.total_tokens, d2.total_tokens),
        log_base=log_base,
        alpha=alpha,
        pi1=pi1,
        pi2=pi2,
    )


def dictionary_components(d1: TokenDistribution, d2: TokenDistribution,
                          resolved: Sequence[ResolvedScore],
                          reference_score: Reference) -> ShiftComponents:
    """Dictionary-average difference as a shift.

    Frequencies are renormalized over the scored sub-vocabulary, so the
    totals are averages of the scores the lexicons actually cover. Borrowed
    flags pass through so renderers can mark those words.
    """
    if not resolved:
        raise DomainError("no vocabulary word carries a score; nothing to compare")
    total1 = sum(d1.counts.get(entry.word, 0) for entry in resolved)
    total2 = sum(d2.counts.get(entry.word, 0) for entry in resolved)
    if total1 == 0:
        raise DomainError(f"no scored word appears in corpus {d1.label!r}")
    if total2 == 0:
        raise DomainError(f"no scored word appears in corpus {d2.label!r}")
    rows = tuple(
        ComponentRow(
            entry.word,
            d1.counts.get(entry.word, 0) / total1,
            d2.counts.get(entry.word, 0) / total2,
            entry.phi1,
            entry.phi2,
            entry.borrowed1,
            entry.borrowed2,
        )
        for entry in sorted(resolved)
    )
    return ShiftComponents(
        measure="dictionary",
        rows=rows,
        reference_score=_resolve_reference(rows, reference_score, 0.0),
        labels=(d1.label, d2.label),
        corpus_sizes=(d1.total_tokens, d2.total_tokens),
    )


@dataclass(frozen=True)
class MeasureSpec:
    """Declarative description of a measure, resolvable against two corpora.

    ``proportional_weights`` sets the JSD mixture weights to the corpora's
    raw token-count shares instead of fixed values.
    """

    kind: str
    alpha: float | None = None
    log_base: float = 2.0
    pi1: float | None = None
    pi2: float | None = None
    proportional_weights: bool = False
    lexicon1: ScoreLexicon | None = None
    lexicon2: ScoreLexicon | None = None
    stop_lens: StopLens | None = None
    missing_scores: str = "borrow"
    reference: Reference = None

    def __post_init__(self) -> None:
        if self.kind not in MEASURE_KINDS:
            raise ValueError(f"unknown measure {self.kind!r}; expected one of {', '.join(MEASURE_KINDS)}")
        if (self.pi1 is None) != (self.pi2 is None):
            raise ValueError("pi1 and pi2 must be given together")
        if self.pi1 is not None:
            if self.proportional_weights:
                raise ValueError("explicit pi weights conflict with proportional weights")
            validate_weights(self.pi1, self.pi2)
        if self.missing_scores not in ("borrow", "drop"):
            raise ValueError(f"unknown missing-score policy {self.missing_scores!r}")
        if self.kind == "tsallis_entropy" and self.alpha is None:
            raise ValueError("tsallis_entropy requires alpha")


def build_components(spec: MeasureSpec, d1: TokenDistribution,
                     d2: TokenDistribution) -> ShiftComponents:
    """Evaluate ``spec`` against two corpora. Routes tsallis at alpha = 1 to
    the Shannon path and fills in measure-specific defaults."""
    kind = spec.kind
    if kind == "tsallis_entropy" and spec.alpha == 1.0:
        kind = "shannon_entropy"
    if kind == "relative_frequency":
        return relative_frequency_components(d1, d2, reference=spec.reference)
    if kind == "shannon_entropy":
        return shannon_entropy_components(d1, d2, spec.log_base, reference=spec.reference)
    if kind == "tsallis_entropy":
        return tsallis_entropy_components(d1, d2, spec.alpha, spec.log_base, reference=spec.reference)
    if kind == "kld":
        return kld_components(d1, d2, spec.log_base, reference=spec.reference)
    if kind == "jsd":
        if spec.proportional_weights:
            total = d1.total_tokens + d2.total_tokens
            pi1, pi2 = d1.total_tokens / total, d2.total_tokens / total
        elif spec.pi1 is not None:
            pi1, pi2 = spec.pi1, spec.pi2
        else:
            pi1 = pi2 = 0.5
        alpha = 1.0 if spec.alpha is None else spec.alpha
        return jsd_components(d1, d2, pi1, pi2, alpha, spec.log_base, reference=spec.reference)
    if spec.lexicon1 is None:
        raise ValueError("dictionary measure requires a lexicon")
    lex1 = spec.lexicon1
    lex2 = spec.lexicon2 if spec.lexicon2 is not None else lex1
    if spec.stop_lens is not None:
        lex1 = apply_stop_lens(lex1, spec.stop_lens)
        lex2 = apply_stop_lens(lex2, spec.stop_lens)
    resolved = resolve_scores(union_vocabulary(d1, d2), lex1, lex2, spec.missing_scores)
    reference = spec.reference if spec.reference is not None else lex1.center
    return dictionary_components(d1, d2, resolved, reference)
