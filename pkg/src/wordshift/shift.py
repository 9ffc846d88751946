"""Decomposition of a measure difference into classified per-word contributions.

Given per-word components ``(p1, p2, phi1, phi2)`` and a reference score
``ref``, each word's contribution splits into two additive parts::

    delta(word) = (p2 - p1) * ((phi2 + phi1)/2 - ref)     # frequency part
                + ((p2 + p1)/2) * (phi2 - phi1)           # score part

The parts sum to ``p2*phi2 - p1*phi1`` up to a ``ref``-proportional term
that cancels across the vocabulary, so the word totals always reconstruct
the measure difference. When the two score sets coincide the score part
vanishes and the decomposition reduces to the single-score form
``(p2 - p1) * (phi - ref)``.

Each word is classified by the signs of its three ingredients: average
score versus reference (``+``/``-``), frequency change (``↑``/``↓``), and
score change (``△``/``▽``); an exactly-zero ingredient gets ``0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DomainError
from .measures import ShiftComponents

# Sign tolerance: double-precision noise from the decomposition algebra
# must not flip a class.
SIGN_EPS = 1e-12

SIGN_SCORE_UP, SIGN_SCORE_DOWN = "+", "-"
SIGN_FREQ_UP, SIGN_FREQ_DOWN = "↑", "↓"  # ↑ ↓
SIGN_DIFF_UP, SIGN_DIFF_DOWN = "△", "▽"  # △ ▽
SIGN_ZERO = "0"

# Canonical ordering for summary bars: four frequency classes, then the
# two score-change classes used by two-score shifts.
FREQ_CLASS_ORDER = (
    SIGN_SCORE_UP + SIGN_FREQ_UP,
    SIGN_SCORE_UP + SIGN_FREQ_DOWN,
    SIGN_SCORE_DOWN + SIGN_FREQ_UP,
    SIGN_SCORE_DOWN + SIGN_FREQ_DOWN,
)
DIFF_CLASS_ORDER = (SIGN_DIFF_UP, SIGN_DIFF_DOWN)


class ContributionClass(NamedTuple):
    """Sign triple describing how a word contributes."""

    sign_score: str
    sign_freq: str
    sign_diff: str

    @property
    def label(self) -> str:
        return self.sign_score + self.sign_freq + self.sign_diff

    @classmethod
    def from_label(cls, label: str) -> "ContributionClass":
        if (
            len(label) != 3
            or label[0] not in (SIGN_SCORE_UP, SIGN_SCORE_DOWN, SIGN_ZERO)
            or label[1] not in (SIGN_FREQ_UP, SIGN_FREQ_DOWN, SIGN_ZERO)
            or label[2] not in (SIGN_DIFF_UP, SIGN_DIFF_DOWN, SIGN_ZERO)
        ):
            raise ValueError(f"malformed contribution class label {label!r}")
        return cls(label[0], label[1], label[2])


class WordContribution(NamedTuple):
    """One word's total contribution and its two additive parts."""

    word: str
    delta_total: float
    freq_component: float
    score_component: float
    cls: ContributionClass
    borrowed: bool


def classify(avg_score_offset: float, freq_diff: float, score_diff: float,
             eps: float = SIGN_EPS) -> ContributionClass:
    """Classify a contribution from its three sign-determining quantities:
    average score minus reference, ``p2 - p1``, and ``phi2 - phi1``."""

    def sign(value: float, positive: str, negative: str) -> str:
        if value > eps:
            return positive
        if value < -eps:
            return negative
        return SIGN_ZERO

    return ContributionClass(
        sign(avg_score_offset, SIGN_SCORE_UP, SIGN_SCORE_DOWN),
        sign(freq_diff, SIGN_FREQ_UP, SIGN_FREQ_DOWN),
        sign(score_diff, SIGN_DIFF_UP, SIGN_DIFF_DOWN),
    )


def decompose(components: ShiftComponents) -> list[WordContribution]:
    """Split every word's contribution into frequency and score parts."""
    ref = components.reference_score
    contributions = []
    for row in components.rows:
        freq_diff = row.p2 - row.p1
        score_diff = row.phi2 - row.phi1
        avg_offset = 0.5 * (row.phi2 + row.phi1) - ref
        freq_component = freq_diff * avg_offset
        score_component = 0.5 * (row.p2 + row.p1) * score_diff
        contributions.append(
            WordContribution(
                word=row.word,
                delta_total=freq_component + score_component,
                freq_component=freq_component,
                score_component=score_component,
                cls=classify(avg_offset, freq_diff, score_diff),
                borrowed=row.borrowed1 or row.borrowed2,
            )
        )
    return contributions


def rank(contributions: Iterable[WordContribution]) -> list[WordContribution]:
    """Order by descending absolute contribution, ties lexicographic."""
    return sorted(contributions, key=lambda c: (-abs(c.delta_total), c.word))


def summarize(contributions: Iterable[WordContribution]) -> dict[str, float]:
    """Total contribution of each class of word shift.

    Frequency parts group by (score sign, frequency sign); score parts by
    score-change sign. Single-score shifts report the four frequency
    classes; two-score shifts add the ``△``/``▽`` totals. Degenerate
    zero-sign groups are kept only when nonzero so the grand total always
    equals the sum of word contributions exactly.
    """
    freq_sums: dict[str, float] = {}
    diff_sums: dict[str, float] = {}
    generalized = False
    for c in contributions:
        freq_key = c.cls.sign_score + c.cls.sign_freq
        freq_sums[freq_key] = freq_sums.get(freq_key, 0.0) + c.freq_component
        diff_key = c.cls.sign_diff
        diff_sums[diff_key] = diff_sums.get(diff_key, 0.0) + c.score_component
        if diff_key != SIGN_ZERO:
            generalized = True
    sums: dict[str, float] = {}
    for key in FREQ_CLASS_ORDER:
        sums[key] = freq_sums.pop(key, 0.0)
    for key in sorted(freq_sums):
        if freq_sums[key] != 0.0:
            sums[key] = freq_sums[key]
    if generalized:
        for key in DIFF_CLASS_ORDER:
            sums[key] = diff_sums.pop(key, 0.0)
    residual_diff = diff_sums.get(SIGN_ZERO, 0.0)
    if residual_diff != 0.0:
        sums[SIGN_ZERO] = residual_diff
    return sums


def cumulative(contributions: Sequence[WordContribution], mode: str) -> tuple[float, ...]:
    """Running normalized contribution by rank.

    ``abs`` accumulates ``|delta|`` as a share of total variation (ends at
    1; all zeros when there is no variation at all). ``signed`` accumulates
    the signed deltas normalized by the absolute total difference, which is
    undefined when that difference is zero.
    """
    if mode == "abs":
        total = sum(abs(c.delta_total) for c in contributions)
        if total == 0.0:
            return tuple(0.0 for _ in contributions)
        series = []
        running = 0.0
        for c in contributions:
            running += abs(c.delta_total)
            series.append(running / total)
        return tuple(series)
    if mode == "signed":
        delta = sum(c.delta_total for c in contributions)
        if delta == 0.0:
            raise DomainError(
                "signed cumulative series is undefined when the total difference is zero; "
                "use the abs mode"
            )
        norm = abs(delta)
        series = []
        running = 0.0
        for c in contributions:
            running += c.delta_total
            series.append(running / norm)
        return tuple(series)
    raise ValueError(f"unknown cumulative mode {mode!r}; expected 'abs' or 'signed'")


@dataclass(frozen=True)
class ShiftResult:
    """Complete decomposition of one measure over two corpora."""

    measure: str
    labels: tuple[str, str]
    phi1_total: float
    phi2_total: float
    delta_phi: float
    reference_score: float
    contributions: tuple[WordContribution, ...]
    class_sums: Mapping[str, float]
    cumulative_abs: tuple[float, ...]
    cumulative_signed: tuple[float, ...] | None
    corpus_sizes: tuple[int, int]
    parameters: Mapping[str, float | None] = field(default_factory=dict)

    def to_document(self, meta: Mapping[str, object] | None = None) -> dict:
        """Serializable document; extra ``meta`` entries (provenance) are
        merged into the ``meta`` block."""
        doc_meta: dict[str, object] = {
            "measure": self.measure,
            "labels": list(self.labels),
            "reference_score": self.reference_score,
            "parameters": dict(self.parameters),
        }
        if meta:
            doc_meta.update(meta)
        return {
            "meta": doc_meta,
            "totals": {
                "phi1": self.phi1_total,
                "phi2": self.phi2_total,
                "delta": self.delta_phi,
            },
            "class_sums": dict(self.class_sums),
            "contributions": [
                {
                    "word": c.word,
                    "delta": c.delta_total,
                    "freq_component": c.freq_component,
                    "score_component": c.score_component,
                    "class": c.cls.label,
                    "borrowed": c.borrowed,
                }
                for c in self.contributions
            ],
            "cumulative": {
                "abs": list(self.cumulative_abs),
                "signed": None if self.cumulative_signed is None else list(self.cumulative_signed),
            },
            "corpus_sizes": list(self.corpus_sizes),
        }

    @classmethod
    def from_document(cls, doc: Mapping[str, object]) -> "ShiftResult":
        try:
            meta = doc["meta"]
            totals = doc["totals"]
            contributions = tuple(
                WordContribution(
                    word=entry["word"],
                    delta_total=float(entry["delta"]),
                    freq_component=float(entry["freq_component"]),
                    score_component=float(entry["score_component"]),
                    cls=ContributionClass.from_label(entry["class"]),
                    borrowed=bool(entry["borrowed"]),
                )
                for entry in doc["contributions"]
            )
            cumulative_block = doc["cumulative"]
            signed = cumulative_block.get("signed")
            return cls(
                measure=meta["measure"],
                labels=(meta["labels"][0], meta["labels"][1]),
                phi1_total=float(totals["phi1"]),
                phi2_total=float(totals["phi2"]),
                delta_phi=float(totals["delta"]),
                reference_score=float(meta["reference_score"]),
                contributions=contributions,
                class_sums={key: float(value) for key, value in doc["class_sums"].items()},
                cumulative_abs=tuple(float(v) for v in cumulative_block["abs"]),
                cumulative_signed=None if signed is None else tuple(float(v) for v in signed),
                corpus_sizes=(int(doc["corpus_sizes"][0]), int(doc["corpus_sizes"][1])),
                parameters=dict(meta.get("parameters", {})),
            )
        except (KeyError, IndexError, TypeError) as exc:
            raise ValueError(f"malformed shift result document: {exc}") from exc

    def to_tsv(self) -> str:
        """Contribution table, one ranked word per row."""
        lines = ["word\tdelta\tfreq_comp\tscore_comp\tclass\tborrowed"]
        for c in self.contributions:
            lines.append(
                f"{c.word}\t{c.delta_total!r}\t{c.freq_component!r}\t{c.score_component!r}"
                f"\t{c.cls.label}\t{'true' if c.borrowed else 'false'}"
            )
        return "\n".join(lines) + "\n"


def analyze(components: ShiftComponents) -> ShiftResult:
    """Run the full decomposition: contributions, ranking, class sums, and
    cumulative diagnostics."""
    contributions = tuple(rank(decompose(components)))
    phi1_total, phi2_total = components.phi_totals()
    word_total = sum(c.delta_total for c in contributions)
    return ShiftResult(
        measure=components.measure,
        labels=components.labels,
        phi1_total=phi1_total,
        phi2_total=phi2_total,
        delta_phi=phi2_total - phi1_total,
        reference_score=components.reference_score,
        contributions=contributions,
        class_sums=summarize(contributions),
        cumulative_abs=cumulative(contributions, "abs"),
        cumulative_signed=None if word_total == 0.0 else cumulative(contributions, "signed"),
        corpus_sizes=components.corpus_sizes,
        parameters={
            "log_base": components.log_base,
            "alpha": components.alpha,
            "pi1": components.pi1,
            "pi2": components.pi2,
        },
    )
