"""Word-score lexicons: loading, stop-lens filtering, and per-corpus resolution.

A lexicon maps words to real-valued scores on some scale (e.g. a 1-9
happiness scale centered at 5, or a zero-centered polarity scale). Two
lexicons may score the two corpora independently; words covered by only
one side borrow the other side's score and are flagged so downstream
consumers can mark them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple

from .errors import ParseError


@dataclass(frozen=True)
class ScoreLexicon:
    """A named word -> score mapping with scale metadata."""

    name: str
    scores: Mapping[str, float]
    center: float
    scale_min: float | None = None
    scale_max: float | None = None

    def __post_init__(self) -> None:
        for word, score in self.scores.items():
            if not math.isfinite(score):
                raise ValueError(f"lexicon {self.name!r}: non-finite score for {word!r}")
            if self.scale_min is not None and score < self.scale_min:
                raise ValueError(
                    f"lexicon {self.name!r}: score {score} for {word!r} below scale_min {self.scale_min}"
                )
            if self.scale_max is not None and score > self.scale_max:
                raise ValueError(
                    f"lexicon {self.name!r}: score {score} for {word!r} above scale_max {self.scale_max}"
                )

    def observed_bounds(self) -> tuple[float, float]:
        values = self.scores.values()
        return min(values), max(values)


@dataclass(frozen=True)
class StopLens:
    """Score window whose words are excluded from an analysis.

    Boundary scores are removed by default (the conservative reading);
    set ``inclusive=False`` to keep words scoring exactly at a bound.
    """

    low: float
    high: float
    inclusive: bool = True

    def __post_init__(self) -> None:
        if self.low > self.high:
            raise ValueError(f"stop lens low {self.low} exceeds high {self.high}")

    def covers(self, score: float) -> bool:
        if self.inclusive:
            return self.low <= score <= self.high
        return self.low < score < self.high


class ResolvedScore(NamedTuple):
    """One vocabulary word's pair of per-corpus scores.

    ``borrowed1``/``borrowed2`` record that the score was missing from the
    corresponding lexicon and copied from the other side.
    """

    word: str
    phi1: float
    phi2: float
    borrowed1: bool = False
    borrowed2: bool = False


def load_lexicon(path: str | Path, center: float, name: str | None = None,
                 scale_min: float | None = None, scale_max: float | None = None) -> ScoreLexicon:
    """Read a ``word<TAB>score`` file into a :class:`ScoreLexicon`.

    ``#`` comment lines and blank lines are ignored. Duplicate words are a
    hard error rather than last-wins: silently ambiguous scores would
    corrupt every downstream average.
    """
    path = Path(path)
    scores: dict[str, float] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ParseError(
                    f"expected 'word<TAB>score', got {line!r}", path=str(path), line=lineno
                )
            word, score_text = parts[0].strip(), parts[1].strip()
            if not word:
                raise ParseError("empty word", path=str(path), line=lineno)
            try:
                score = float(score_text)
            except ValueError:
                raise ParseError(
                    f"score {score_text!r} is not a number", path=str(path), line=lineno
                ) from None
            if not math.isfinite(score):
                raise ParseError(f"score for {word!r} is not finite", path=str(path), line=lineno)
            if word in scores:
                raise ParseError(f"duplicate word {word!r}", path=str(path), line=lineno)
            scores[word] = score
    if not scores:
        raise ParseError("lexicon holds no entries", path=str(path))
    if scale_min is None or scale_max is None:
        observed_min, observed_max = min(scores.values()), max(scores.values())
        scale_min = observed_min if scale_min is None else scale_min
        scale_max = observed_max if scale_max is None else scale_max
    return ScoreLexicon(
        name=name if name is not None else path.stem,
        scores=scores,
        center=center,
        scale_min=scale_min,
        scale_max=scale_max,
    )


def apply_stop_lens(lex: ScoreLexicon, lens: StopLens) -> ScoreLexicon:
    """Drop every word whose score falls inside the window, bounds included.

    Scale metadata is kept as declared; the lens narrows the usable word
    set, not the scale.
    """
    kept = {word: score for word, score in lex.scores.items() if not lens.covers(score)}
    return ScoreLexicon(
        name=lex.name,
        scores=kept,
        center=lex.center,
        scale_min=lex.scale_min,
        scale_max=lex.scale_max,
    )


def resolve_scores(vocab: Iterable[str], lex1: ScoreLexicon, lex2: ScoreLexicon,
                   policy: str = "borrow") -> tuple[ResolvedScore, ...]:
    """Assign each vocabulary word its pair of per-corpus scores.

    Words in neither lexicon are dropped (the analysis vocabulary is the
    lexicon-covered subset). With the default ``borrow`` policy a word
    missing from one lexicon copies the other side's score, flagged as
    borrowed; ``drop`` instead keeps only words present in both lexicons.
    """
    if policy not in ("borrow", "drop"):
        raise ValueError(f"unknown missing-score policy {policy!r}")
    resolved: list[ResolvedScore] = []
    for word in sorted(vocab):
        score1 = lex1.scores.get(word)
        score2 = lex2.scores.get(word)
        if score1 is None and score2 is None:
            continue
        if score1 is None:
            if policy == "drop":
                continue
            resolved.append(ResolvedScore(word, phi1=score2, phi2=score2, borrowed1=True))
        elif score2 is None:
            if policy == "drop":
                continue
            resolved.append(ResolvedScore(word, phi1=score1, phi2=score1, borrowed2=True))
        else:
            resolved.append(ResolvedScore(word, phi1=score1, phi2=score2))
    return tuple(resolved)
