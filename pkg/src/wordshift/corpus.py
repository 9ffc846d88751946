"""Corpus ingestion: tokenization, counting, and normalized token distributions.

A corpus enters the pipeline either as raw text (tokenized here) or as a
precomputed count table (one ``token<TAB>count`` row per line), which lets
non-textual categorical data such as occupation counts flow through the
same machinery.
"""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, ParseError

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class TokenizerOptions:
    """Controls for splitting raw text into countable tokens."""

    lowercase: bool = True
    strip_punctuation: bool = True
    ngram_size: int = 1

    def __post_init__(self) -> None:
        if self.ngram_size < 1:
            raise ValueError(f"ngram_size must be >= 1, got {self.ngram_size}")


@dataclass(frozen=True)
class TokenDistribution:
    """A corpus reduced to token counts with a normalized frequency view.

    Tokens with zero count are never stored, so every relative frequency
    is in (0, 1] and the stored frequencies sum to one.
    """

    label: str
    counts: Mapping[str, int]
    total_tokens: int = field(init=False, default=0)

    def __post_init__(self) -> None:
        if not self.counts:
            raise DomainError(f"empty corpus {self.label!r}: a distribution must be normalizable")
        for token, count in self.counts.items():
            if not isinstance(count, int) or count < 1:
                raise ValueError(f"count for token {token!r} must be a positive integer, got {count!r}")
        object.__setattr__(self, "total_tokens", sum(self.counts.values()))

    def probability(self, token: str) -> float:
        """Relative frequency of ``token``; 0.0 if the token is absent."""
        count = self.counts.get(token)
        if count is None:
            return 0.0
        return count / self.total_tokens

    def tokens(self) -> list[str]:
        return sorted(self.counts)

    def without(self, words: Iterable[str]) -> "TokenDistribution":
        """Copy of this distribution with ``words`` removed before renormalization."""
        dropped = set(words)
        kept = {token: count for token, count in self.counts.items() if token not in dropped}
        if not kept:
            raise DomainError(f"excluding {len(dropped)} word(s) empties corpus {self.label!r}")
        return TokenDistribution(self.label, kept)


def _strip_edge_punctuation(token: str) -> str:
    # Trim punctuation only at the edges so contractions and hyphenated
    # words ("i'm", "well-known") survive intact.
    start, end = 0, len(token)
    while start < end and unicodedata.category(token[start]).startswith("P"):
        start += 1
    while end > start and unicodedata.category(token[end - 1]).startswith("P"):
        end -= 1
    return token[start:end]


def tokenize(text: str, options: TokenizerOptions = TokenizerOptions()) -> list[str]:
    """Split ``text`` on whitespace, clean each piece, and window into n-grams.

    Cleaning is lowercasing plus edge-punctuation stripping (both optional);
    tokens that clean down to nothing are dropped. For ``ngram_size`` n > 1
    the cleaned tokens are joined into space-separated sliding windows.
    """
    tokens = text.split()
    if options.lowercase:
        tokens = [token.lower() for token in tokens]
    if options.strip_punctuation:
        tokens = [_strip_edge_punctuation(token) for token in tokens]
    tokens = [token for token in tokens if token]
    n = options.ngram_size
    if n == 1:
        return tokens
    return [" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def build_distribution(tokens: Sequence[str], label: str) -> TokenDistribution:
    """Count token multiplicities into a distribution; rejects empty input."""
    if not tokens:
        raise DomainError(f"empty corpus {label!r}: no tokens to count")
    return TokenDistribution(label, dict(Counter(tokens)))


def load_text(path: str | Path, label: str | None = None,
              options: TokenizerOptions = TokenizerOptions()) -> TokenDistribution:
    """Read a UTF-8 text file and build its token distribution."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return build_distribution(tokenize(text, options), label if label is not None else path.stem)


def load_counts(path: str | Path, label: str | None = None) -> TokenDistribution:
    """Read a ``token<TAB>count`` table into a distribution.

    Lines starting with ``#`` and blank lines are ignored; duplicate tokens
    have their counts summed. Malformed rows and non-positive counts raise
    :class:`ParseError` with the line number.
    """
    path = Path(path)
    counts: Counter[str] = Counter()
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ParseError(
                    f"expected 'token<TAB>count', got {line!r}", path=str(path), line=lineno
                )
            token, count_text = parts[0].strip(), parts[1].strip()
            if not token:
                raise ParseError("empty token", path=str(path), line=lineno)
            try:
                count = int(count_text)
            except ValueError:
                raise ParseError(
                    f"count {count_text!r} is not an integer", path=str(path), line=lineno
                ) from None
            if count <= 0:
                raise ParseError(f"count must be positive, got {count}", path=str(path), line=lineno)
            counts[token] += count
    if not counts:
        raise DomainError(f"count table {path} holds no rows")
    return TokenDistribution(label if label is not None else path.stem, dict(counts))


def union_vocabulary(d1: TokenDistribution, d2: TokenDistribution) -> list[str]:
    """Lexicographically ordered union of both token sets."""
    return sorted(d1.counts.keys() | d2.counts.keys())


def mixture(d1: TokenDistribution, d2: TokenDistribution,
            pi1: float, pi2: float) -> dict[str, float]:
    """Convex mixture ``pi1*p1 + pi2*p2`` over the union vocabulary."""
    validate_weights(pi1, pi2)
    return {
        token: pi1 * d1.probability(token) + pi2 * d2.probability(token)
        for token in union_vocabulary(d1, d2)
    }


def validate_weights(pi1: float, pi2: float) -> None:
    if pi1 < 0.0 or pi2 < 0.0:
        raise ValueError(f"mixture weights must be non-negative, got ({pi1}, {pi2})")
    if abs(pi1 + pi2 - 1.0) > NORMALIZATION_TOL:
        raise ValueError(f"mixture weights must sum to 1, got {pi1} + {pi2} = {pi1 + pi2}")
