"""Independent brute-force evaluations of each comparison measure.

These deliberately avoid the package's shift-form encoding: every function
works directly on probability (or count) mappings and evaluates the
defining sum of its measure, so tests can check the decomposition pipeline
against values computed by a separate route.
"""

from __future__ import annotations

import math
import random

from wordshift import TokenDistribution


def probabilities(dist: TokenDistribution) -> dict[str, float]:
    return {token: count / dist.total_tokens for token, count in dist.counts.items()}


def entropy(p: dict[str, float], base: float = 2.0) -> float:
    return sum(v * math.log(1.0 / v, base) for v in p.values() if v > 0.0)


def shannon_delta(p1: dict[str, float], p2: dict[str, float], base: float = 2.0) -> float:
    return entropy(p2, base) - entropy(p1, base)


def tsallis_entropy(p: dict[str, float], alpha: float) -> float:
    return (sum(v ** alpha for v in p.values() if v > 0.0) - 1.0) / (1.0 - alpha)


def tsallis_delta(p1: dict[str, float], p2: dict[str, float], alpha: float) -> float:
    return tsallis_entropy(p2, alpha) - tsallis_entropy(p1, alpha)


def kld(p_reference: dict[str, float], p_comparison: dict[str, float], base: float = 2.0) -> float:
    total = 0.0
    for word, q in p_comparison.items():
        if q > 0.0:
            total += q * math.log(q / p_reference[word], base)
    return total


def mixture(p1: dict[str, float], p2: dict[str, float], pi1: float, pi2: float) -> dict[str, float]:
    vocab = set(p1) | set(p2)
    return {w: pi1 * p1.get(w, 0.0) + pi2 * p2.get(w, 0.0) for w in vocab}


def jsd(p1: dict[str, float], p2: dict[str, float],
        pi1: float = 0.5, pi2: float = 0.5, base: float = 2.0) -> float:
    m = mixture(p1, p2, pi1, pi2)
    return entropy(m, base) - pi1 * entropy(p1, base) - pi2 * entropy(p2, base)


def jsd_generalized(p1: dict[str, float], p2: dict[str, float],
                    pi1: float, pi2: float, alpha: float) -> float:
    m = mixture(p1, p2, pi1, pi2)
    return (
        tsallis_entropy(m, alpha)
        - pi1 * tsallis_entropy(p1, alpha)
        - pi2 * tsallis_entropy(p2, alpha)
    )


def dictionary_delta(counts1: dict[str, int], counts2: dict[str, int],
                     phi1: dict[str, float], phi2: dict[str, float]) -> float:
    """Difference of score averages over the scored sub-vocabulary."""
    scored = set(phi1)
    total1 = sum(counts1.get(w, 0) for w in scored)
    total2 = sum(counts2.get(w, 0) for w in scored)
    avg1 = sum(counts1.get(w, 0) * phi1[w] for w in scored) / total1
    avg2 = sum(counts2.get(w, 0) * phi2[w] for w in scored) / total2
    return avg2 - avg1


def relative_frequency_delta(p1: dict[str, float], p2: dict[str, float]) -> float:
    vocab = set(p1) | set(p2)
    return sum(p2.get(w, 0.0) - p1.get(w, 0.0) for w in vocab)


def random_distribution(rng: random.Random, vocab: list[str], label: str,
                        min_words: int = 1) -> TokenDistribution:
    size = rng.randint(max(min_words, 1), len(vocab))
    words = rng.sample(vocab, size)
    return TokenDistribution(label, {w: rng.randint(1, 50) for w in words})


def random_pair(rng: random.Random, max_vocab: int = 200,
                shared_support: bool = False) -> tuple[TokenDistribution, TokenDistribution]:
    """Random distribution pair over a vocabulary of 2..max_vocab words."""
    n = rng.randint(2, max_vocab)
    vocab = [f"w{i:03d}" for i in range(n)]
    if shared_support:
        d1 = TokenDistribution("one", {w: rng.randint(1, 50) for w in vocab})
        d2 = TokenDistribution("two", {w: rng.randint(1, 50) for w in vocab})
        return d1, d2
    return (
        random_distribution(rng, vocab, "one"),
        random_distribution(rng, vocab, "two"),
    )


def random_subset_pair(rng: random.Random, max_vocab: int = 200) -> tuple[TokenDistribution, TokenDistribution]:
    """Pair where the second support is a subset of the first (valid for KLD)."""
    n = rng.randint(2, max_vocab)
    vocab = [f"w{i:03d}" for i in range(n)]
    d1 = TokenDistribution("reference", {w: rng.randint(1, 50) for w in vocab})
    subset = rng.sample(vocab, rng.randint(1, n))
    d2 = TokenDistribution("comparison", {w: rng.randint(1, 50) for w in subset})
    return d1, d2
