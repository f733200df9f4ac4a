"""Unigram frequency statistics and frequency-matched replacement words.

"Similar frequency" is formalised as rank proximity: candidates for a
word are the vocabulary entries within `window` positions of it in the
descending-count ranking.  Rank windows behave uniformly across the
Zipfian head and tail, unlike count ratios, which degenerate for hapax
words.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class OOVError(KeyError):
    """Word not present in the frequency table."""


@dataclass(frozen=True)
class ReplacementPolicy:
    """Candidates sit within `window` rank positions of the original word;
    the original itself is always excluded."""

    window: int = 10

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")


@dataclass
class FrequencyTable:
    """Unigram counts plus the rank ordering derived from them.

    rank_order sorts by descending count with lexicographic tie-break, so
    the table is a pure function of the counts: corpus order never
    matters.
    """

    entries: dict[str, int]
    rank_order: list[str] = field(init=False, repr=False)
    rank_of: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.rank_order = sorted(self.entries, key=lambda w: (-self.entries[w], w))
        self.rank_of = {w: i for i, w in enumerate(self.rank_order)}

    def __len__(self) -> int:
        return len(self.entries)

    def total_tokens(self) -> int:
        return sum(self.entries.values())

    def save_tsv(self, path: str) -> None:
        """Persist as `word<TAB>count` lines in rank order, UTF-8."""
        with open(path, "w", encoding="utf-8") as out:
            for word in self.rank_order:
                out.write(f"{word}\t{self.entries[word]}\n")

    @classmethod
    def load_tsv(cls, path: str) -> "FrequencyTable":
        entries: dict[str, int] = {}
        with open(path, encoding="utf-8") as stream:
            for lineno, raw in enumerate(stream, start=1):
                line = raw.rstrip("\n").rstrip("\r")
                if not line:
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise ValueError(f"{path}:{lineno}: expected 'word<TAB>count'")
                try:
                    count = int(parts[1])
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: non-integer count {parts[1]!r}") from None
                entries[parts[0]] = count
        if not entries:
            raise ValueError(f"{path}: empty frequency table")
        return cls(entries=entries)


def build_frequency_table(
    corpus: Iterable[Sequence[str]], forbidden: frozenset[str] = frozenset()
) -> FrequencyTable:
    """Count unigrams over an iterable of token sequences.

    Words in `forbidden` (reserved placeholders) must not occur in the
    corpus; finding one aborts with an error.
    """
    counts: Counter[str] = Counter()
    for sentence in corpus:
        counts.update(sentence)
    if not counts:
        raise ValueError("cannot build a frequency table from an empty corpus")
    for word in forbidden:
        if word in counts:
            raise ValueError(
                f"reserved token {word!r} occurs in the corpus ({counts[word]} times)"
            )
    return FrequencyTable(entries=dict(counts))


def replacement_candidates(
    table: FrequencyTable, word: str, policy: ReplacementPolicy
) -> list[str]:
    """Vocabulary words whose rank distance from `word` is <= window.

    The word itself is excluded.  Ordered by ascending rank distance,
    ties broken lexicographically.  Raises OOVError for unknown words.
    """
    rank = table.rank_of.get(word)
    if rank is None:
        raise OOVError(word)
    lo = max(0, rank - policy.window)
    hi = min(len(table.rank_order) - 1, rank + policy.window)
    candidates = [w for w in table.rank_order[lo : hi + 1] if w != word]
    candidates.sort(key=lambda w: (abs(table.rank_of[w] - rank), w))
    return candidates


def sample_replacement(candidates: Sequence[str], rng: random.Random) -> str:
    """Uniform choice over the candidates; consumes exactly one rng draw."""
    if not candidates:
        raise ValueError("no replacement candidates to sample from")
    return candidates[rng.randrange(len(candidates))]
