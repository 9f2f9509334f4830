"""Hot-word counting, spatio-temporal screening and ranking."""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from quakepulse.errors import ContractError


@dataclass(frozen=True)
class FrequencyTable:
    counts: Mapping[str, int] = field(default_factory=dict)
    total_tokens: int = 0

    def __post_init__(self):
        object.__setattr__(self, "counts", dict(self.counts))

    def __len__(self):
        return len(self.counts)

    def merge(self, other: "FrequencyTable") -> "FrequencyTable":
        """Combine tables built from disjoint partitions of a corpus."""
        merged = Counter(self.counts)
        merged.update(other.counts)
        return FrequencyTable(merged, self.total_tokens + other.total_tokens)


def count_terms(token_lists: Iterable[Iterable[str]]) -> FrequencyTable:
    counts: Counter[str] = Counter()
    total = 0
    for tokens in token_lists:
        tokens = list(tokens)
        counts.update(tokens)
        total += len(tokens)
    return FrequencyTable(counts, total)


def screen_terms(table: FrequencyTable, blocklist: Iterable[str]) -> FrequencyTable:
    """Drop place/time words. ``total_tokens`` still describes the unscreened corpus."""
    block = set(blocklist)
    if "" in block:
        raise ContractError("blocklist terms must be non-empty")
    kept = {t: c for t, c in table.counts.items() if t not in block}
    return FrequencyTable(kept, table.total_tokens)


@dataclass(frozen=True)
class HotWord:
    term: str
    count: int
    weight: float


def top_k(table: FrequencyTable, k: int) -> list[HotWord]:
    """Highest counts first, ties in code-point order; weight = count / max count."""
    if k < 1:
        raise ContractError(f"k must be >= 1, got {k}")
    ranked = sorted(table.counts.items(), key=lambda tc: (-tc[1], tc[0]))[:k]
    if not ranked:
        return []
    peak = ranked[0][1]
    return [HotWord(t, c, c / peak) for t, c in ranked]


def hot_words_csv(words: list[HotWord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["term", "count", "weight"])
    for hw in words:
        w.writerow([hw.term, hw.count, repr(hw.weight)])
    return buf.getvalue()
