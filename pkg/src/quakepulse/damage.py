"""Keyword-based disaster-level classification.

A post is ``severe`` if it contains any severe keyword, otherwise
``moderate`` if it contains a moderate one, otherwise ``slight`` if it
contains a slight one, otherwise ``unclassified``. Matching is on the
symbol-stripped text as raw substrings; Latin letters are case-folded,
everything else is compared exactly.
"""

from __future__ import annotations

import csv
import enum
import io
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from quakepulse.errors import ConfigError
from quakepulse.matcher import AhoCorasick


class DisasterLevel(enum.Enum):
    SEVERE = "severe"
    MODERATE = "moderate"
    SLIGHT = "slight"
    UNCLASSIFIED = "unclassified"

    @property
    def rank(self) -> int:
        return _RANK[self]


_RANK = {
    DisasterLevel.UNCLASSIFIED: 0,
    DisasterLevel.SLIGHT: 1,
    DisasterLevel.MODERATE: 2,
    DisasterLevel.SEVERE: 3,
}
KEYWORD_LEVELS = (DisasterLevel.SLIGHT, DisasterLevel.MODERATE, DisasterLevel.SEVERE)
# report order
LEVEL_ORDER = (
    DisasterLevel.SEVERE,
    DisasterLevel.MODERATE,
    DisasterLevel.SLIGHT,
    DisasterLevel.UNCLASSIFIED,
)


@dataclass(frozen=True)
class DisasterLexicon:
    slight: tuple[str, ...]
    moderate: tuple[str, ...]
    severe: tuple[str, ...]

    def __post_init__(self):
        for lvl in KEYWORD_LEVELS:
            kws = tuple(getattr(self, lvl.value))
            if not kws:
                raise ConfigError(f"{lvl.value} keyword list is empty")
            if any(not k for k in kws):
                raise ConfigError(f"{lvl.value} keyword list contains an empty keyword")
            object.__setattr__(self, lvl.value, kws)

    def items(self) -> Iterable[tuple[str, DisasterLevel]]:
        for lvl in KEYWORD_LEVELS:
            for kw in getattr(self, lvl.value):
                yield kw, lvl

    @classmethod
    def from_mapping(cls, m: Mapping[str, Iterable[str]]) -> "DisasterLexicon":
        return cls(*(tuple(m.get(lvl.value, ())) for lvl in KEYWORD_LEVELS))

    @classmethod
    def from_file(cls, path: str | Path) -> "DisasterLexicon":
        """CSV with header ``level,keyword``; '#' lines are comments."""
        lists: dict[str, list[str]] = {lvl.value: [] for lvl in KEYWORD_LEVELS}
        with open(path, encoding="utf-8", newline="") as fh:
            lines = (ln for ln in fh if not ln.lstrip().startswith("#"))
            reader = csv.DictReader(lines)
            if reader.fieldnames is None or not {"level", "keyword"} <= set(reader.fieldnames):
                raise ConfigError(f"{path}: expected header with columns level,keyword")
            for row in reader:
                lvl = (row["level"] or "").strip().lower()
                if lvl not in lists:
                    raise ConfigError(f"{path}: unknown level {row['level']!r}")
                lists[lvl].append((row["keyword"] or "").strip())
        return cls.from_mapping(lists)


class LevelMatcher:
    """Compiled lexicon: reports which levels have a keyword in a text."""

    def __init__(self, lexicon: DisasterLexicon, exclusions: Iterable[str] = ()):
        self.lexicon = lexicon
        self.exclusions = tuple(exclusions)
        if any(not k for k in self.exclusions):
            raise ConfigError("exclusion keywords must be non-empty")
        pats = [(kw.lower(), lvl) for kw, lvl in lexicon.items()]
        pats += [(kw.lower(), None) for kw in self.exclusions]
        self._ac = AhoCorasick(pats)

    def _tags(self, text: str) -> set:
        return self._ac.tags_in(text.lower())

    def levels_hit(self, text: str) -> set[DisasterLevel]:
        tags = self._tags(text)
        tags.discard(None)
        return tags

    def classify(self, text: str) -> DisasterLevel:
        tags = self._tags(text)
        if None in tags:
            # excluded posts (e.g. general quake-safety advice) stay unclassified
            return DisasterLevel.UNCLASSIFIED
        return _resolve(tags)


def _resolve(levels: set[DisasterLevel]) -> DisasterLevel:
    for lvl in (DisasterLevel.SEVERE, DisasterLevel.MODERATE, DisasterLevel.SLIGHT):
        if lvl in levels:
            return lvl
    return DisasterLevel.UNCLASSIFIED


def compile_matcher(lexicon: DisasterLexicon, exclusions: Iterable[str] = ()) -> LevelMatcher:
    return LevelMatcher(lexicon, exclusions)


def classify_level(text: str, matcher: LevelMatcher) -> DisasterLevel:
    return matcher.classify(text)


@dataclass(frozen=True)
class LevelDistribution:
    counts: Mapping[DisasterLevel, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def proportion(self, level: DisasterLevel) -> float | None:
        return self.counts[level] / self.total if self.total else None

    def to_rows(self) -> list[tuple[str, int, float | None]]:
        return [(lvl.value, self.counts[lvl], self.proportion(lvl)) for lvl in LEVEL_ORDER]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["level", "count", "proportion"])
        for name, n, p in self.to_rows():
            w.writerow([name, n, "" if p is None else repr(p)])
        return buf.getvalue()


def level_distribution(levels: Iterable[DisasterLevel]) -> LevelDistribution:
    c = Counter(levels)
    return LevelDistribution({lvl: c.get(lvl, 0) for lvl in LEVEL_ORDER})
