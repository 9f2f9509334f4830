"""Hourly public-opinion volume after an event."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Iterable

from quakepulse.corpus import EventConfig, MicroblogPost
from quakepulse.errors import ContractError, EmptyCorpusError

HOUR = timedelta(hours=1)


def hour_index(ts: datetime, cfg: EventConfig) -> int:
    """Origin-aligned bin of a timestamp; raises if it falls outside the window."""
    if not cfg.in_window(ts):
        raise ContractError(
            f"post at {ts:%Y-%m-%d %H:%M} lies outside the window of event {cfg.event_id!r}; "
            "clean the corpus first"
        )
    return (ts - cfg.origin_time) // HOUR


@dataclass(frozen=True)
class TrendSeries:
    event_id: str
    counts: tuple[int, ...]

    @property
    def window_hours(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class PeakInfo:
    hour_index: int
    volume: int


def bin_hourly(posts: Iterable[MicroblogPost], cfg: EventConfig) -> TrendSeries:
    counts = [0] * cfg.window_hours
    for p in posts:
        counts[hour_index(p.published_at, cfg)] += 1
    return TrendSeries(cfg.event_id, tuple(counts))


def find_peak(series: TrendSeries) -> PeakInfo:
    best = 0
    for h, c in enumerate(series.counts):
        if c > series.counts[best]:
            best = h
    if not series.counts or series.counts[best] == 0:
        raise EmptyCorpusError("empty corpus: no posts in any hourly bin")
    return PeakInfo(best, series.counts[best])


def trend_csv(series: TrendSeries) -> str:
    lines = ["hour,count"]
    lines += [f"{h},{c}" for h, c in enumerate(series.counts)]
    return "\n".join(lines) + "\n"
