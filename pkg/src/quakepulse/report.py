"""Per-event pipeline, two-event comparison and artifact emission."""

from __future__ import annotations

import json
import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from quakepulse import svg
from quakepulse.corpus import (
    CleanReport,
    EventConfig,
    FormatSpec,
    MicroblogPost,
    clean_corpus,
    load_posts_with_stats,
)
from quakepulse.damage import (
    LEVEL_ORDER,
    DisasterLevel,
    LevelDistribution,
    LevelMatcher,
    level_distribution,
)
from quakepulse.errors import ConfigError, DataError, EmptyCorpusError, QuakeError, StageError
from quakepulse.freq import HotWord, count_terms, hot_words_csv, screen_terms, top_k
from quakepulse.sentiment import (
    HourSentiment,
    SentimentModel,
    SentimentTrend,
    label,
    score_post,
    trend_from_labels,
)
from quakepulse.textprep import Preprocessor, strip_symbols
from quakepulse.trend import PeakInfo, TrendSeries, bin_hourly, find_peak, trend_csv

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
FORMATS = ("json", "csv-bundle", "svg-bundle")


@dataclass(frozen=True)
class AnalysisSettings:
    """Everything besides the event config and model that an analysis needs."""

    prep: Preprocessor
    matcher: LevelMatcher
    fmt: FormatSpec = field(default_factory=FormatSpec)
    blocklist: frozenset[str] = frozenset()
    top_k: int = 50
    early_hours: int = 2

    def __post_init__(self):
        if self.top_k < 1:
            raise ConfigError("top_k must be >= 1")
        if self.early_hours < 1:
            raise ConfigError("early_hours must be >= 1")


@dataclass(frozen=True)
class ImpactReport:
    event: EventConfig
    load_skipped: int
    clean_report: CleanReport
    hot_words: list[HotWord]
    trend: TrendSeries
    peak: PeakInfo | None
    sentiment: SentimentTrend
    levels: LevelDistribution
    early_hours: int

    @property
    def event_id(self) -> str:
        return self.event.event_id

    @property
    def early_negative_proportion(self) -> float | None:
        return self.sentiment.negative_proportion(self.early_hours)

    @property
    def peak_volume(self) -> int:
        return self.peak.volume if self.peak else 0

    @property
    def severe_share(self) -> float | None:
        return self.levels.proportion(DisasterLevel.SEVERE)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "event": self.event.to_dict(),
            "load": {"skipped_malformed": self.load_skipped},
            "clean_report": self.clean_report.to_dict(),
            "hot_words": [{"term": w.term, "count": w.count, "weight": w.weight} for w in self.hot_words],
            "trend": {"bin_minutes": 60, "counts": list(self.trend.counts)},
            "peak": None if self.peak is None else {"hour_index": self.peak.hour_index, "volume": self.peak.volume},
            "sentiment_trend": [
                {"hour": h.hour_index, "n_pos": h.n_positive, "n_neg": h.n_negative, "prop_neg": h.proportion_negative}
                for h in self.sentiment.hours
            ],
            "sentiment_overall": {
                "n_pos": self.sentiment.n_positive,
                "n_neg": self.sentiment.n_negative,
                "prop_neg": self.sentiment.negative_proportion(),
            },
            "early_window_hours": self.early_hours,
            "early_negative_proportion": self.early_negative_proportion,
            "level_distribution": {
                "total": self.levels.total,
                "levels": [{"level": n, "count": c, "proportion": p} for n, c, p in self.levels.to_rows()],
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "ImpactReport":
        try:
            if d.get("schema_version") != SCHEMA_VERSION:
                raise DataError(f"unsupported report schema_version {d.get('schema_version')!r}")
            event = EventConfig.from_dict(d["event"])
            peak = d["peak"]
            return cls(
                event=event,
                load_skipped=int(d["load"]["skipped_malformed"]),
                clean_report=CleanReport(**d["clean_report"]),
                hot_words=[HotWord(w["term"], int(w["count"]), float(w["weight"])) for w in d["hot_words"]],
                trend=TrendSeries(event.event_id, tuple(int(c) for c in d["trend"]["counts"])),
                peak=None if peak is None else PeakInfo(int(peak["hour_index"]), int(peak["volume"])),
                sentiment=SentimentTrend(
                    event.event_id,
                    tuple(HourSentiment(int(r["hour"]), int(r["n_pos"]), int(r["n_neg"])) for r in d["sentiment_trend"]),
                ),
                levels=LevelDistribution(
                    {DisasterLevel(r["level"]): int(r["count"]) for r in d["level_distribution"]["levels"]}
                ),
                early_hours=int(d["early_window_hours"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise DataError(f"malformed report document: {e!r}") from e

    @classmethod
    def load(cls, path: str | Path) -> "ImpactReport":
        try:
            return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError) as e:
            raise DataError(f"cannot read report {path}: {e}") from e


@contextmanager
def _stage(name: str) -> Iterator[None]:
    try:
        yield
    except StageError:
        raise
    except QuakeError as e:
        raise StageError(name, e) from e


def analyze_posts(
    posts: list[MicroblogPost],
    cfg: EventConfig,
    settings: AnalysisSettings,
    model: SentimentModel,
    load_skipped: int = 0,
) -> ImpactReport:
    with _stage("clean"):
        kept, clean_rep = clean_corpus(posts, cfg)
    with _stage("prep"):
        token_lists = [settings.prep.tokens(p.text) for p in kept]
    with _stage("freq"):
        table = screen_terms(count_terms(token_lists), settings.blocklist)
        hot = top_k(table, settings.top_k)
    with _stage("trend"):
        series = bin_hourly(kept, cfg)
        try:
            peak = find_peak(series)
        except EmptyCorpusError:
            peak = None
    with _stage("sentiment"):
        labels = [label(score_post(model, toks)) for toks in token_lists]
        senti = trend_from_labels(kept, labels, cfg)
    with _stage("damage"):
        levels = level_distribution(
            settings.matcher.classify(strip_symbols(p.text, settings.prep.rules)) for p in kept
        )
    return ImpactReport(
        event=cfg,
        load_skipped=load_skipped,
        clean_report=clean_rep,
        hot_words=hot,
        trend=series,
        peak=peak,
        sentiment=senti,
        levels=levels,
        early_hours=settings.early_hours,
    )


def analyze_event(
    raw_path: str | Path, cfg: EventConfig, settings: AnalysisSettings, model: SentimentModel
) -> ImpactReport:
    """load -> clean -> prep -> freq / trend / sentiment / damage."""
    with _stage("load"):
        loaded = load_posts_with_stats(raw_path, settings.fmt)
    return analyze_posts(loaded.posts, cfg, settings, model, loaded.skipped)


def _order(a: float | None, b: float | None) -> str:
    if a is None or b is None:
        return "undefined"
    if a > b:
        return "a"
    if b > a:
        return "b"
    return "equal"


@dataclass(frozen=True)
class ComparisonReport:
    a: ImpactReport
    b: ImpactReport

    @property
    def orderings(self) -> dict[str, str]:
        return {
            "peak_volume": _order(self.a.peak_volume, self.b.peak_volume),
            "early_negative_proportion": _order(
                self.a.early_negative_proportion, self.b.early_negative_proportion
            ),
            "severe_share": _order(self.a.severe_share, self.b.severe_share),
        }

    def to_dict(self) -> dict:
        def summary(r: ImpactReport) -> dict:
            return {
                "event_id": r.event_id,
                "peak_volume": r.peak_volume,
                "early_negative_proportion": r.early_negative_proportion,
                "severe_share": r.severe_share,
            }

        return {
            "schema_version": SCHEMA_VERSION,
            "a": summary(self.a),
            "b": summary(self.b),
            "greater": self.orderings,
            "reports": {"a": self.a.to_dict(), "b": self.b.to_dict()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def compare_events(a: ImpactReport, b: ImpactReport) -> ComparisonReport:
    return ComparisonReport(a, b)


def _bundle(report: ImpactReport, fmt: str) -> dict[str, str]:
    if fmt == "json":
        return {"report.json": report.to_json()}
    if fmt == "csv-bundle":
        return {
            "clean_report.json": json.dumps(report.clean_report.to_dict(), sort_keys=True) + "\n",
            "hot_words.csv": hot_words_csv(report.hot_words),
            "trend.csv": trend_csv(report.trend),
            "sentiment_trend.csv": report.sentiment.to_csv(),
            "levels.csv": report.levels.to_csv(),
        }
    if fmt == "svg-bundle":
        hours = report.sentiment.hours
        return {
            "trend.svg": svg.line_chart({"count": report.trend.counts}, f"{report.event_id} hourly volume"),
            "sentiment_trend.svg": svg.line_chart(
                {"positive": [h.n_positive for h in hours], "negative": [h.n_negative for h in hours]},
                f"{report.event_id} sentiment",
            ),
            "levels.svg": svg.bar_chart(
                [(lvl.value, report.levels.proportion(lvl)) for lvl in LEVEL_ORDER],
                f"{report.event_id} disaster levels",
            ),
        }
    raise ConfigError(f"unknown output format {fmt!r}; expected one of {', '.join(FORMATS)}")


def write_files(files: dict[str, str], out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    written = []
    try:
        out.mkdir(parents=True, exist_ok=True)
        for name in sorted(files):
            path = out / name
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(files[name])
            written.append(path)
    except OSError as e:
        raise DataError(f"cannot write {getattr(e, 'filename', None) or out}: {e.strerror or e}") from e
    return written


def emit_report(report: ImpactReport, fmt: str, out_dir: str | Path) -> list[Path]:
    return write_files(_bundle(report, fmt), out_dir)


def emit_comparison(cmp: ComparisonReport, out_dir: str | Path) -> list[Path]:
    return write_files({"comparison.json": cmp.to_json()}, out_dir)
