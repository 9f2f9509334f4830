"""Loading exported microblog files and applying the cleaning rules.

Two ingestion formats are supported:

* canonical JSONL, one object per line with keys ``id``, ``text``,
  ``created_at`` and optionally ``author``;
* delimited text (CSV/TSV) with a header row and a user-supplied mapping from
  the canonical field names to the export's column names.

Timestamps are naive minute-precision local times, ``YYYY-MM-DD HH:MM``.
"""

from __future__ import annotations

import csv
import json
import logging
import re
from dataclasses import asdict, dataclass, field
from datetime import datetime, timedelta
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from quakepulse.errors import ConfigError, CorpusError

log = logging.getLogger(__name__)

TIME_FORMAT = "%Y-%m-%d %H:%M"
_TIME_RE = re.compile(r"\d{4}-\d{2}-\d{2} \d{2}:\d{2}")

CANONICAL_FIELDS = ("id", "text", "created_at", "author")


def parse_timestamp(value: str) -> datetime:
    """Parse the canonical ``YYYY-MM-DD HH:MM`` form, nothing looser."""
    if not isinstance(value, str) or not _TIME_RE.fullmatch(value):
        raise ValueError(f"timestamp not in YYYY-MM-DD HH:MM form: {value!r}")
    return datetime.strptime(value, TIME_FORMAT)


def format_timestamp(ts: datetime) -> str:
    return ts.strftime(TIME_FORMAT)


@dataclass(frozen=True)
class MicroblogPost:
    id: str
    text: str
    published_at: datetime
    author: str | None = None

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "text": self.text,
            "created_at": format_timestamp(self.published_at),
            "author": self.author,
        }


@dataclass(frozen=True)
class EventConfig:
    event_id: str
    origin_time: datetime
    query_keywords: tuple[str, ...]
    window_hours: int = 48
    dedup: bool = True
    zone_label: str = "local"

    def __post_init__(self):
        if isinstance(self.window_hours, bool) or not isinstance(self.window_hours, int):
            raise ConfigError(f"window_hours must be an integer, got {self.window_hours!r}")
        if self.window_hours < 1:
            raise ConfigError(f"window_hours must be >= 1, got {self.window_hours}")
        kws = tuple(self.query_keywords)
        if not kws:
            raise ConfigError("query_keywords must be non-empty")
        if any(not isinstance(k, str) or not k for k in kws):
            raise ConfigError("query keywords must be non-empty strings")
        object.__setattr__(self, "query_keywords", kws)

    @property
    def window_end(self) -> datetime:
        return self.origin_time + timedelta(hours=self.window_hours)

    def in_window(self, ts: datetime) -> bool:
        return self.origin_time <= ts < self.window_end

    @classmethod
    def from_dict(cls, d: Mapping) -> "EventConfig":
        try:
            origin = d["origin_time"]
            if isinstance(origin, str):
                origin = parse_timestamp(origin)
            return cls(
                event_id=str(d["event_id"]),
                origin_time=origin,
                query_keywords=tuple(d["query_keywords"]),
                window_hours=d.get("window_hours", 48),
                dedup=bool(d.get("dedup", True)),
                zone_label=str(d.get("zone_label", "local")),
            )
        except KeyError as e:
            raise ConfigError(f"event config missing key {e.args[0]!r}") from None
        except ValueError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"bad event config: {e}") from None

    def to_dict(self) -> dict:
        return {
            "event_id": self.event_id,
            "origin_time": format_timestamp(self.origin_time),
            "window_hours": self.window_hours,
            "query_keywords": list(self.query_keywords),
            "dedup": self.dedup,
            "zone_label": self.zone_label,
        }


@dataclass
class CleanReport:
    loaded: int = 0
    dropped_no_keyword: int = 0
    dropped_out_of_window: int = 0
    dropped_duplicate: int = 0
    retained: int = 0

    @property
    def dropped(self) -> int:
        return self.dropped_no_keyword + self.dropped_out_of_window + self.dropped_duplicate

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class FormatSpec:
    """How to read an export file.

    ``columns`` maps canonical names (id, text, created_at, author) to the
    header names used by a delimited export. Unmapped canonical names are
    looked up under their own name.
    """

    kind: str = "jsonl"
    columns: Mapping[str, str] = field(default_factory=dict)
    delimiter: str = ","

    def __post_init__(self):
        if self.kind not in ("jsonl", "delimited"):
            raise ConfigError(f"unknown format kind {self.kind!r} (expected jsonl or delimited)")
        unknown = set(self.columns) - set(CANONICAL_FIELDS)
        if unknown:
            raise ConfigError(f"unknown canonical fields in column mapping: {sorted(unknown)}")
        if len(self.delimiter) != 1:
            raise ConfigError("delimiter must be a single character")

    @classmethod
    def from_dict(cls, d: Mapping | None) -> "FormatSpec":
        if not d:
            return cls()
        return cls(
            kind=d.get("kind", "jsonl"),
            columns=dict(d.get("columns", {})),
            delimiter=d.get("delimiter", ","),
        )

    def column(self, name: str) -> str:
        return self.columns.get(name, name)


@dataclass
class LoadResult:
    posts: list[MicroblogPost]
    skipped: int = 0


def _raw_records(path: Path, fmt: FormatSpec) -> Iterator[dict | None]:
    """Yield canonical-keyed dicts, or None for a record that cannot be parsed."""
    with open(path, encoding="utf-8", newline="") as fh:
        if fmt.kind == "jsonl":
            for line in fh:
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError:
                    yield None
                    continue
                yield obj if isinstance(obj, dict) else None
        else:
            reader = csv.DictReader(fh, delimiter=fmt.delimiter)
            for row in reader:
                yield {name: row.get(fmt.column(name)) for name in CANONICAL_FIELDS}


def _to_post(rec: dict | None) -> MicroblogPost | None:
    if rec is None:
        return None
    pid, text, created = rec.get("id"), rec.get("text"), rec.get("created_at")
    if isinstance(pid, int) and not isinstance(pid, bool):
        pid = str(pid)
    if not isinstance(pid, str) or not pid.strip():
        return None
    if not isinstance(text, str) or not text.strip():
        return None
    try:
        ts = parse_timestamp(created)
    except ValueError:
        return None
    author = rec.get("author")
    if author is not None and not isinstance(author, str):
        author = str(author)
    return MicroblogPost(id=pid.strip(), text=text, published_at=ts, author=author or None)


def load_posts_with_stats(path: str | Path, fmt: FormatSpec | None = None) -> LoadResult:
    """Load an export, skipping (and counting) malformed records.

    A duplicate post id is treated as a corrupt export and raises.
    """
    fmt = fmt or FormatSpec()
    path = Path(path)
    posts: list[MicroblogPost] = []
    seen: set[str] = set()
    skipped = 0
    try:
        for rec in _raw_records(path, fmt):
            post = _to_post(rec)
            if post is None:
                skipped += 1
                continue
            if post.id in seen:
                raise CorpusError(f"{path}: duplicate post id {post.id!r}")
            seen.add(post.id)
            posts.append(post)
    except (OSError, UnicodeDecodeError, csv.Error) as e:
        raise CorpusError(f"cannot read {path}: {e}") from e
    if skipped:
        log.info("%s: skipped %d malformed record(s)", path, skipped)
    return LoadResult(posts, skipped)


def load_posts(path: str | Path, fmt: FormatSpec | None = None) -> list[MicroblogPost]:
    return load_posts_with_stats(path, fmt).posts


def write_posts_jsonl(posts: Iterable[MicroblogPost], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for p in posts:
            fh.write(json.dumps(p.to_record(), ensure_ascii=False, sort_keys=True) + "\n")


def contains_keyword(text: str, keywords: Iterable[str]) -> bool:
    # lower() only changes cased scripts, so CJK is compared exactly
    low = text.lower()
    return any(k.lower() in low for k in keywords)


def clean_corpus(
    posts: list[MicroblogPost], cfg: EventConfig
) -> tuple[list[MicroblogPost], CleanReport]:
    """Keep in-window posts that mention a query keyword, minus verbatim reposts.

    Rules are applied in order keyword -> window -> duplicate, and each
    dropped post is charged to the first rule it fails. Among posts sharing
    (author, text) the earliest survives; ties go to input order.
    """
    report = CleanReport(loaded=len(posts))
    candidates: list[tuple[int, MicroblogPost]] = []
    for i, p in enumerate(posts):
        if not contains_keyword(p.text, cfg.query_keywords):
            report.dropped_no_keyword += 1
        elif not cfg.in_window(p.published_at):
            report.dropped_out_of_window += 1
        else:
            candidates.append((i, p))

    candidates.sort(key=lambda ip: (ip[1].published_at, ip[0]))

    retained: list[MicroblogPost] = []
    seen: set[tuple[str | None, str]] = set()
    for _, p in candidates:
        if cfg.dedup:
            key = (p.author, p.text)
            if key in seen:
                report.dropped_duplicate += 1
                continue
            seen.add(key)
        retained.append(p)

    report.retained = len(retained)
    return retained, report
