"""Multinomial naive-Bayes polarity model and per-hour sentiment evolution.

Training uses add-alpha (Laplace) smoothing over the union vocabulary::

    P(t | c) = (count(t, c) + alpha) / (tokens(c) + alpha * |V|)

A token never seen in training gets ``alpha / (tokens(c) + alpha * |V|)``
per occurrence instead of being ignored. Scores are combined in log space
and turned into P(positive) with a two-class softmax.
"""

from __future__ import annotations

import csv
import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from quakepulse.corpus import EventConfig, MicroblogPost
from quakepulse.errors import ContractError, TrainingError
from quakepulse.trend import hour_index

POSITIVE = "positive"
NEGATIVE = "negative"
CLASSES = (POSITIVE, NEGATIVE)

_LABEL_ALIASES = {"pos": POSITIVE, "positive": POSITIVE, "neg": NEGATIVE, "negative": NEGATIVE}


@dataclass(frozen=True)
class SentimentModel:
    alpha: float
    vocabulary: frozenset[str]
    log_prior: dict[str, float]
    log_likelihood: dict[str, dict[str, float]]
    class_token_totals: dict[str, int]

    def unseen_log_likelihood(self, cls: str) -> float:
        denom = self.class_token_totals[cls] + self.alpha * len(self.vocabulary)
        return math.log(self.alpha / denom)

    def to_json(self) -> str:
        doc = {
            "alpha": self.alpha,
            "class_token_totals": self.class_token_totals,
            "log_likelihood": self.log_likelihood,
            "log_prior": self.log_prior,
            "vocabulary": sorted(self.vocabulary),
        }
        return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SentimentModel":
        try:
            doc = json.loads(text)
            model = cls(
                alpha=float(doc["alpha"]),
                vocabulary=frozenset(doc["vocabulary"]),
                log_prior={c: float(doc["log_prior"][c]) for c in CLASSES},
                log_likelihood={
                    c: {t: float(v) for t, v in doc["log_likelihood"][c].items()} for c in CLASSES
                },
                class_token_totals={c: int(doc["class_token_totals"][c]) for c in CLASSES},
            )
        except (KeyError, TypeError, ValueError) as e:
            raise TrainingError(f"malformed model file: {e!r}") from e
        if model.alpha <= 0:
            raise TrainingError("model alpha must be > 0")
        return model

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "SentimentModel":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def train_nb(labeled_docs: Iterable[tuple[Sequence[str], str]], alpha: float = 1.0) -> SentimentModel:
    if not alpha > 0 or math.isinf(alpha):
        raise TrainingError(f"alpha must be a finite positive number, got {alpha}")
    doc_counts: Counter[str] = Counter()
    tok_counts = {c: Counter() for c in CLASSES}
    for tokens, cls in labeled_docs:
        cls = _LABEL_ALIASES.get(cls, cls)
        if cls not in CLASSES:
            raise TrainingError(f"unknown class label {cls!r}")
        doc_counts[cls] += 1
        tok_counts[cls].update(tokens)
    if any(doc_counts[c] == 0 for c in CLASSES):
        raise TrainingError("degenerate training set: every class needs at least one document")

    vocab = frozenset(tok_counts[POSITIVE]) | frozenset(tok_counts[NEGATIVE])
    n_docs = sum(doc_counts.values())
    totals = {c: sum(tok_counts[c].values()) for c in CLASSES}
    log_prior = {c: math.log(doc_counts[c] / n_docs) for c in CLASSES}
    log_lik = {}
    for c in CLASSES:
        denom = totals[c] + alpha * len(vocab)
        log_lik[c] = {t: math.log((tok_counts[c][t] + alpha) / denom) for t in sorted(vocab)}
    return SentimentModel(alpha, vocab, log_prior, log_lik, totals)


def class_log_scores(model: SentimentModel, tokens: Iterable[str]) -> dict[str, float]:
    scores = dict(model.log_prior)
    counts = Counter(tokens)
    for c in CLASSES:
        ll = model.log_likelihood[c]
        unseen = model.unseen_log_likelihood(c)
        scores[c] += sum(n * ll.get(t, unseen) for t, n in counts.items())
    return scores


def score_post(model: SentimentModel, tokens: Iterable[str]) -> float:
    """P(positive | tokens)."""
    s = class_log_scores(model, tokens)
    # logistic of the log-odds, written to avoid overflow either way
    d = s[NEGATIVE] - s[POSITIVE]
    if d >= 0:
        e = math.exp(-d)
        return e / (1.0 + e)
    return 1.0 / (1.0 + math.exp(d))


@dataclass(frozen=True)
class PolarityLabel:
    label: str
    p_positive: float


def label(p_positive: float) -> PolarityLabel:
    """Strictly above one half is positive; exactly 0.5 reads as negative."""
    if not 0.0 <= p_positive <= 1.0:
        raise ContractError(f"probability out of [0, 1]: {p_positive}")
    return PolarityLabel(POSITIVE if p_positive > 0.5 else NEGATIVE, p_positive)


@dataclass(frozen=True)
class HourSentiment:
    hour_index: int
    n_positive: int
    n_negative: int

    @property
    def total(self) -> int:
        return self.n_positive + self.n_negative

    @property
    def proportion_negative(self) -> float | None:
        return self.n_negative / self.total if self.total else None


@dataclass(frozen=True)
class SentimentTrend:
    event_id: str
    hours: tuple[HourSentiment, ...]

    @property
    def n_positive(self) -> int:
        return sum(h.n_positive for h in self.hours)

    @property
    def n_negative(self) -> int:
        return sum(h.n_negative for h in self.hours)

    def negative_proportion(self, first_hours: int | None = None) -> float | None:
        """Share of negative posts overall, or within the first ``first_hours`` bins."""
        rows = self.hours if first_hours is None else self.hours[:first_hours]
        pos = sum(h.n_positive for h in rows)
        neg = sum(h.n_negative for h in rows)
        return neg / (pos + neg) if pos + neg else None

    def to_csv(self) -> str:
        lines = ["hour,n_pos,n_neg,prop_neg"]
        for h in self.hours:
            p = h.proportion_negative
            lines.append(f"{h.hour_index},{h.n_positive},{h.n_negative},{'' if p is None else repr(p)}")
        return "\n".join(lines) + "\n"


def trend_from_labels(
    posts: Sequence[MicroblogPost], labels: Sequence[PolarityLabel], cfg: EventConfig
) -> SentimentTrend:
    pos = [0] * cfg.window_hours
    neg = [0] * cfg.window_hours
    for p, lab in zip(posts, labels, strict=True):
        h = hour_index(p.published_at, cfg)
        if lab.label == POSITIVE:
            pos[h] += 1
        else:
            neg[h] += 1
    rows = tuple(HourSentiment(h, pos[h], neg[h]) for h in range(cfg.window_hours))
    return SentimentTrend(cfg.event_id, rows)


def sentiment_trend(
    posts: Sequence[MicroblogPost],
    model: SentimentModel,
    cfg: EventConfig,
    tokenize: Callable[[str], list[str]],
) -> SentimentTrend:
    """Score, label and bin every post. ``tokenize`` is normally ``Preprocessor.tokens``."""
    labels = [label(score_post(model, tokenize(p.text))) for p in posts]
    return trend_from_labels(posts, labels, cfg)


def read_labeled_file(path: str | Path, delimiter: str = ",") -> list[tuple[str, str]]:
    """Rows of ``label,text`` with a header row; label is pos or neg."""
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh, delimiter=delimiter)
        if reader.fieldnames is None or not {"label", "text"} <= set(reader.fieldnames):
            raise TrainingError(f"{path}: expected header with columns label,text")
        for n, row in enumerate(reader, start=2):
            lab = _LABEL_ALIASES.get((row["label"] or "").strip().lower())
            if lab is None:
                raise TrainingError(f"{path}:{n}: label must be pos or neg, got {row['label']!r}")
            rows.append((lab, row["text"] or ""))
    return rows
