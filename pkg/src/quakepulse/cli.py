"""Command-line interface.

Every pipeline command reads one JSON config (event definition, input file,
resource paths); flags override the matching config keys. Relative paths in
the config resolve against the config file's directory.

Exit codes: 0 success, 1 usage/config error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from quakepulse import resources
from quakepulse.corpus import (
    EventConfig,
    FormatSpec,
    MicroblogPost,
    clean_corpus,
    load_posts_with_stats,
    write_posts_jsonl,
)
from quakepulse.damage import DisasterLexicon, compile_matcher, level_distribution
from quakepulse.errors import ConfigError, DataError
from quakepulse.freq import count_terms, hot_words_csv, screen_terms, top_k
from quakepulse.report import (
    FORMATS,
    AnalysisSettings,
    ImpactReport,
    analyze_event,
    compare_events,
    emit_comparison,
    emit_report,
    write_files,
)
from quakepulse.sentiment import SentimentModel, read_labeled_file, sentiment_trend, train_nb
from quakepulse.textprep import PrepLexicon, Preprocessor, read_term_file, strip_symbols
from quakepulse.trend import bin_hourly, find_peak, trend_csv

log = logging.getLogger("quakepulse")

EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Config:
    """Config file contents with flag overrides applied."""

    def __init__(self, data: dict, base: Path):
        self.data = data
        self.base = base

    @classmethod
    def load(cls, path: str | None) -> "Config":
        if path is None:
            return cls({}, Path.cwd())
        p = Path(path)
        try:
            data = json.loads(p.read_text(encoding="utf-8"))
        except OSError as e:
            raise ConfigError(f"cannot read config {p}: {e.strerror or e}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"config {p} is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"config {p} must hold a JSON object")
        return cls(data, p.resolve().parent)

    def path(self, key: str, default: Path | None = None) -> Path | None:
        v = self.data.get(key)
        if v is None:
            return default
        p = Path(v)
        return p if p.is_absolute() else self.base / p

    def event(self, args) -> EventConfig:
        ev = dict(self.data.get("event") or {})
        if getattr(args, "window_hours", None) is not None:
            ev["window_hours"] = args.window_hours
        if not ev:
            raise ConfigError("config has no 'event' section")
        return EventConfig.from_dict(ev)

    def preprocessor(self) -> Preprocessor:
        dic = self.path("dictionary")
        stops = self.path("stopwords")
        if dic is None and stops is None:
            lex = resources.demo_prep_lexicon()
        else:
            lex = PrepLexicon.from_files(dic or resources.DICTIONARY, stops or resources.STOPWORDS)
        return Preprocessor(lex, lowercase=bool(self.data.get("lowercase", True)))

    def matcher(self):
        lex_path = self.path("lexicon")
        lex = DisasterLexicon.from_file(lex_path) if lex_path else resources.demo_disaster_lexicon()
        return compile_matcher(lex, self.data.get("exclusions", ()))

    def blocklist(self) -> frozenset[str]:
        b = self.data.get("blocklist", [])
        if isinstance(b, str):
            return frozenset(read_term_file(self.path("blocklist")))
        return frozenset(b)

    def model(self) -> SentimentModel:
        return SentimentModel.load(self.path("model", resources.DEMO_MODEL))

    def settings(self, args) -> AnalysisSettings:
        return AnalysisSettings(
            prep=self.preprocessor(),
            matcher=self.matcher(),
            fmt=FormatSpec.from_dict(self.data.get("format")),
            blocklist=self.blocklist(),
            top_k=args.top_k if getattr(args, "top_k", None) else int(self.data.get("top_k", 50)),
            early_hours=int(self.data.get("early_hours", 2)),
        )


def _apply_overrides(cfg: Config, args) -> None:
    for key in ("dictionary", "stopwords", "lexicon", "model"):
        v = getattr(args, key, None)
        if v is not None:
            cfg.data[key] = str(Path(v).resolve())


def _input_path(cfg: Config, args) -> Path:
    if getattr(args, "input", None):
        return Path(args.input)
    p = cfg.path("input")
    if p is None:
        raise ConfigError("no input file: pass --input or set 'input' in the config")
    return p


def _cleaned(cfg: Config, args) -> tuple[list[MicroblogPost], EventConfig, dict]:
    ev = cfg.event(args)
    loaded = load_posts_with_stats(_input_path(cfg, args), FormatSpec.from_dict(cfg.data.get("format")))
    kept, rep = clean_corpus(loaded.posts, ev)
    log.info("loaded %d (skipped %d), retained %d", rep.loaded, loaded.skipped, rep.retained)
    return kept, ev, rep.to_dict()


def cmd_clean(cfg: Config, args) -> None:
    kept, _, rep = _cleaned(cfg, args)
    out = Path(args.out)
    write_files({"clean_report.json": json.dumps(rep, sort_keys=True) + "\n"}, out)
    write_posts_jsonl(kept, out / "cleaned.jsonl")
    print(json.dumps(rep, sort_keys=True))


def cmd_prep(cfg: Config, args) -> None:
    kept, _, _ = _cleaned(cfg, args)
    prep = cfg.preprocessor()
    lines = [json.dumps({"id": p.id, "tokens": prep.tokens(p.text)}, ensure_ascii=False) for p in kept]
    write_files({"tokens.jsonl": "".join(line + "\n" for line in lines)}, args.out)


def cmd_freq(cfg: Config, args) -> None:
    kept, _, _ = _cleaned(cfg, args)
    settings = cfg.settings(args)
    table = screen_terms(count_terms(settings.prep.tokens(p.text) for p in kept), settings.blocklist)
    write_files({"hot_words.csv": hot_words_csv(top_k(table, settings.top_k))}, args.out)


def cmd_trend(cfg: Config, args) -> None:
    kept, ev, _ = _cleaned(cfg, args)
    series = bin_hourly(kept, ev)
    write_files({"trend.csv": trend_csv(series)}, args.out)
    if series.total:
        peak = find_peak(series)
        print(f"peak hour {peak.hour_index}, volume {peak.volume}")
    else:
        print("no posts in window")


def cmd_sentiment_train(cfg: Config, args) -> None:
    rows = read_labeled_file(args.train)
    prep = cfg.preprocessor()
    model = train_nb([(prep.tokens(text), lab) for lab, text in rows], alpha=args.alpha)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    model.save(out)
    print(f"trained on {len(rows)} documents, vocabulary {len(model.vocabulary)} -> {out}")


def cmd_sentiment(cfg: Config, args) -> None:
    kept, ev, _ = _cleaned(cfg, args)
    trend = sentiment_trend(kept, cfg.model(), ev, cfg.preprocessor().tokens)
    write_files({"sentiment_trend.csv": trend.to_csv()}, args.out)


def cmd_damage(cfg: Config, args) -> None:
    kept, _, _ = _cleaned(cfg, args)
    matcher = cfg.matcher()
    dist = level_distribution(matcher.classify(strip_symbols(p.text)) for p in kept)
    write_files({"levels.csv": dist.to_csv()}, args.out)


def cmd_analyze(cfg: Config, args) -> None:
    report = analyze_event(_input_path(cfg, args), cfg.event(args), cfg.settings(args), cfg.model())
    fmts = FORMATS if args.format == "all" else (args.format,)
    for fmt in fmts:
        emit_report(report, fmt, args.out)
    print(f"{report.event_id}: retained {report.clean_report.retained}, peak {report.peak_volume}")


def cmd_compare(cfg: Config, args) -> None:
    cmp = compare_events(ImpactReport.load(args.report_a), ImpactReport.load(args.report_b))
    emit_comparison(cmp, args.out)
    print(json.dumps(cmp.orderings, sort_keys=True))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quakepulse", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pipeline_cmd(name, func, help, out_help="output directory"):
        p = sub.add_parser(name, help=help)
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--input", help="posts export (overrides config 'input')")
        p.add_argument("--out", required=True, help=out_help)
        p.add_argument("--window-hours", type=int)
        p.add_argument("--dictionary")
        p.add_argument("--stopwords")
        p.set_defaults(func=func)
        return p

    pipeline_cmd("clean", cmd_clean, "filter posts by keyword, window and reposts")
    pipeline_cmd("prep", cmd_prep, "segment cleaned posts into tokens")
    pipeline_cmd("freq", cmd_freq, "hot-word table").add_argument("--top-k", type=int)
    pipeline_cmd("trend", cmd_trend, "hourly volume series and peak")
    pipeline_cmd("sentiment", cmd_sentiment, "hourly sentiment evolution").add_argument("--model")
    pipeline_cmd("damage", cmd_damage, "disaster-level distribution").add_argument("--lexicon")
    p = pipeline_cmd("analyze", cmd_analyze, "full per-event report")
    p.add_argument("--format", choices=FORMATS + ("all",), default="all")
    p.add_argument("--top-k", type=int)
    p.add_argument("--model")
    p.add_argument("--lexicon")

    p = sub.add_parser("sentiment-train", help="train a naive-Bayes polarity model")
    p.add_argument("--train", required=True, help="CSV with columns label,text")
    p.add_argument("--out", required=True, help="model JSON path")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--config", help="optional config for dictionary/stopwords")
    p.add_argument("--dictionary")
    p.add_argument("--stopwords")
    p.set_defaults(func=cmd_sentiment_train)

    p = sub.add_parser("compare", help="compare two report.json files")
    p.add_argument("--report-a", required=True)
    p.add_argument("--report-b", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = Config.load(getattr(args, "config", None))
        _apply_overrides(cfg, args)
        args.func(cfg, args)
    except ConfigError as e:
        print(f"quakepulse: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, OSError) as e:
        print(f"quakepulse: data error: {e}", file=sys.stderr)
        return EXIT_DATA
    return 0


if __name__ == "__main__":
    sys.exit(main())
