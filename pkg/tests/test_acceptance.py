"""Exit criteria for the package, one test per criterion.

Each test prints a PASS/FAIL line; the summary hook in conftest.py repeats
them at the end of the run. Tolerances are fixed here and nowhere else.
"""

import hashlib
import json
import random
import time
from datetime import datetime, timedelta

import pytest

from oracles import longest_prefix_tokens, naive_levels
from quakepulse import resources, synth
from quakepulse.corpus import EventConfig, MicroblogPost, write_posts_jsonl
from quakepulse.damage import LEVEL_ORDER, DisasterLevel, DisasterLexicon, compile_matcher
from quakepulse.report import AnalysisSettings, analyze_event, analyze_posts, compare_events, emit_report
from quakepulse.sentiment import label, score_post, train_nb
from quakepulse.textprep import PrepLexicon, tokenize_max_match
from quakepulse.trend import PeakInfo, TrendSeries, bin_hourly, find_peak

pytestmark = pytest.mark.acceptance

ORIGIN = datetime(2020, 7, 12, 6, 38)
TIME_LIMIT_ORACLE_S = 5.0
TIME_LIMIT_ANALYZE_S = 60.0
MAX_DOUBLING_RATIO = 2.5
PROB_TOL = 1e-12
PROPORTION_TOL = 1e-9


@pytest.fixture(scope="module")
def settings():
    return AnalysisSettings(
        prep=resources.demo_preprocessor(),
        matcher=compile_matcher(resources.demo_disaster_lexicon()),
        blocklist=frozenset(synth.WIDE_FELT.places + synth.HIGH_LOSS.places),
        top_k=30,
    )


@pytest.fixture(scope="module")
def model():
    return resources.demo_model()


def verdict(name, ok, detail=""):
    print(f"\n[{'PASS' if ok else 'FAIL'}] {name} {detail}".rstrip())
    assert ok, f"{name}: {detail}"


def test_c1_tokenizer_oracle_equivalence():
    rng = random.Random(1)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(1000):
        alphabet = "abcde"[: rng.randint(1, 5)]
        dictionary = {
            "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 6))) for _ in range(rng.randint(1, 15))
        }
        text = "".join(rng.choice(alphabet + " ") for _ in range(rng.randint(0, 60)))
        if tokenize_max_match(text, PrepLexicon(frozenset(dictionary))) != longest_prefix_tokens(text, dictionary):
            mismatches += 1
    elapsed = time.perf_counter() - start
    verdict(
        "C1 tokenizer == longest-prefix oracle",
        mismatches == 0 and elapsed < TIME_LIMIT_ORACLE_S,
        f"mismatches={mismatches}/1000 time={elapsed:.2f}s",
    )


def test_c2_matcher_oracle_equivalence():
    rng = random.Random(2)
    start = time.perf_counter()
    mismatches = 0
    checked = 0
    for _ in range(50):
        # short keywords over a tiny alphabet force overlaps and keywords nested in others
        lists = {
            lvl: sorted({"".join(rng.choice("abcA") for _ in range(rng.randint(1, 4))) for _ in range(rng.randint(1, 5))})
            for lvl in ("slight", "moderate", "severe")
        }
        lex = DisasterLexicon.from_mapping(lists)
        matcher = compile_matcher(lex)
        items = list(lex.items())
        for _ in range(20):
            text = "".join(rng.choice("abcAB ") for _ in range(rng.randint(0, 40)))
            checked += 1
            if matcher.levels_hit(text) != naive_levels(text, items):
                mismatches += 1
    elapsed = time.perf_counter() - start
    verdict(
        "C2 matcher == naive substring oracle",
        checked == 1000 and mismatches == 0 and elapsed < TIME_LIMIT_ORACLE_S,
        f"mismatches={mismatches}/{checked} time={elapsed:.2f}s",
    )


def test_c3_naive_bayes_correctness():
    m = train_nb([(["good", "good"], "pos"), (["bad"], "neg")], alpha=1.0)
    good, bad = score_post(m, ["good"]), score_post(m, ["bad"])
    ok = (
        abs(good - 9 / 13) <= PROB_TOL
        and abs(bad - 3 / 11) <= PROB_TOL
        and label(0.5).label == "negative"
        and label(0.5 + 1e-9).label == "positive"
    )
    verdict("C3 naive Bayes toy model and threshold", ok, f"p(good)={good!r} p(bad)={bad!r}")


def test_c4_conservation(settings, model):
    rng = random.Random(4)
    failures = []
    for i in range(100):
        cfg = EventConfig(f"c{i}", ORIGIN, ("地震", "quake"), window_hours=rng.randint(1, 48), dedup=rng.random() < 0.8)
        posts = synth.random_corpus(rng, cfg, rng.randint(0, 150))
        r = analyze_posts(posts, cfg, settings, model)
        cr = r.clean_report
        props = [r.levels.proportion(lvl) for lvl in LEVEL_ORDER]
        ok = (
            cr.loaded == len(posts) == cr.retained + cr.dropped
            and r.trend.total == cr.retained
            and [h.total for h in r.sentiment.hours] == list(r.trend.counts)
            and r.levels.total == cr.retained
            and (cr.retained == 0 or abs(sum(props) - 1) <= PROPORTION_TOL)
        )
        if not ok:
            failures.append(i)
    verdict("C4 conservation over 100 corpora", not failures, f"failing corpora={failures}")


def test_c5_priority_rule():
    lex = resources.demo_disaster_lexicon()
    matcher = compile_matcher(lex)
    rng = random.Random(5)
    filler = ["地震", "今天", "the road", "我们", " ", "，", "calm", "学校"]
    wrong = 0
    for _ in range(500):
        parts = [rng.choice(filler) for _ in range(rng.randint(0, 6))]
        for kws in (lex.slight, lex.moderate, lex.severe):
            kw = rng.choice(kws)
            kw = rng.choice((kw, kw.lower(), kw.upper()))
            parts.insert(rng.randint(0, len(parts)), kw)
        if matcher.classify("".join(parts)) is not DisasterLevel.SEVERE:
            wrong += 1
    verdict("C5 severe > moderate > slight priority", wrong == 0, f"misclassified={wrong}/500")


def test_c6_peak_behavior():
    cfg = EventConfig("peak", ORIGIN, ("地震",), window_hours=48)
    rng = random.Random(6)
    volumes = [40, 120] + [max(0, 100 - 8 * h) for h in range(46)]
    posts = [
        MicroblogPost(f"{h}-{k}", "地震", ORIGIN + timedelta(hours=h, minutes=rng.randrange(60)))
        for h, v in enumerate(volumes)
        for k in range(v)
    ]
    peak = find_peak(bin_hourly(posts, cfg))
    ties = [
        find_peak(TrendSeries("t", (5, 9, 9, 2))) == PeakInfo(1, 9),
        find_peak(TrendSeries("t", (7, 7))) == PeakInfo(0, 7),
        find_peak(TrendSeries("t", (0, 0, 3, 1, 3))) == PeakInfo(2, 3),
    ]
    verdict("C6 peak at hour 1, ties to earliest", peak == PeakInfo(1, 120) and all(ties), f"peak={peak}")


def _case_pair(settings, model):
    reports = []
    for prof in (synth.WIDE_FELT, synth.HIGH_LOSS):
        cfg = synth.event_config(prof, ORIGIN)
        reports.append(analyze_posts(synth.event_posts(prof, ORIGIN, seed=2021), cfg, settings, model))
    return compare_events(*reports)


def test_c7_qualitative_case_reproduction(settings, model):
    cmp = _case_pair(settings, model)
    again = _case_pair(settings, model)
    a, b = cmp.a, cmp.b
    ok = (
        cmp.orderings == {"peak_volume": "a", "early_negative_proportion": "b", "severe_share": "b"}
        and a.clean_report.retained > b.clean_report.retained
        and a.peak.hour_index == b.peak.hour_index == 1
        and cmp.to_json() == again.to_json()
    )
    verdict(
        "C7 wide-felt vs high-loss orderings",
        ok,
        f"peak {a.peak_volume} vs {b.peak_volume}; early neg {a.early_negative_proportion:.3f} vs "
        f"{b.early_negative_proportion:.3f}; severe {a.severe_share:.3f} vs {b.severe_share:.3f}",
    )


def _digests(d):
    return {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(d.iterdir())}


def test_c8_determinism(tmp_path, settings, model):
    posts = synth.event_posts(synth.HIGH_LOSS, ORIGIN, seed=8)
    raw = tmp_path / "posts.jsonl"
    write_posts_jsonl(posts, raw)
    cfg = synth.event_config(synth.HIGH_LOSS, ORIGIN)
    digests = []
    for run in ("run1", "run2"):
        report = analyze_event(raw, cfg, settings, model)
        for fmt in ("json", "csv-bundle", "svg-bundle"):
            emit_report(report, fmt, tmp_path / run)
        digests.append(_digests(tmp_path / run))
    verdict("C8 byte-identical artifacts", digests[0] == digests[1] and len(digests[0]) == 9, f"files={len(digests[0])}")


def test_c9_performance(tmp_path, settings, model):
    posts = synth.event_posts(synth.WIDE_FELT, ORIGIN, seed=9, scale=18.8)
    assert len(posts) >= 100_000
    raw = tmp_path / "big.jsonl"
    write_posts_jsonl(posts, raw)
    start = time.perf_counter()
    report = analyze_event(raw, synth.event_config(synth.WIDE_FELT, ORIGIN), settings, model)
    elapsed = time.perf_counter() - start

    texts = [p.text for p in posts[:40_000]]
    matcher = settings.matcher

    def best_of(batch, repeats=3):
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            for t in batch:
                matcher.classify(t)
            times.append(time.perf_counter() - t0)
        return min(times)

    ratio = best_of(texts) / best_of(texts[:20_000])
    verdict(
        "C9 100k-post analysis and linear matcher",
        elapsed < TIME_LIMIT_ANALYZE_S and ratio <= MAX_DOUBLING_RATIO and report.clean_report.loaded == len(posts),
        f"posts={len(posts)} analyze={elapsed:.1f}s doubling_ratio={ratio:.2f}",
    )
