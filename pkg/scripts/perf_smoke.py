"""Time the full pipeline on a large synthetic corpus.

    python scripts/perf_smoke.py --posts 100000
"""

import argparse
import tempfile
import time
from datetime import datetime
from pathlib import Path

from quakepulse import resources, synth
from quakepulse.corpus import write_posts_jsonl
from quakepulse.damage import compile_matcher
from quakepulse.report import AnalysisSettings, analyze_event


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--posts", type=int, default=100_000)
    args = ap.parse_args()

    origin = datetime(2020, 7, 12, 6, 38)
    base = len(synth.event_posts(synth.WIDE_FELT, origin))
    posts = synth.event_posts(synth.WIDE_FELT, origin, scale=args.posts / base)
    settings = AnalysisSettings(
        prep=resources.demo_preprocessor(), matcher=compile_matcher(resources.demo_disaster_lexicon())
    )
    with tempfile.TemporaryDirectory() as tmp:
        raw = Path(tmp) / "posts.jsonl"
        write_posts_jsonl(posts, raw)
        t0 = time.perf_counter()
        report = analyze_event(raw, synth.event_config(synth.WIDE_FELT, origin), settings, resources.demo_model())
        elapsed = time.perf_counter() - t0
    print(f"{len(posts)} posts, retained {report.clean_report.retained}, {elapsed:.2f}s")


if __name__ == "__main__":
    main()
