"""Two-event case study on synthetic corpora, driven through the CLI.

    python scripts/case_study.py --out runs/case_study

Writes a posts file and config per event, runs ``analyze`` on each and
``compare`` on the pair. The corpora mimic a widely felt quake near a
populous region and a more damaging quake in a sparsely populated one.
"""

import argparse
import json
from datetime import datetime
from pathlib import Path

from quakepulse import synth
from quakepulse.cli import main as cli
from quakepulse.corpus import format_timestamp, write_posts_jsonl

EVENTS = {
    "wide_felt": (synth.WIDE_FELT, datetime(2020, 7, 12, 6, 38)),
    "high_loss": (synth.HIGH_LOSS, datetime(2021, 4, 6, 21, 49)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs/case_study")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--scale", type=float, default=1.0)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    for name, (profile, origin) in EVENTS.items():
        write_posts_jsonl(synth.event_posts(profile, origin, seed=args.seed, scale=args.scale), out / f"{name}.jsonl")
        cfg = {
            "event": {
                "event_id": name,
                "origin_time": format_timestamp(origin),
                "window_hours": 48,
                "query_keywords": ["地震", "earthquake"],
            },
            "input": f"{name}.jsonl",
            "blocklist": sorted(set(profile.places) | {"凌晨", "今天", "刚才"}),
            "top_k": 30,
        }
        (out / f"{name}.config.json").write_text(json.dumps(cfg, ensure_ascii=False, indent=2), encoding="utf-8")
        code = cli(["analyze", "--config", str(out / f"{name}.config.json"), "--out", str(out / name)])
        if code:
            raise SystemExit(code)

    raise SystemExit(
        cli(
            [
                "compare",
                "--report-a", str(out / "wide_felt" / "report.json"),
                "--report-b", str(out / "high_loss" / "report.json"),
                "--out", str(out),
            ]
        )
    )


if __name__ == "__main__":
    main()
