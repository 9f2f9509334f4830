"""Regenerate the bundled demo training set and polarity model.

    python scripts/make_demo_data.py

Both outputs are deterministic; re-running leaves them byte-identical.
"""

import csv

from quakepulse import resources
from quakepulse.sentiment import read_labeled_file, train_nb
from quakepulse.synth import training_rows


def main():
    with open(resources.TRAINING_SET, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label", "text"])
        w.writerows(training_rows())

    prep = resources.demo_preprocessor()
    rows = read_labeled_file(resources.TRAINING_SET)
    model = train_nb([(prep.tokens(text), lab) for lab, text in rows], alpha=1.0)
    model.save(resources.DEMO_MODEL)
    print(f"{len(rows)} training rows, vocabulary {len(model.vocabulary)}")


if __name__ == "__main__":
    main()
