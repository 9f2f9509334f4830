"""Locations of the bundled demo resources."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from quakepulse.damage import DisasterLexicon
from quakepulse.sentiment import SentimentModel
from quakepulse.textprep import PrepLexicon, Preprocessor

DATA_DIR = Path(__file__).parent / "data"
DICTIONARY = DATA_DIR / "dictionary.txt"
STOPWORDS = DATA_DIR / "stopwords.txt"
DISASTER_LEXICON = DATA_DIR / "disaster_lexicon.csv"
TRAINING_SET = DATA_DIR / "demo_training.csv"
DEMO_MODEL = DATA_DIR / "demo_model.json"


@lru_cache(maxsize=None)
def demo_prep_lexicon() -> PrepLexicon:
    return PrepLexicon.from_files(DICTIONARY, STOPWORDS)


def demo_preprocessor() -> Preprocessor:
    return Preprocessor(demo_prep_lexicon())


@lru_cache(maxsize=None)
def demo_disaster_lexicon() -> DisasterLexicon:
    return DisasterLexicon.from_file(DISASTER_LEXICON)


@lru_cache(maxsize=None)
def demo_model() -> SentimentModel:
    return SentimentModel.load(DEMO_MODEL)
