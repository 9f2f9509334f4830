import json
import math
import random
from datetime import timedelta

import pytest
from hypothesis import given, strategies as st

from oracles import exact_nb_posterior
from quakepulse import resources
from quakepulse.corpus import MicroblogPost
from quakepulse.errors import ContractError, TrainingError
from quakepulse.sentiment import (
    NEGATIVE,
    POSITIVE,
    SentimentModel,
    label,
    read_labeled_file,
    score_post,
    sentiment_trend,
    train_nb,
)
from quakepulse.trend import bin_hourly

from conftest import ORIGIN

TOY = [(["good", "good"], "pos"), (["bad"], "neg")]
words = st.sampled_from(["good", "bad", "ok", "地震", "平安", "unseen"])


@pytest.fixture
def toy():
    return train_nb(TOY, alpha=1.0)


class TestTrain:
    def test_hand_computed_likelihoods(self, toy):
        lik = {c: {t: math.exp(v) for t, v in toy.log_likelihood[c].items()} for c in (POSITIVE, NEGATIVE)}
        assert lik[POSITIVE]["good"] == pytest.approx(3 / 4, abs=1e-15)
        assert lik[POSITIVE]["bad"] == pytest.approx(1 / 4, abs=1e-15)
        assert lik[NEGATIVE]["good"] == pytest.approx(1 / 3, abs=1e-15)
        assert lik[NEGATIVE]["bad"] == pytest.approx(2 / 3, abs=1e-15)
        assert math.exp(toy.log_prior[POSITIVE]) == pytest.approx(0.5)
        assert toy.class_token_totals == {POSITIVE: 2, NEGATIVE: 1}

    def test_identical_corpora_symmetric(self):
        docs = [(["a", "b"], "pos"), (["a", "b"], "neg")]
        m = train_nb(docs)
        assert m.log_likelihood[POSITIVE] == m.log_likelihood[NEGATIVE]
        for toks in ([], ["a"], ["b", "zzz", "a"]):
            assert score_post(m, toks) == 0.5

    def test_large_alpha_uniform(self):
        m = train_nb([(["a", "a", "a", "b"], "pos"), (["c"], "neg")], alpha=1e6)
        for c in (POSITIVE, NEGATIVE):
            for v in m.log_likelihood[c].values():
                assert math.exp(v) == pytest.approx(1 / 3, abs=1e-4)

    @pytest.mark.parametrize("docs", [[], [(["a"], "pos")], [(["a"], "neg"), (["b"], "neg")]])
    def test_degenerate(self, docs):
        with pytest.raises(TrainingError, match="degenerate"):
            train_nb(docs)

    @pytest.mark.parametrize("alpha", [0, -1, float("nan"), float("inf")])
    def test_bad_alpha(self, alpha):
        with pytest.raises(TrainingError):
            train_nb(TOY, alpha=alpha)

    def test_unknown_label(self):
        with pytest.raises(TrainingError):
            train_nb([(["a"], "neutral")])

    @given(st.lists(st.tuples(st.lists(words, max_size=6), st.sampled_from(["pos", "neg"])), min_size=2), st.floats(0.01, 10))
    def test_distributions_normalized(self, docs, alpha):
        docs += [(["x"], "pos"), (["y"], "neg")]
        m = train_nb(docs, alpha)
        assert sum(math.exp(v) for v in m.log_prior.values()) == pytest.approx(1, abs=1e-9)
        for c in (POSITIVE, NEGATIVE):
            assert sum(math.exp(v) for v in m.log_likelihood[c].values()) == pytest.approx(1, abs=1e-9)


class TestScore:
    def test_good(self, toy):
        assert abs(score_post(toy, ["good"]) - 9 / 13) <= 1e-12

    def test_bad(self, toy):
        assert abs(score_post(toy, ["bad"]) - 3 / 11) <= 1e-12

    def test_no_evidence(self, toy):
        assert score_post(toy, []) == pytest.approx(0.5, abs=1e-15)

    def test_unseen_token_uses_smoothed_mass(self, toy):
        # unseen: pos 1/(2+2)=1/4, neg 1/(1+2)=1/3
        assert score_post(toy, ["zzz"]) == pytest.approx((1 / 4) / (1 / 4 + 1 / 3), abs=1e-12)

    def test_exact_oracle(self):
        rng = random.Random(9)
        vocab = ["a", "b", "c", "d", "e"]
        for _ in range(50):
            docs = [([rng.choice(vocab) for _ in range(rng.randint(0, 5))], rng.choice([POSITIVE, NEGATIVE])) for _ in range(8)]
            docs += [(["a"], POSITIVE), (["b"], NEGATIVE)]
            alpha = rng.choice([0.5, 1, 2])
            m = train_nb(docs, alpha)
            toks = [rng.choice(vocab + ["z"]) for _ in range(rng.randint(0, 8))]
            assert score_post(m, toks) == pytest.approx(float(exact_nb_posterior(docs, toks, alpha)), abs=1e-12)

    @given(st.lists(words, max_size=30), st.randoms())
    def test_order_invariant(self, toks, rnd):
        m = resources.demo_model()
        assert score_post(m, toks) == pytest.approx(score_post(m, rnd.sample(toks, len(toks))), abs=1e-12)

    @given(st.lists(st.tuples(st.lists(words, max_size=6), st.sampled_from(["pos", "neg"])), min_size=1), st.lists(words, max_size=20))
    def test_label_flip_symmetry(self, docs, toks):
        docs += [(["good"], "pos"), (["bad"], "neg")]
        flipped = [(t, "neg" if c == "pos" else "pos") for t, c in docs]
        p = score_post(train_nb(docs), toks)
        q = score_post(train_nb(flipped), toks)
        assert p + q == pytest.approx(1.0, abs=1e-12)
        if p == 0.5:
            assert q == 0.5
        elif abs(p - 0.5) > 1e-9:
            assert label(p).label != label(q).label

    @pytest.mark.parametrize("n", [1, 100, 10_000])
    def test_long_documents_finite(self, toy, n):
        for toks in (["good"] * n, ["bad"] * n, ["zzz"] * n, ["good", "bad"] * (n // 2 + 1)):
            p = score_post(toy, toks)
            assert math.isfinite(p) and 0.0 <= p <= 1.0
        assert score_post(toy, ["good"] * 10_000) == 1.0
        assert score_post(toy, ["bad"] * 10_000) < 1e-300


class TestLabel:
    def test_above_half(self):
        assert label(0.51).label == POSITIVE

    def test_exact_half_negative(self):
        assert label(0.5).label == NEGATIVE
        assert label(0.5 + 1e-9).label == POSITIVE

    def test_zero(self):
        assert label(0.0).label == NEGATIVE
        assert label(1.0).label == POSITIVE

    @pytest.mark.parametrize("p", [-0.01, 1.01, float("nan")])
    def test_out_of_range(self, p):
        with pytest.raises(ContractError):
            label(p)


def test_model_json_roundtrip(toy, tmp_path):
    path = tmp_path / "m.json"
    toy.save(path)
    again = SentimentModel.load(path)
    assert again == toy
    assert path.read_text(encoding="utf-8") == again.to_json()
    assert list(json.loads(path.read_text()).keys()) == sorted(
        ["alpha", "class_token_totals", "log_likelihood", "log_prior", "vocabulary"]
    )


def test_malformed_model(tmp_path):
    with pytest.raises(TrainingError):
        SentimentModel.from_json('{"alpha": 1}')


def test_labeled_file(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text('label,text\npos,平安\nneg,"倒塌, 死亡"\n', encoding="utf-8")
    assert read_labeled_file(p) == [(POSITIVE, "平安"), (NEGATIVE, "倒塌, 死亡")]
    p.write_text("label,text\nmaybe,x\n", encoding="utf-8")
    with pytest.raises(TrainingError):
        read_labeled_file(p)


def test_bundled_model_matches_training_file():
    prep = resources.demo_preprocessor()
    rows = read_labeled_file(resources.TRAINING_SET)
    assert len(rows) >= 200
    retrained = train_nb([(prep.tokens(t), c) for c, t in rows], alpha=1.0)
    assert retrained.to_json() == resources.DEMO_MODEL.read_text(encoding="utf-8")


class TestTrend:
    def _post(self, i, minutes, text):
        return MicroblogPost(str(i), text, ORIGIN + timedelta(minutes=minutes))

    def test_two_and_two(self, event_cfg, toy):
        posts = [self._post(i, 5 * i, t) for i, t in enumerate(["good", "good", "bad", "bad"])]
        tr = sentiment_trend(posts, toy, event_cfg, str.split)
        h0 = tr.hours[0]
        assert (h0.n_positive, h0.n_negative, h0.proportion_negative) == (2, 2, 0.5)
        assert all((h.n_positive, h.n_negative, h.proportion_negative) == (0, 0, None) for h in tr.hours[1:])

    def test_empty(self, event_cfg, toy):
        tr = sentiment_trend([], toy, event_cfg, str.split)
        assert len(tr.hours) == 48
        assert all(h.proportion_negative is None for h in tr.hours)
        assert tr.negative_proportion() is None

    def test_brute_force_oracle(self, event_cfg, toy):
        rng = random.Random(200)
        posts = [
            self._post(i, rng.randrange(48 * 60), " ".join(rng.choice(["good", "bad", "meh"]) for _ in range(rng.randint(0, 4))))
            for i in range(200)
        ]
        tr = sentiment_trend(posts, toy, event_cfg, str.split)
        pos, neg = [0] * 48, [0] * 48
        for p in posts:
            h = int((p.published_at - ORIGIN).total_seconds() // 3600)
            prob = float(exact_nb_posterior(TOY_FULL, p.text.split()))
            (pos if prob > 0.5 else neg)[h] += 1
        assert [h.n_positive for h in tr.hours] == pos
        assert [h.n_negative for h in tr.hours] == neg
        series = bin_hourly(posts, event_cfg)
        assert [h.total for h in tr.hours] == list(series.counts)

    def test_csv(self, event_cfg, toy):
        posts = [self._post(0, 0, "good"), self._post(1, 1, "bad"), self._post(2, 2, "bad")]
        text = sentiment_trend(posts, toy, event_cfg, str.split).to_csv()
        lines = text.splitlines()
        assert lines[0] == "hour,n_pos,n_neg,prop_neg"
        assert lines[1] == f"0,1,2,{2 / 3!r}"
        assert lines[2] == "1,0,0,"
        assert len(lines) == 49


TOY_FULL = [(["good", "good"], POSITIVE), (["bad"], NEGATIVE)]
