"""Synthetic microblog corpora for tests, demos and the bundled training set.

Real event corpora are not redistributable, so the case-study fixtures are
built from phrase pools with a seeded RNG. Two event profiles are provided:

* ``wide_felt`` - a quake felt across a populous region: large volume,
  mostly mild shaking reports, calm sentiment;
* ``high_loss`` - a quake in a less populated area with real damage: lower
  volume, a high negative share early on and many severe-damage terms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from datetime import datetime, timedelta

from quakepulse.corpus import EventConfig, MicroblogPost

POSITIVE_PHRASES = (
    "大家都平安",
    "一切安好",
    "没有人员伤亡",
    "学生们有序疏散",
    "老师非常冷静",
    "救援队已经到达现场",
    "感谢消防员",
    "志愿者加油",
    "祈福平安",
    "家里的猫睡得很熟",
    "物资已经送到灾区",
    "感动",
    "致敬救援英雄",
    "道路已经恢复通行",
    "学校已经复课",
    "团结一心",
    "希望早日重建",
    "没事 放心",
    "同学们很镇定",
    "温暖 感谢",
)

# negative phrases grouped by the disaster level their keywords trigger
NEGATIVE_GENERIC = (
    "太害怕了",
    "吓死了",
    "心疼",
    "好难过",
    "一夜失眠",
    "恐慌",
    "担心家人",
    "吓醒了",
    "崩溃",
    "紧张",
)
NEGATIVE_SLIGHT = (
    "床一直摇晃",
    "吊灯晃动",
    "感觉到轻微晃动",
    "道路受阻",
    "车辆绕行",
    "高速禁止通行",
    "有人被困电梯",
)
NEGATIVE_MODERATE = (
    "震感明显",
    "墙体开裂",
    "房屋受损",
    "有人受伤",
    "落石砸中车辆",
    "吓得头晕",
    "有人被掩埋",
)
NEGATIVE_SEVERE = (
    "房屋倒塌",
    "省道断裂",
    "山体滑坡",
    "造成人员死亡",
    "不幸遇难",
    "震感剧烈",
    "有生命危险",
)

NOISE_PHRASES = ("今天天气很好", "周末去成都", "新闻 视频 直播", "早上 上班 交通")


@dataclass(frozen=True)
class EventProfile:
    name: str
    places: tuple[str, ...]
    peak: int  # posts in hour 1
    decay: float  # hourly volume ratio after the peak
    early_negative: float  # negative share in hours 0-1
    late_negative: float  # negative share approached later on
    severity_mix: tuple[float, float, float, float]  # generic, slight, moderate, severe

    def hourly_volume(self, window_hours: int) -> list[int]:
        vols = []
        for h in range(window_hours):
            if h == 0:
                v = self.peak * 0.6
            else:
                v = self.peak * self.decay ** (h - 1)
            vols.append(max(1, int(round(v))))
        return vols

    def negative_share(self, h: int) -> float:
        if h < 2:
            return self.early_negative
        w = min(1.0, (h - 2) / 12)
        return self.early_negative + (self.late_negative - self.early_negative) * w


WIDE_FELT = EventProfile(
    name="wide_felt",
    places=("唐山", "古冶", "北京", "天津", "河北"),
    peak=900,
    decay=0.78,
    early_negative=0.35,
    late_negative=0.15,
    severity_mix=(0.45, 0.45, 0.08, 0.02),
)

HIGH_LOSS = EventProfile(
    name="high_loss",
    places=("宜宾", "兴文", "兴文县", "四川", "成都"),
    peak=300,
    decay=0.82,
    early_negative=0.75,
    late_negative=0.40,
    severity_mix=(0.25, 0.15, 0.25, 0.35),
)


def _opener(rng: random.Random, place: str) -> str:
    return rng.choice(
        (
            f"{place}地震了",
            "刚才地震",
            f"{place}发生5.1级地震",
            "地震",
            f"凌晨{place}地震",
            f"{place}这次地震",
        )
    )


def positive_text(rng: random.Random, place: str) -> str:
    body = rng.sample(POSITIVE_PHRASES, k=rng.randint(1, 3))
    return "，".join([_opener(rng, place), *body]) + rng.choice(("", "！", "。", " 🙏", " #地震#"))


def negative_text(rng: random.Random, place: str, mix: tuple[float, float, float, float]) -> str:
    pools = (NEGATIVE_GENERIC, NEGATIVE_SLIGHT, NEGATIVE_MODERATE, NEGATIVE_SEVERE)
    pool = rng.choices(pools, weights=mix)[0]
    body = [rng.choice(pool)]
    if rng.random() < 0.5:
        body.append(rng.choice(NEGATIVE_GENERIC))
    return "，".join([_opener(rng, place), *body]) + rng.choice(("", "！！", "。", " 😭", " http://t.cn/A6x"))


def training_rows(n: int = 200, seed: int = 7) -> list[tuple[str, str]]:
    """Balanced (label, text) rows for the demo polarity model."""
    rng = random.Random(seed)
    places = WIDE_FELT.places + HIGH_LOSS.places
    rows = []
    for i in range(n):
        place = rng.choice(places)
        if i % 2 == 0:
            rows.append(("pos", positive_text(rng, place)))
        else:
            mix = (0.4, 0.2, 0.2, 0.2)
            rows.append(("neg", negative_text(rng, place, mix)))
    return rows


def event_config(profile: EventProfile, origin: datetime, window_hours: int = 48) -> EventConfig:
    return EventConfig(
        event_id=profile.name,
        origin_time=origin,
        query_keywords=("地震", "earthquake"),
        window_hours=window_hours,
    )


def event_posts(
    profile: EventProfile,
    origin: datetime,
    window_hours: int = 48,
    seed: int = 0,
    scale: float = 1.0,
    noise: bool = True,
) -> list[MicroblogPost]:
    """Posts shaped by ``profile``; with ``noise`` adds off-topic, late and reposted items."""
    rng = random.Random(f"{profile.name}:{seed}")
    posts: list[MicroblogPost] = []

    def add(text: str, ts: datetime, author: str) -> None:
        posts.append(MicroblogPost(f"{profile.name}-{len(posts)}", text, ts, author))

    for h, vol in enumerate(profile.hourly_volume(window_hours)):
        vol = max(1, int(round(vol * scale)))
        for _ in range(vol):
            ts = origin + timedelta(hours=h, minutes=rng.randrange(60))
            place = rng.choice(profile.places)
            if rng.random() < profile.negative_share(h):
                text = negative_text(rng, place, profile.severity_mix)
            else:
                text = positive_text(rng, place)
            add(text, ts, f"u{rng.randrange(10**6)}")

    if noise:
        n_noise = max(1, len(posts) // 20)
        for _ in range(n_noise):
            ts = origin + timedelta(minutes=rng.randrange(window_hours * 60))
            add(rng.choice(NOISE_PHRASES), ts, f"u{rng.randrange(10**6)}")
        for _ in range(n_noise):
            before = rng.random() < 0.5
            off = -rng.randrange(1, 600) if before else window_hours * 60 + rng.randrange(600)
            add(positive_text(rng, rng.choice(profile.places)), origin + timedelta(minutes=off), "late")
        for _ in range(n_noise):
            src = posts[rng.randrange(len(posts))]
            add(src.text, src.published_at + timedelta(minutes=rng.randrange(1, 30)), src.author)

    rng.shuffle(posts)
    return posts


def random_corpus(rng: random.Random, cfg: EventConfig, n: int) -> list[MicroblogPost]:
    """Loosely structured posts straddling the window, for conservation checks."""
    span = cfg.window_hours * 60
    texts = POSITIVE_PHRASES + NEGATIVE_SEVERE + NEGATIVE_SLIGHT + NOISE_PHRASES
    out = []
    for i in range(n):
        text = rng.choice(texts)
        if rng.random() < 0.7:
            text = rng.choice(cfg.query_keywords) + text
        ts = cfg.origin_time + timedelta(minutes=rng.randrange(-120, span + 120))
        author = rng.choice(("a", "b", "c", None))
        out.append(MicroblogPost(str(i), text, ts, author))
    return out
