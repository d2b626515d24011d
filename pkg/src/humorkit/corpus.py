"""Corpus ingestion and crowd-label aggregation.

Tweets come from humorous and non-humorous accounts; crowd annotations are
star rankings (1-5), "not humor" or "skip". Aggregation turns the votes into
positive / negative / doubtful labels with asymmetric ratio thresholds that
grant humorous-account tweets a handicap.
"""

from __future__ import annotations

import enum
import json
import random
import warnings
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace

from .errors import (
    DegenerateClassWarning,
    DoubtfulPresent,
    DuplicateId,
    InvalidRaterCount,
    IoFailure,
    MalformedRecord,
    NoEligibleItems,
    UnknownTweetId,
)
from .labels import Label, is_countable, is_star, is_valid_vote


class AccountKind(enum.Enum):
    HUMOROUS = "humorous"
    NEWS = "news"
    REFLECTIONS = "reflections"
    CURIOUS_FACTS = "curious_facts"


@dataclass(frozen=True)
class Tweet:
    id: str
    text: str
    account: str
    account_kind: AccountKind

    def __post_init__(self):
        if not self.id:
            raise ValueError("tweet id must be non-empty")
        if not self.text:
            raise ValueError(f"tweet {self.id}: text must be non-empty")


@dataclass(frozen=True)
class Annotation:
    tweet_id: str
    session_id: str
    timestamp_ms: int
    vote: str

    def __post_init__(self):
        if not is_valid_vote(self.vote):
            raise ValueError(f"invalid vote {self.vote!r}")
        if self.timestamp_ms < 0:
            raise ValueError("timestamp must be >= 0")


@dataclass(frozen=True)
class LabeledTweet:
    tweet: Tweet
    label: Label
    humor_ratio: float | None  # None when zero countable annotations
    n_annotations: int  # skips excluded


@dataclass(frozen=True)
class AggregationConfig:
    pos_threshold: float = 0.6
    neg_threshold: float = 0.3
    include_humorous_account_negatives: bool = False

    def __post_init__(self):
        if not (0 <= self.neg_threshold < self.pos_threshold <= 1):
            raise ValueError("need 0 <= neg_threshold < pos_threshold <= 1")


# --- JSONL ingestion ---

def _parse_tweet(obj: dict) -> Tweet:
    return Tweet(
        id=obj["id"],
        text=obj["text"],
        account=obj.get("account", ""),
        account_kind=AccountKind(obj["account_kind"]),
    )


def _parse_annotation(obj: dict) -> Annotation:
    return Annotation(
        tweet_id=obj["tweet_id"],
        session_id=obj["session_id"],
        timestamp_ms=int(obj["timestamp_ms"]),
        vote=obj["vote"],
    )


def _load_jsonl(path, parse_one):
    records = []
    try:
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                    records.append((line_no, parse_one(obj)))
                except (ValueError, KeyError, TypeError) as exc:
                    raise MalformedRecord(str(path), line_no, str(exc)) from exc
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc.strerror or exc}") from exc
    return records


def load_tweets(path) -> list[Tweet]:
    """Read tweets.jsonl, in file order, rejecting duplicate ids."""
    seen: dict[str, int] = {}
    tweets = []
    for line_no, tweet in _load_jsonl(path, _parse_tweet):
        if tweet.id in seen:
            raise DuplicateId(tweet.id, line_no)
        seen[tweet.id] = line_no
        tweets.append(tweet)
    return tweets


def load_annotations(path) -> list[Annotation]:
    return [ann for _, ann in _load_jsonl(path, _parse_annotation)]


def save_labeled(labeled: list[LabeledTweet], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for lt in labeled:
            obj = {
                "id": lt.tweet.id,
                "text": lt.tweet.text,
                "account": lt.tweet.account,
                "account_kind": lt.tweet.account_kind.value,
                "label": lt.label.value,
                "humor_ratio": lt.humor_ratio,
                "n_annotations": lt.n_annotations,
            }
            fh.write(json.dumps(obj, ensure_ascii=False) + "\n")


def load_labeled(path) -> list[LabeledTweet]:
    def parse_one(obj):
        tweet = _parse_tweet(obj)
        ratio = obj["humor_ratio"]
        return LabeledTweet(
            tweet=tweet,
            label=Label(obj["label"]),
            humor_ratio=None if ratio is None else float(ratio),
            n_annotations=int(obj["n_annotations"]),
        )

    return [lt for _, lt in _load_jsonl(path, parse_one)]


# --- burst filtering ---

def _one_filter_pass(anns: list[Annotation], max_gap_ms: int, min_run: int) -> list[Annotation]:
    kept: list[Annotation] = []
    i = 0
    while i < len(anns):
        j = i + 1
        while (
            j < len(anns)
            and anns[j].vote == anns[i].vote
            and anns[j].timestamp_ms - anns[j - 1].timestamp_ms < max_gap_ms
        ):
            j += 1
        if j - i < min_run:
            kept.extend(anns[i:j])
        i = j
    return kept


def filter_annotations(
    annotations: list[Annotation], max_gap_ms: int = 2000, min_run: int = 5
) -> list[Annotation]:
    """Drop suspicious bursts: same session, same vote, in quick succession.

    Within each session, a maximal run of >= min_run consecutive annotations
    carrying the identical vote with every inter-annotation gap < max_gap_ms
    is removed entirely. Removal is iterated to a fixpoint so the operation
    is idempotent (deleting a burst can make two shorter same-vote stretches
    adjacent). Output is sorted by (session_id, timestamp).
    """
    if max_gap_ms <= 0:
        raise ValueError("max_gap_ms must be > 0")
    if min_run < 2:
        raise ValueError("min_run must be >= 2")
    by_session: dict[str, list[Annotation]] = defaultdict(list)
    for ann in sorted(annotations, key=lambda a: (a.session_id, a.timestamp_ms)):
        by_session[ann.session_id].append(ann)
    out: list[Annotation] = []
    for session_id in sorted(by_session):
        anns = by_session[session_id]
        while True:
            filtered = _one_filter_pass(anns, max_gap_ms, min_run)
            if len(filtered) == len(anns):
                break
            anns = filtered
        out.extend(anns)
    return out


# --- aggregation ---

def humor_ratio(votes: list[str]) -> tuple[float | None, int]:
    """(ratio of star votes among countable votes, countable count)."""
    countable = [v for v in votes if is_countable(v)]
    if not countable:
        return None, 0
    stars = sum(1 for v in countable if is_star(v))
    return stars / len(countable), len(countable)


def aggregate_labels(
    tweets: list[Tweet],
    annotations: list[Annotation],
    cfg: AggregationConfig = AggregationConfig(),
) -> list[LabeledTweet]:
    """Aggregate crowd votes into one label per tweet.

    Non-humorous-account tweets are negative unconditionally (their ratio is
    still recorded when computable). Humorous-account tweets: positive when
    ratio >= pos_threshold, negative when ratio <= neg_threshold, doubtful
    in between or with no countable annotations.
    """
    known = {t.id for t in tweets}
    votes_by_tweet: dict[str, list[str]] = defaultdict(list)
    for ann in annotations:
        if ann.tweet_id not in known:
            raise UnknownTweetId(ann.tweet_id)
        votes_by_tweet[ann.tweet_id].append(ann.vote)

    out = []
    for tweet in tweets:
        ratio, n = humor_ratio(votes_by_tweet.get(tweet.id, []))
        if tweet.account_kind is not AccountKind.HUMOROUS:
            label = Label.NEGATIVE
        elif ratio is None:
            label = Label.DOUBTFUL
        elif ratio >= cfg.pos_threshold:
            label = Label.POSITIVE
        elif ratio <= cfg.neg_threshold:
            label = Label.NEGATIVE
        else:
            label = Label.DOUBTFUL
        out.append(LabeledTweet(tweet, label, ratio, n))
    return out


def training_corpus(
    labeled: list[LabeledTweet], cfg: AggregationConfig = AggregationConfig()
) -> list[LabeledTweet]:
    """Select the tweets that feed the classifier.

    Doubtful tweets are always excluded. Negatives that came from humorous
    accounts are excluded too unless the config re-includes them.
    """
    out = []
    for lt in labeled:
        if lt.label is Label.DOUBTFUL:
            continue
        if (
            lt.label is Label.NEGATIVE
            and lt.tweet.account_kind is AccountKind.HUMOROUS
            and not cfg.include_humorous_account_negatives
        ):
            continue
        out.append(lt)
    return out


# --- inter-annotator agreement ---

def fleiss_kappa(annotations: list[Annotation], n_raters: int) -> float:
    """Fleiss' kappa over tweets with exactly n_raters countable annotations.

    Votes collapse to two categories (any star = humorous). Returns exactly
    1.0 under perfect observed agreement, including the degenerate case where
    expected agreement is 1 (all votes in a single category).
    """
    if n_raters < 2:
        raise InvalidRaterCount(f"n_raters must be >= 2, got {n_raters}")
    countable_by_tweet: dict[str, list[str]] = defaultdict(list)
    for ann in annotations:
        if is_countable(ann.vote):
            countable_by_tweet[ann.tweet_id].append(ann.vote)
    # item rows: (humorous count, non-humorous count)
    rows = []
    for votes in countable_by_tweet.values():
        if len(votes) == n_raters:
            h = sum(1 for v in votes if is_star(v))
            rows.append((h, n_raters - h))
    if not rows:
        raise NoEligibleItems(f"no tweets with exactly {n_raters} countable annotations")

    n_items = len(rows)
    p_i = [
        (h * h + nh * nh - n_raters) / (n_raters * (n_raters - 1))
        for h, nh in rows
    ]
    p_bar = sum(p_i) / n_items
    total = n_items * n_raters
    p_h = sum(h for h, _ in rows) / total
    p_nh = sum(nh for _, nh in rows) / total
    p_e = p_h * p_h + p_nh * p_nh
    if p_bar == 1.0:
        return 1.0
    return (p_bar - p_e) / (1.0 - p_e)


# --- train/test split ---

def split_indices(
    labels: list[Label], train_fraction: float, seed: int
) -> tuple[list[int], list[int]]:
    """Seeded stratified split over row indices; train share per class is
    within one item of train_fraction. Classes with < 2 items cannot be
    stratified: warn and put them in train."""
    if not 0 < train_fraction < 1:
        raise ValueError("train_fraction must be in (0, 1)")
    by_label: dict[Label, list[int]] = defaultdict(list)
    for i, label in enumerate(labels):
        by_label[label].append(i)
    rng = random.Random(seed)
    train_idx: list[int] = []
    test_idx: list[int] = []
    for label in sorted(by_label, key=lambda l: l.value):
        idx = by_label[label]
        if len(idx) < 2:
            warnings.warn(
                f"class {label.value} has {len(idx)} item(s); cannot stratify, placing in train",
                DegenerateClassWarning,
            )
            train_idx.extend(idx)
            continue
        shuffled = idx[:]
        rng.shuffle(shuffled)
        n_train = round(train_fraction * len(idx))
        n_train = min(max(n_train, 1), len(idx) - 1)
        train_idx.extend(shuffled[:n_train])
        test_idx.extend(shuffled[n_train:])
    return sorted(train_idx), sorted(test_idx)


def split(
    labeled: list[LabeledTweet], train_fraction: float, seed: int
) -> tuple[list[LabeledTweet], list[LabeledTweet]]:
    """Stratified deterministic split; rejects doubtful tweets."""
    for lt in labeled:
        if lt.label is Label.DOUBTFUL:
            raise DoubtfulPresent(f"tweet {lt.tweet.id} is doubtful; exclude before splitting")
    train_idx, test_idx = split_indices([lt.label for lt in labeled], train_fraction, seed)
    return [labeled[i] for i in train_idx], [labeled[i] for i in test_idx]


# --- descriptive statistics ---

def annotation_histogram(
    annotations: list[Annotation],
) -> tuple[dict[str, int], dict[int, int]]:
    """(votes per category, tweets per annotation count). Skips are reported
    in the category map but excluded from per-tweet counts."""
    categories = Counter(ann.vote for ann in annotations)
    per_tweet = Counter()
    for ann in annotations:
        if is_countable(ann.vote):
            per_tweet[ann.tweet_id] += 1
    count_hist = Counter(per_tweet.values())
    return dict(categories), dict(count_hist)
