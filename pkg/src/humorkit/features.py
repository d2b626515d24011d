"""Hand-crafted feature extraction for tokenized tweets.

Lexicon lookups use multiset semantics over a square-root length norm:
matches / sqrt(word tokens). Structural features (dialog, question-answer,
exclamations, hashtags, links, uppercase) read the token stream directly.
Person features are heuristic: pronoun/clitic lists plus verb-suffix tables
shipped as data files. The topic-distance feature is the log-odds of a
bag-of-words naive Bayes sub-model trained on joke vs encyclopedia corpora.

Antonyms, negation and non-Spanish-words exist but are disabled by default
(they hurt feature-elimination runs).
"""

from __future__ import annotations

import csv
import importlib.resources
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import ml
from .errors import IoFailure, MissingDictionary, UntrainedModel
from .labels import Label
from .text import (
    DASH_CHARS,
    TokenKind,
    TokenizedTweet,
    is_all_uppercase,
    normalize_word,
    tokenize,
    word_tokens,
)


def default_data_root() -> Path:
    """Shipped data directory, overridable with HUMORKIT_DATA_DIR."""
    env = os.environ.get("HUMORKIT_DATA_DIR")
    if env:
        return Path(env)
    return Path(str(importlib.resources.files("humorkit").joinpath("data")))


# --- lexicons ---

@dataclass(frozen=True)
class Lexicon:
    name: str
    entries: frozenset[str]
    source_path: str

    def __contains__(self, normalized: str) -> bool:
        return normalized in self.entries


@dataclass(frozen=True)
class AntonymLexicon:
    pairs: frozenset[frozenset[str]]
    source_path: str

    def has_pair(self, a: str, b: str) -> bool:
        return a != b and frozenset((a, b)) in self.pairs


def _read_lines(path) -> list[str]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = []
            for raw in fh:
                line = raw.strip()
                if line and not line.startswith("#"):
                    lines.append(line)
            return lines
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc.strerror or exc}") from exc


def load_lexicon(path, name: str | None = None) -> Lexicon:
    """One entry per line, '#' comments; entries normalized on load."""
    entries = frozenset(normalize_word(line) for line in _read_lines(path))
    if not entries:
        raise IoFailure(f"lexicon {path} has no entries")
    return Lexicon(name or Path(path).stem, entries, str(path))


def load_suffixes(path) -> tuple[str, ...]:
    """Verb-suffix table; lowercased but diacritics kept, so accented
    endings match only genuinely accented surfaces."""
    return tuple(line.lower() for line in _read_lines(path))


def load_antonyms(path) -> AntonymLexicon:
    pairs = set()
    for line in _read_lines(path):
        parts = line.split("\t")
        if len(parts) != 2:
            raise IoFailure(f"antonym line needs two tab-separated words: {line!r}")
        a, b = (normalize_word(p) for p in parts)
        if a == b:
            raise IoFailure(f"antonym pair of a word with itself: {line!r}")
        pairs.add(frozenset((a, b)))
    return AntonymLexicon(frozenset(pairs), str(path))


def load_word_set(path) -> frozenset[str]:
    if not Path(path).exists():
        raise MissingDictionary(path)
    return frozenset(normalize_word(line) for line in _read_lines(path))


def load_documents(path) -> list[str]:
    """One document per non-empty line, kept verbatim (no comment syntax)."""
    try:
        with open(path, encoding="utf-8") as fh:
            return [line.strip() for line in fh if line.strip()]
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc.strerror or exc}") from exc


# --- feature registry ---

FEATURE_ORDER = (
    "adult_slang",
    "animal_presence",
    "antonyms",
    "dialog",
    "exclamations",
    "first_person",
    "second_person",
    "hashtags",
    "keywords",
    "links",
    "negation",
    "non_spanish",
    "oov_1",
    "oov_2",
    "oov_3",
    "oov_4",
    "question_answer",
    "topic_distance",
    "uppercase_words",
)

RFE_DISCARDED = ("antonyms", "negation", "non_spanish")

DEFAULT_ENABLED = tuple(f for f in FEATURE_ORDER if f not in RFE_DISCARDED)


@dataclass(frozen=True)
class FeatureVector:
    tweet_id: str
    values: dict  # feature name -> float, in registry order

    def as_row(self, names) -> np.ndarray:
        return np.array([self.values[n] for n in names])


@dataclass(frozen=True)
class FeatureConfig:
    enabled: tuple[str, ...] = DEFAULT_ENABLED
    data_root: Path = field(default_factory=default_data_root)
    oov_cache_path: Path | None = None

    def __post_init__(self):
        unknown = set(self.enabled) - set(FEATURE_ORDER)
        if unknown:
            raise ValueError(f"unknown feature names: {sorted(unknown)}")
        # keep registry order regardless of how the config was written
        object.__setattr__(
            self, "enabled", tuple(f for f in FEATURE_ORDER if f in set(self.enabled))
        )
        object.__setattr__(self, "data_root", Path(self.data_root))

    def lexicon_path(self, stem: str) -> Path:
        return self.data_root / "lexicons" / stem

    def oov_stacks(self) -> tuple[tuple[Path, ...], ...]:
        """Four dictionary stacks standing in for the analyzer/web combos:
        base, base+web_a, base+web_b, web_b. A cache of externally verified
        words, when configured, extends the web-backed stacks."""
        base = self.lexicon_path("spanish_words.txt")
        web_a = self.lexicon_path("dict_web_a.txt")
        web_b = self.lexicon_path("dict_web_b.txt")
        cache = (self.oov_cache_path,) if self.oov_cache_path else ()
        return (
            (base,),
            (base, web_a) + cache,
            (base, web_b) + cache,
            (web_b,) + cache,
        )

    def topic_paths(self) -> tuple[Path, Path]:
        return self.data_root / "topics" / "jokes.txt", self.data_root / "topics" / "wiki.txt"


# --- individual features ---

def dict_feature(t: TokenizedTweet, lex: Lexicon) -> float:
    """Multiset lexicon overlap over sqrt of the word-token count."""
    words = word_tokens(t)
    if not words:
        return 0.0
    hits = sum(1 for w in words if w.normalized in lex)
    return hits / math.sqrt(len(words))


def antonyms(t: TokenizedTweet, alex: AntonymLexicon) -> float:
    """Antonym position pairs (i < j) relative to the word-token count."""
    words = word_tokens(t)
    if not words:
        return 0.0
    hits = 0
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            if alex.has_pair(words[i].normalized, words[j].normalized):
                hits += 1
    return hits / len(words)


def dialog(t: TokenizedTweet) -> float:
    """1 when at least two lines open with a dash marker (a dialog needs
    two turns), else 0."""
    turns = 0
    for lo, _hi in t.lines:
        tok = t.tokens[lo]
        if tok.kind is TokenKind.PUNCT and tok.surface in DASH_CHARS:
            turns += 1
    return 1.0 if turns >= 2 else 0.0


def exclamations(t: TokenizedTweet) -> float:
    if not t.tokens:
        return 0.0
    marks = sum(
        1 for tok in t.tokens if tok.kind is TokenKind.PUNCT and tok.surface in ("!", "¡")
    )
    return marks / len(t.tokens)


def _person_score(t: TokenizedTweet, pronouns: Lexicon, suffixes: tuple[str, ...]) -> float:
    words = word_tokens(t)
    if not words:
        return 0.0
    hits = 0
    for w in words:
        surface = w.surface.lower()
        if w.normalized in pronouns:
            hits += 1
        elif len(surface) >= 4 and any(surface.endswith(s) for s in suffixes):
            hits += 1
    return hits / len(words)


def first_person(t, pronouns, suffixes) -> float:
    return _person_score(t, pronouns, suffixes)


def second_person(t, pronouns, suffixes) -> float:
    return _person_score(t, pronouns, suffixes)


def hashtags(t: TokenizedTweet) -> float:
    return float(sum(1 for tok in t.tokens if tok.kind is TokenKind.HASHTAG))


def links(t: TokenizedTweet) -> float:
    return float(sum(1 for tok in t.tokens if tok.kind is TokenKind.URL))


def negation(t: TokenizedTweet) -> float:
    words = word_tokens(t)
    if not words:
        return 0.0
    return sum(1 for w in words if w.normalized == "no") / len(words)


def non_spanish(t: TokenizedTweet, spanish: frozenset[str], foreign: frozenset[str]) -> float:
    words = word_tokens(t)
    if not words:
        return 0.0
    hits = sum(1 for w in words if w.normalized not in spanish and w.normalized in foreign)
    return hits / len(words)


def out_of_vocabulary(t: TokenizedTweet, stacks: list[frozenset[str]]) -> list[float]:
    """One value per dictionary stack: fraction of word tokens found in none
    of the stack's providers."""
    words = word_tokens(t)
    if not words:
        return [0.0] * len(stacks)
    out = []
    for known in stacks:
        misses = sum(1 for w in words if w.normalized not in known)
        out.append(misses / len(words))
    return out


def question_answer(t: TokenizedTweet) -> float:
    """Adjacent segment pairs where a question is followed by a non-question."""

    def ends_q(rng):
        return t.tokens[rng[1] - 1].surface == "?"

    count = 0
    for a, b in zip(t.segments, t.segments[1:]):
        if ends_q(a) and not ends_q(b):
            count += 1
    return float(count)


def uppercase_words(t: TokenizedTweet) -> float:
    words = word_tokens(t)
    if not words:
        return 0.0
    return sum(1 for w in words if is_all_uppercase(w)) / len(words)


# --- topic distance sub-model ---

@dataclass(frozen=True)
class TopicModel:
    vectorizer: ml.BowVectorizer
    model: ml.MnbModel


def _doc_tokens(text: str) -> list[str]:
    return [w.normalized for w in word_tokens(tokenize(text))]


def topic_model_train(joke_texts: list[str], wiki_texts: list[str], alpha: float = 1.0) -> TopicModel:
    """Two-class bag-of-words Bayes model: jokes vs encyclopedia sentences."""
    docs = [_doc_tokens(s) for s in joke_texts] + [_doc_tokens(s) for s in wiki_texts]
    labels = [Label.POSITIVE] * len(joke_texts) + [Label.NEGATIVE] * len(wiki_texts)
    vectorizer = ml.bow_fit(docs)
    names = tuple(sorted(vectorizer.vocabulary, key=vectorizer.vocabulary.get))
    rows = [ml.bow_transform(vectorizer, doc) for doc in docs]
    return TopicModel(vectorizer, ml.mnb_fit(ml.Dataset(names, rows, tuple(labels)), alpha=alpha))


def topic_distance(text: str, model: TopicModel | None) -> float:
    """log P(joke | text) - log P(encyclopedia | text); positive = joke-like."""
    if model is None:
        raise UntrainedModel("topic model not trained")
    row = ml.bow_transform(model.vectorizer, _doc_tokens(text))
    scores = ml.mnb_log_posterior(model.model, row)
    return scores[Label.POSITIVE] - scores[Label.NEGATIVE]


def topic_distance_tokenized(t: TokenizedTweet, model: TopicModel | None) -> float:
    if model is None:
        raise UntrainedModel("topic model not trained")
    row = ml.bow_transform(model.vectorizer, [w.normalized for w in word_tokens(t)])
    scores = ml.mnb_log_posterior(model.model, row)
    return scores[Label.POSITIVE] - scores[Label.NEGATIVE]


# --- the full extractor ---

class FeatureExtractor:
    """Loads every resource an enabled feature needs, then maps tokenized
    tweets to feature vectors. Extraction is pure once constructed."""

    def __init__(self, cfg: FeatureConfig = FeatureConfig()):
        self.cfg = cfg
        enabled = set(cfg.enabled)
        self.adult_slang = self.animal = self.keyword = None
        self.antonym_lexicon = None
        self.spanish = self.foreign = None
        self.oov_sets: list[frozenset[str]] | None = None
        self.topic: TopicModel | None = None

        if "adult_slang" in enabled:
            self.adult_slang = load_lexicon(cfg.lexicon_path("adult_slang.txt"))
        if "animal_presence" in enabled:
            self.animal = load_lexicon(cfg.lexicon_path("animals.txt"))
        if "keywords" in enabled:
            self.keyword = load_lexicon(cfg.lexicon_path("keywords.txt"))
        if "antonyms" in enabled:
            self.antonym_lexicon = load_antonyms(cfg.lexicon_path("antonyms.tsv"))
        if {"first_person", "second_person"} & enabled:
            self.fp_pronouns = load_lexicon(cfg.lexicon_path("first_person.txt"))
            self.sp_pronouns = load_lexicon(cfg.lexicon_path("second_person.txt"))
            self.fp_suffixes = load_suffixes(cfg.lexicon_path("first_person_suffixes.txt"))
            self.sp_suffixes = load_suffixes(cfg.lexicon_path("second_person_suffixes.txt"))
        if "non_spanish" in enabled:
            self.spanish = load_word_set(cfg.lexicon_path("spanish_words.txt"))
            self.foreign = load_word_set(cfg.lexicon_path("foreign_words.txt"))
        if {"oov_1", "oov_2", "oov_3", "oov_4"} & enabled:
            self.oov_sets = []
            for stack in cfg.oov_stacks():
                providers = [load_word_set(p) for p in stack]
                self.oov_sets.append(frozenset().union(*providers))
        if "topic_distance" in enabled:
            jokes_path, wiki_path = cfg.topic_paths()
            self.topic = topic_model_train(load_documents(jokes_path), load_documents(wiki_path))

    def extract(self, t: TokenizedTweet) -> FeatureVector:
        enabled = set(self.cfg.enabled)
        values: dict[str, float] = {}

        def put(name, fn):
            if name in enabled:
                values[name] = fn()

        put("adult_slang", lambda: dict_feature(t, self.adult_slang))
        put("animal_presence", lambda: dict_feature(t, self.animal))
        put("antonyms", lambda: antonyms(t, self.antonym_lexicon))
        put("dialog", lambda: dialog(t))
        put("exclamations", lambda: exclamations(t))
        put("first_person", lambda: first_person(t, self.fp_pronouns, self.fp_suffixes))
        put("second_person", lambda: second_person(t, self.sp_pronouns, self.sp_suffixes))
        put("hashtags", lambda: hashtags(t))
        put("keywords", lambda: dict_feature(t, self.keyword))
        put("links", lambda: links(t))
        put("negation", lambda: negation(t))
        put("non_spanish", lambda: non_spanish(t, self.spanish, self.foreign))
        if self.oov_sets is not None:
            oov = out_of_vocabulary(t, self.oov_sets)
            for i in range(4):
                name = f"oov_{i + 1}"
                if name in enabled:
                    values[name] = oov[i]
        put("question_answer", lambda: question_answer(t))
        put("topic_distance", lambda: topic_distance_tokenized(t, self.topic))
        put("uppercase_words", lambda: uppercase_words(t))

        ordered = {name: values[name] for name in self.cfg.enabled}
        return FeatureVector(t.tweet_id, ordered)

    def extract_text(self, text: str, tweet_id: str = "") -> FeatureVector:
        return self.extract(tokenize(text, tweet_id))


def extract_all(t: TokenizedTweet, extractor: FeatureExtractor) -> FeatureVector:
    return extractor.extract(t)


# --- feature matrix CSV ---

def feature_csv_text(names, vectors: list[FeatureVector], labels: list[Label]) -> str:
    """tweet_id,<features...>,label with '.' decimals and full float precision."""
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["tweet_id", *names, "label"])
    for vec, label in zip(vectors, labels):
        writer.writerow([vec.tweet_id, *[repr(vec.values[n]) for n in names], label.value])
    return buf.getvalue()


def write_feature_csv(path, names, vectors: list[FeatureVector], labels: list[Label]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(feature_csv_text(names, vectors, labels))


def read_feature_csv(path):
    """Returns (feature_names, tweet_ids, rows ndarray, labels)."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if not header or header[0] != "tweet_id" or header[-1] != "label":
                raise IoFailure(f"{path}: not a feature matrix CSV")
            names = tuple(header[1:-1])
            ids, rows, labels = [], [], []
            for rec in reader:
                ids.append(rec[0])
                rows.append([float(x) for x in rec[1:-1]])
                labels.append(Label(rec[-1]))
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc.strerror or exc}") from exc
    matrix = np.array(rows) if rows else np.zeros((0, len(names)))
    return names, ids, matrix, labels
