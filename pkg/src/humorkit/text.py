"""Rule-based tokenizer and segmenter for Spanish tweets.

A deterministic greedy left-to-right scan, no external analyzer. Recognizes,
in order of priority: URLs, mentions, hashtags, words (maximal letter runs),
numbers (maximal digit runs). Every remaining non-whitespace character is a
single punctuation token, so token surfaces plus skipped whitespace always
reconstruct the input exactly.
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass, field


class TokenKind(enum.Enum):
    WORD = "word"
    HASHTAG = "hashtag"
    MENTION = "mention"
    URL = "url"
    PUNCT = "punct"
    NUMBER = "number"


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    kind: TokenKind
    char_span: tuple[int, int]


@dataclass(frozen=True)
class TokenizedTweet:
    tweet_id: str
    text: str
    tokens: tuple[Token, ...]
    # Half-open token-index ranges. Lines split on newline; segments split on
    # sentence-final punctuation runs (. ! ? ...) and newlines.
    lines: tuple[tuple[int, int], ...]
    segments: tuple[tuple[int, int], ...]


DASH_CHARS = {"-", "—", "–"}  # - em-dash en-dash
SENTENCE_FINAL = {".", "!", "?", "…"}

_TAG_BODY_EXTRA = {"_"}


def strip_diacritics(s: str) -> str:
    decomposed = unicodedata.normalize("NFD", s)
    return "".join(c for c in decomposed if not unicodedata.combining(c))


def normalize_word(s: str) -> str:
    return strip_diacritics(s.lower())


def _is_tag_body_char(c: str) -> bool:
    return c.isalpha() or c.isdigit() or c in _TAG_BODY_EXTRA


def _scan_tokens(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if text.startswith("http://", i) or text.startswith("https://", i):
            j = i
            while j < n and not text[j].isspace():
                j += 1
            kind = TokenKind.URL
        elif c in "#@" and i + 1 < n and _is_tag_body_char(text[i + 1]):
            j = i + 1
            while j < n and _is_tag_body_char(text[j]):
                j += 1
            kind = TokenKind.HASHTAG if c == "#" else TokenKind.MENTION
        elif c.isalpha():
            j = i + 1
            while j < n and text[j].isalpha():
                j += 1
            kind = TokenKind.WORD
        elif c.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            kind = TokenKind.NUMBER
        else:
            j = i + 1
            kind = TokenKind.PUNCT
        surface = text[i:j]
        tokens.append(Token(surface, normalize_word(surface), kind, (i, j)))
        i = j
    return tokens


def _line_ranges(text: str, tokens: list[Token]) -> list[tuple[int, int]]:
    """Group token indices by the physical line each token starts on."""
    # Precompute line number per character position.
    boundaries = []
    pos = 0
    for part in text.split("\n"):
        pos += len(part) + 1
        boundaries.append(pos)
    ranges: list[tuple[int, int]] = []
    cur_line = 0
    start = 0
    for idx, tok in enumerate(tokens):
        line = cur_line
        while tok.char_span[0] >= boundaries[line]:
            line += 1
        if line != cur_line:
            if idx > start:
                ranges.append((start, idx))
            start = idx
            cur_line = line
    if len(tokens) > start:
        ranges.append((start, len(tokens)))
    return ranges


def _segment_ranges(tokens: list[Token], lines: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Split each line on runs of sentence-final punctuation.

    The closing punctuation run belongs to the segment it terminates, so a
    segment "ends with ?" exactly when its last token is the question mark.
    """
    segments: list[tuple[int, int]] = []
    for lo, hi in lines:
        start = lo
        i = lo
        while i < hi:
            if tokens[i].kind is TokenKind.PUNCT and tokens[i].surface in SENTENCE_FINAL:
                while i + 1 < hi and tokens[i + 1].kind is TokenKind.PUNCT \
                        and tokens[i + 1].surface in SENTENCE_FINAL:
                    i += 1
                segments.append((start, i + 1))
                start = i + 1
            i += 1
        if hi > start:
            segments.append((start, hi))
    return segments


def tokenize(text: str, tweet_id: str = "") -> TokenizedTweet:
    """Tokenize a tweet into tokens, line ranges and sentence segments."""
    tokens = _scan_tokens(text)
    lines = _line_ranges(text, tokens)
    segments = _segment_ranges(tokens, lines)
    return TokenizedTweet(tweet_id, text, tuple(tokens), tuple(lines), tuple(segments))


def word_tokens(t: TokenizedTweet) -> list[Token]:
    return [tok for tok in t.tokens if tok.kind is TokenKind.WORD]


def is_all_uppercase(token: Token) -> bool:
    """Shouting detector: every cased char uppercase, at least 2 chars.

    Single capitals (sentence starts, the preposition "A") don't count.
    """
    s = token.surface
    return len(s) >= 2 and s == s.upper() and s != s.lower()
