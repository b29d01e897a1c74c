"""Deterministic tokenization, sentence segmentation, and n-gram extraction.

All other modules build on these primitives, so everything here is a pure
function with no configuration beyond explicit arguments. Tokens are plain
strings; n-grams are tuples of lowercased token surfaces counted in a
``collections.Counter``.
"""
from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass

from .errors import InputError

# A "word token" is anything that is not made purely of punctuation or
# symbol characters (Unicode categories P* and S*).
_TERMINATORS = {".", "!", "?"}
_WS_RE = re.compile(r"\s+")

Token = str
NGram = tuple[str, ...]


def _is_punct_char(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("P", "S")


def is_punctuation(token: str) -> bool:
    """True if every character of the token is punctuation or a symbol."""
    return bool(token) and all(_is_punct_char(ch) for ch in token)


@dataclass(frozen=True)
class Sentence:
    """A single segmented sentence; token list is derived on demand."""

    text: str

    def tokens(self) -> list[Token]:
        return tokenize(self.text)

    def __post_init__(self):
        if not self.text.strip():
            raise InputError("sentence text is empty")
        if "\n" in self.text or "\r" in self.text:
            raise InputError("sentence text contains a newline")


def tokenize(text: str) -> list[Token]:
    """Split text into word and punctuation tokens.

    Chunks are whitespace-separated; leading and trailing punctuation
    characters of each chunk become standalone tokens while internal
    punctuation (apostrophes, hyphens, decimal points) stays attached.
    Total function: every non-whitespace character lands in exactly one
    token, in order.
    """
    tokens: list[Token] = []
    for chunk in text.split():
        lead = 0
        while lead < len(chunk) and _is_punct_char(chunk[lead]):
            lead += 1
        trail = len(chunk)
        while trail > lead and _is_punct_char(chunk[trail - 1]):
            trail -= 1
        tokens.extend(chunk[:lead])
        if trail > lead:
            tokens.append(chunk[lead:trail])
        tokens.extend(chunk[trail:])
    return tokens


def join_tokens(tokens: list[Token]) -> str:
    """Inverse-ish of tokenize: single-space join (round-trip stable)."""
    return " ".join(tokens)


def normalize(tokens: list[Token]) -> list[Token]:
    """Lowercase every token; length and order preserved."""
    return [t.lower() for t in tokens]


def _is_abbreviation(word: str, abbreviations: frozenset[str]) -> bool:
    # Short capitalized words ("A.", "Dr.") read as initials/abbreviations;
    # anything else must be listed explicitly.
    if word.lower() in abbreviations:
        return True
    return len(word) <= 2 and word.isalpha() and word[0].isupper()


def split_sentences(text: str, abbreviations: frozenset[str] = frozenset()) -> list[Sentence]:
    """Segment text on terminal punctuation ('.', '!', '?').

    A terminator ends a sentence when it is the last non-space character or
    is followed by whitespace and then an uppercase letter or digit. A '.'
    after a short capitalized word or a listed abbreviation does not split.
    Whitespace (including newlines) inside each sentence is collapsed to
    single spaces; no non-whitespace character is dropped.
    """
    sentences: list[Sentence] = []
    start = 0
    n = len(text)

    def flush(end: int) -> None:
        nonlocal start
        piece = _WS_RE.sub(" ", text[start:end]).strip()
        if piece:
            sentences.append(Sentence(piece))
        start = end

    i = 0
    while i < n:
        ch = text[i]
        if ch not in _TERMINATORS:
            i += 1
            continue
        # consume a run of terminators ("?!", "...") as one boundary
        j = i + 1
        while j < n and text[j] in _TERMINATORS:
            j += 1
        after = j
        while after < n and text[after].isspace():
            after += 1
        at_end = after >= n
        starts_new = not at_end and after > j and (text[after].isupper() or text[after].isdigit())
        if ch == "." and j == i + 1:
            k = i
            while k > 0 and text[k - 1].isalnum():
                k -= 1
            if _is_abbreviation(text[k:i], abbreviations):
                i = j
                continue
        if at_end or starts_new:
            flush(j)
        i = j
    flush(n)
    return sentences


def ngrams(tokens: list[Token], n: int) -> Counter[NGram]:
    """Multiset of contiguous n-grams over lowercased token surfaces."""
    if n < 1:
        raise InputError(f"n-gram order must be >= 1, got {n}")
    lowered = [t.lower() for t in tokens]
    return Counter(tuple(lowered[i : i + n]) for i in range(len(lowered) - n + 1))


def truncate(tokens: list[Token], max_len: int) -> list[Token]:
    """First max_len tokens (identity when the list is shorter)."""
    if max_len < 1:
        raise InputError(f"max_len must be >= 1, got {max_len}")
    return tokens[:max_len]
