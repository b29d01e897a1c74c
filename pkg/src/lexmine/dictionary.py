"""Bilingual word dictionary: load, filter, invert, query.

File format is TSV: ``source<TAB>target1|target2|...`` with '#' comment
lines. All words are stored lowercased; multi-word entries are rejected
because downstream translation is strictly word-to-word. A Lexicon is a
plain reference wordlist (one word per line) used to drop entries whose
translations are not registered words.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field

from .errors import InputError, ParseError


@dataclass
class DictEntry:
    source_word: str
    targets: list[str]  # first entry is the preferred translation


@dataclass
class BilingualDictionary:
    """Immutable-after-load map from source word to its translations."""

    entries: dict[str, DictEntry] = field(default_factory=dict)
    direction: tuple[str, str] = ("src", "tgt")

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, word: str) -> list[str] | None:
        """Case-insensitive exact match; None when absent."""
        entry = self.entries.get(word.lower())
        return list(entry.targets) if entry else None

    def pair_set(self) -> set[tuple[str, str]]:
        return {(e.source_word, t) for e in self.entries.values() for t in e.targets}


@dataclass
class Lexicon:
    words: set[str] = field(default_factory=set)

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.words

    def __len__(self) -> int:
        return len(self.words)


def _check_single_word(word: str, path, line_no: int) -> str:
    if not word:
        raise ParseError(path, line_no, "empty word")
    if any(ch.isspace() for ch in word):
        raise ParseError(path, line_no, f"multi-word entry not allowed: {word!r}")
    return word.lower()


def parse_dictionary(lines, direction: tuple[str, str] = ("src", "tgt"),
                     path: str = "<memory>") -> BilingualDictionary:
    """Parse dictionary rows; duplicate sources merge with target dedup."""
    entries: dict[str, DictEntry] = {}
    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        columns = line.split("\t")
        if len(columns) != 2:
            raise ParseError(path, line_no,
                             f"expected 2 tab-separated columns, got {len(columns)}")
        source = _check_single_word(columns[0].strip(), path, line_no)
        targets = [_check_single_word(t.strip(), path, line_no)
                   for t in columns[1].split("|")]
        entry = entries.setdefault(source, DictEntry(source, []))
        for t in targets:
            if t not in entry.targets:
                entry.targets.append(t)
    return BilingualDictionary(entries, direction)


def load_dictionary(path, direction: tuple[str, str] = ("src", "tgt")) -> BilingualDictionary:
    try:
        handle = io.open(path, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    with handle:
        return parse_dictionary(handle, direction, path=str(path))


def save_dictionary(dictionary: BilingualDictionary, handle) -> None:
    """Write canonical TSV, sorted by source word."""
    for source in sorted(dictionary.entries):
        entry = dictionary.entries[source]
        handle.write(f"{source}\t{'|'.join(entry.targets)}\n")


def load_lexicon(path) -> Lexicon:
    try:
        handle = io.open(path, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    words = set()
    with handle:
        for line_no, raw in enumerate(handle, start=1):
            word = raw.strip()
            if not word or word.startswith("#"):
                continue
            words.add(_check_single_word(word, path, line_no))
    return Lexicon(words)


def filter_by_lexicon(dictionary: BilingualDictionary, lexicon: Lexicon) -> BilingualDictionary:
    """Keep only targets registered in the lexicon; drop emptied entries."""
    kept: dict[str, DictEntry] = {}
    for source, entry in dictionary.entries.items():
        targets = [t for t in entry.targets if t in lexicon]
        if targets:
            kept[source] = DictEntry(source, targets)
    return BilingualDictionary(kept, dictionary.direction)


def invert(dictionary: BilingualDictionary) -> BilingualDictionary:
    """Target->sources view; source order follows the forward dictionary."""
    inverse: dict[str, DictEntry] = {}
    for entry in dictionary.entries.values():
        for target in entry.targets:
            inv = inverse.setdefault(target, DictEntry(target, []))
            if entry.source_word not in inv.targets:
                inv.targets.append(entry.source_word)
    return BilingualDictionary(inverse, (dictionary.direction[1], dictionary.direction[0]))


def identity_ratio(dictionary: BilingualDictionary) -> float:
    """Fraction of entries whose source word is one of its own translations."""
    if not dictionary.entries:
        raise InputError("identity_ratio is undefined for an empty dictionary")
    same = sum(1 for e in dictionary.entries.values() if e.source_word in e.targets)
    return same / len(dictionary.entries)


def dictionary_stats(dictionary: BilingualDictionary) -> dict:
    """Summary counts: size, identity overlap, synonym/variant groups."""
    n = len(dictionary.entries)
    identical = sum(1 for e in dictionary.entries.values() if e.source_word in e.targets)
    inverse = invert(dictionary)
    multi = sum(1 for e in inverse.entries.values() if len(e.targets) > 1)
    return {
        "entries": n,
        "identical_entries": identical,
        "identity_ratio": (identical / n) if n else None,
        "targets_with_multiple_sources": multi,
        "direction": list(dictionary.direction),
    }
