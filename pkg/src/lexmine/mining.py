"""Parallel-corpus construction from two comparable document collections.

Pipeline: pair documents by normalized title, segment sentences, translate
the source side word-to-word, pick each source sentence's best target by
ROUGE-1 F1, keep pairs above a threshold, then thin over-represented
trigrams. Every stage is deterministic, and document pairs are independent
work units so the whole run is reproducible at any worker count.
"""
from __future__ import annotations

import json
import multiprocessing
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field

from .dictionary import BilingualDictionary
from .errors import InputError, ParseError
from .metrics import rouge1_f1
from .textproc import Sentence, normalize, split_sentences
from .w2w import translate_tokens

_TITLE_WS = re.compile(r"\s+")


@dataclass(frozen=True)
class Document:
    id: str
    title: str
    text: str
    language: str = ""


@dataclass(frozen=True)
class AlignedPair:
    source_sentence: Sentence
    target_sentence: Sentence
    score: float
    doc_id: str


@dataclass(frozen=True)
class MiningConfig:
    align_threshold: float = 0.5
    trigram_top_k: int = 1000
    trigram_cap: int = 100
    one_to_one: bool = True

    def __post_init__(self):
        if not 0.0 <= self.align_threshold <= 1.0:
            raise InputError(f"align_threshold must be in [0,1], got {self.align_threshold}")
        if self.trigram_top_k < 1:
            raise InputError(f"trigram_top_k must be >= 1, got {self.trigram_top_k}")
        if self.trigram_cap < 1:
            raise InputError(f"trigram_cap must be >= 1, got {self.trigram_cap}")

    def to_dict(self) -> dict:
        return {
            "align_threshold": self.align_threshold,
            "trigram_top_k": self.trigram_top_k,
            "trigram_cap": self.trigram_cap,
            "one_to_one": self.one_to_one,
        }


def normalize_title(title: str) -> str:
    """Lowercase, strip punctuation/symbols, collapse whitespace."""
    kept = []
    for ch in title.lower():
        if unicodedata.category(ch)[0] in ("P", "S"):
            kept.append(" ")
        else:
            kept.append(ch)
    return _TITLE_WS.sub(" ", "".join(kept)).strip()


def align_documents(src_docs: list[Document], tgt_docs: list[Document]
                    ) -> list[tuple[Document, Document]]:
    """Pair documents whose normalized titles are equal.

    Duplicate titles within a collection resolve to the first occurrence,
    so each title yields at most one pair. Pair order follows the source
    collection.
    """
    tgt_by_title: dict[str, Document] = {}
    for doc in tgt_docs:
        key = normalize_title(doc.title)
        if key and key not in tgt_by_title:
            tgt_by_title[key] = doc
    pairs = []
    seen: set[str] = set()
    for doc in src_docs:
        key = normalize_title(doc.title)
        if key and key not in seen and key in tgt_by_title:
            pairs.append((doc, tgt_by_title[key]))
            seen.add(key)
    return pairs


def align_sentences(pair: tuple[Document, Document], dictionary: BilingualDictionary,
                    cfg: MiningConfig) -> list[AlignedPair]:
    """Best-target sentence alignment inside one document pair.

    Each source sentence is translated word-to-word, scored against every
    target sentence with ROUGE-1 F1 over lowercased tokens, and assigned
    its highest-scoring target (ties: earliest target). Pairs below the
    threshold are dropped; with one_to_one, surviving pairs are deduped
    greedily by descending score so each target is used once.
    """
    src_doc, tgt_doc = pair
    src_sentences = split_sentences(src_doc.text)
    tgt_sentences = split_sentences(tgt_doc.text)
    if not src_sentences or not tgt_sentences:
        return []

    tgt_tokens = [normalize(s.tokens()) for s in tgt_sentences]
    candidates: list[tuple[float, int, int]] = []  # (score, src_idx, tgt_idx)
    for i, src_sentence in enumerate(src_sentences):
        translated = translate_tokens(dictionary, src_sentence.tokens()).tokens
        best_score, best_j = -1.0, -1
        for j, ref in enumerate(tgt_tokens):
            score = rouge1_f1(translated, ref).f1
            if score > best_score:
                best_score, best_j = score, j
        if best_j >= 0 and best_score >= cfg.align_threshold:
            candidates.append((best_score, i, best_j))

    if cfg.one_to_one:
        taken: set[int] = set()
        kept = []
        for score, i, j in sorted(candidates, key=lambda c: (-c[0], c[1])):
            if j not in taken:
                taken.add(j)
                kept.append((score, i, j))
        candidates = sorted(kept, key=lambda c: c[1])

    return [
        AlignedPair(src_sentences[i], tgt_sentences[j], score, src_doc.id)
        for score, i, j in candidates
    ]


def _source_trigrams(pair: AlignedPair) -> set[tuple[str, str, str]]:
    tokens = normalize(pair.source_sentence.tokens())
    return {tuple(tokens[i : i + 3]) for i in range(len(tokens) - 2)}


def diversity_filter(pairs: list[AlignedPair], cfg: MiningConfig) -> list[AlignedPair]:
    """Thin sentences so no frequent source trigram dominates the corpus.

    The top-K trigrams are ranked once on the input (by sentence-occurrence
    count, ties lexicographic). While any of them occurs in more than `cap`
    surviving sentences, the currently worst offender (ties lexicographic)
    sheds its lowest-scoring sentences (ties: input order) until it fits,
    and counts are recomputed. Output preserves input order.
    """
    trigram_sets = [_source_trigrams(p) for p in pairs]
    occurrence = Counter()
    for trigrams in trigram_sets:
        occurrence.update(trigrams)
    top = sorted(occurrence.items(), key=lambda item: (-item[1], item[0]))[: cfg.trigram_top_k]
    watched = {tri for tri, _ in top}
    if not watched:
        return list(pairs)

    alive = [True] * len(pairs)
    members: dict[tuple, list[int]] = {tri: [] for tri in watched}
    for idx, trigrams in enumerate(trigram_sets):
        for tri in trigrams & watched:
            members[tri].append(idx)
    counts = {tri: len(idxs) for tri, idxs in members.items()}

    while True:
        overloaded = [(cnt, tri) for tri, cnt in counts.items() if cnt > cfg.trigram_cap]
        if not overloaded:
            break
        # worst offender first; ties broken by lexicographic trigram order
        worst_count = max(cnt for cnt, _ in overloaded)
        worst = min(tri for cnt, tri in overloaded if cnt == worst_count)
        victims = sorted(
            (idx for idx in members[worst] if alive[idx]),
            key=lambda idx: (pairs[idx].score, idx),
        )
        to_remove = counts[worst] - cfg.trigram_cap
        for idx in victims[:to_remove]:
            alive[idx] = False
            for tri in trigram_sets[idx] & watched:
                counts[tri] -= 1

    return [pair for idx, pair in enumerate(pairs) if alive[idx]]


# -- whole-pipeline driver ---------------------------------------------------

_WORKER_STATE: dict = {}


def _init_worker(dictionary: BilingualDictionary, cfg: MiningConfig) -> None:
    _WORKER_STATE["dictionary"] = dictionary
    _WORKER_STATE["cfg"] = cfg


def _align_pair_task(pair: tuple[Document, Document]) -> list[AlignedPair]:
    return align_sentences(pair, _WORKER_STATE["dictionary"], _WORKER_STATE["cfg"])


@dataclass
class MiningStats:
    source_documents: int = 0
    target_documents: int = 0
    document_pairs: int = 0
    source_sentences: int = 0
    aligned_pairs: int = 0
    final_pairs: int = 0
    deduplicated: bool = False  # identical sentence pairs are kept as-is
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "source_documents": self.source_documents,
            "target_documents": self.target_documents,
            "document_pairs": self.document_pairs,
            "source_sentences": self.source_sentences,
            "aligned_pairs": self.aligned_pairs,
            "final_pairs": self.final_pairs,
            "deduplicated": self.deduplicated,
            "config": self.config,
        }


def mine(src_docs: list[Document], tgt_docs: list[Document],
         dictionary: BilingualDictionary, cfg: MiningConfig,
         jobs: int = 1, apply_filter: bool = True) -> tuple[list[AlignedPair], MiningStats]:
    """Full pipeline: title pairing -> sentence alignment -> trigram filter.

    Results are merged in document-pair order, so the output is identical
    for any `jobs` value. `apply_filter=False` stops after thresholding.
    """
    stats = MiningStats(config=cfg.to_dict())
    stats.source_documents = len(src_docs)
    stats.target_documents = len(tgt_docs)

    doc_pairs = align_documents(src_docs, tgt_docs)
    stats.document_pairs = len(doc_pairs)
    stats.source_sentences = sum(len(split_sentences(src.text)) for src, _ in doc_pairs)

    if jobs > 1 and len(doc_pairs) > 1:
        with multiprocessing.Pool(jobs, initializer=_init_worker,
                                  initargs=(dictionary, cfg)) as pool:
            per_pair = pool.map(_align_pair_task, doc_pairs, chunksize=8)
    else:
        per_pair = [align_sentences(p, dictionary, cfg) for p in doc_pairs]

    aligned = [pair for chunk in per_pair for pair in chunk]
    stats.aligned_pairs = len(aligned)

    final = diversity_filter(aligned, cfg) if apply_filter else aligned
    stats.final_pairs = len(final)
    return final, stats


# -- file formats ------------------------------------------------------------

def read_documents(path) -> list[Document]:
    """JSON-lines documents with `id`, `title`, `text` fields."""
    docs = []
    try:
        handle = open(path, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    with handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(path, line_no, f"invalid JSON: {exc.msg}") from exc
            for key in ("id", "title", "text"):
                if key not in obj:
                    raise ParseError(path, line_no, f"missing field {key!r}")
            docs.append(Document(str(obj["id"]), str(obj["title"]), str(obj["text"]),
                                 str(obj.get("language", ""))))
    return docs


def write_corpus(pairs: list[AlignedPair], handle) -> None:
    """TSV: source, target, score, doc_id."""
    for pair in pairs:
        handle.write(
            f"{pair.source_sentence.text}\t{pair.target_sentence.text}"
            f"\t{pair.score:.6f}\t{pair.doc_id}\n"
        )


def read_corpus(path) -> list[AlignedPair]:
    pairs = []
    try:
        handle = open(path, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    with handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line:
                continue
            columns = line.split("\t")
            if len(columns) != 4:
                raise ParseError(path, line_no,
                                 f"expected 4 tab-separated columns, got {len(columns)}")
            source, target, score_text, doc_id = columns
            try:
                score = float(score_text)
            except ValueError:
                raise ParseError(path, line_no, f"bad score {score_text!r}") from None
            pairs.append(AlignedPair(Sentence(source), Sentence(target), score, doc_id))
    return pairs
