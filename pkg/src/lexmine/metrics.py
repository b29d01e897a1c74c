"""Self-contained evaluation metrics.

ROUGE-1 F1 with clipped unigram overlap, corpus-level 4-gram BLEU with
exponential zero-count smoothing and brevity penalty, Pearson correlation,
human-judgment aggregation, and descriptive corpus statistics. No external
metric packages; everything here is recomputable by hand.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import InputError, UndefinedStatisticError
from .textproc import Sentence, Token, is_punctuation

BLEU_MAX_ORDER = 4


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float
    overlap_count: int
    candidate_count: int
    reference_count: int


def rouge1_f1(candidate: list[Token], reference: list[Token]) -> RougeScore:
    """Unigram-overlap F1 with clipped (multiset-min) counts."""
    cand_counts = Counter(candidate)
    ref_counts = Counter(reference)
    overlap = sum(min(cnt, ref_counts[tok]) for tok, cnt in cand_counts.items())
    precision = overlap / len(candidate) if candidate else 0.0
    recall = overlap / len(reference) if reference else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return RougeScore(precision, recall, f1, overlap, len(candidate), len(reference))


@dataclass(frozen=True)
class BleuReport:
    bleu: float                      # 0..100
    ngram_precisions: tuple[float, ...]
    brevity_penalty: float
    hyp_length: int
    ref_length: int
    zero_length: bool = False
    lowercased: bool = False

    def to_dict(self) -> dict:
        return {
            "bleu": self.bleu,
            "precisions": list(self.ngram_precisions),
            "bp": self.brevity_penalty,
            "hyp_len": self.hyp_length,
            "ref_len": self.ref_length,
            "zero_length": self.zero_length,
            "lowercased": self.lowercased,
        }


def _ngram_counts(tokens: list[Token], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu_segment_counts(hyp: list[Token], ref: list[Token]
                        ) -> tuple[list[int], list[int], int, int]:
    """Clipped n-gram matches and totals for one segment.

    Corpus BLEU is a pure sum of these per-segment integer counts, so they
    can be computed in any order (or in parallel) and added up.
    """
    correct = [0] * BLEU_MAX_ORDER
    total = [0] * BLEU_MAX_ORDER
    for n in range(1, BLEU_MAX_ORDER + 1):
        if len(hyp) < n:
            break
        hyp_counts = _ngram_counts(hyp, n)
        ref_counts = _ngram_counts(ref, n)
        total[n - 1] = len(hyp) - n + 1
        correct[n - 1] = sum(min(c, ref_counts[g]) for g, c in hyp_counts.items())
    return correct, total, len(hyp), len(ref)


def bleu_from_counts(correct: list[int], total: list[int], hyp_len: int,
                     ref_len: int, lowercase: bool = False) -> BleuReport:
    """Assemble the corpus score from pooled per-segment counts."""
    if hyp_len == 0:
        return BleuReport(0.0, (0.0,) * BLEU_MAX_ORDER, 0.0, 0, ref_len,
                          zero_length=True, lowercased=lowercase)

    precisions = [0.0] * BLEU_MAX_ORDER
    log_sum = 0.0
    effective_orders = 0
    smooth = 1.0
    for n in range(1, BLEU_MAX_ORDER + 1):
        if total[n - 1] == 0:
            continue
        effective_orders += 1
        if correct[n - 1] == 0:
            smooth *= 2.0
            precisions[n - 1] = 1.0 / (smooth * total[n - 1])
        else:
            precisions[n - 1] = correct[n - 1] / total[n - 1]
        log_sum += math.log(precisions[n - 1])

    bp = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    score = 100.0 * bp * math.exp(log_sum / effective_orders)
    return BleuReport(score, tuple(precisions), bp, hyp_len, ref_len,
                      lowercased=lowercase)


def bleu(hypotheses: list[list[Token]], references: list[list[Token]],
         lowercase: bool = False) -> BleuReport:
    """Corpus-level BLEU over 1..4-grams with a single reference per segment.

    Clipped n-gram matches and totals are pooled over the whole corpus.
    Zero *matched* counts use exponential smoothing: the k-th zero order
    contributes 1/(2^k * pooled_total_n). Orders with no hypothesis n-grams
    at all (every segment shorter than n) are left out of the geometric
    mean so that a corpus compared against itself always scores 100.
    """
    if len(hypotheses) != len(references):
        raise InputError(
            f"hypothesis/reference counts differ: {len(hypotheses)} vs {len(references)}")
    if not hypotheses:
        raise InputError("at least one hypothesis is required")
    if lowercase:
        hypotheses = [[t.lower() for t in h] for h in hypotheses]
        references = [[t.lower() for t in r] for r in references]

    correct = [0] * BLEU_MAX_ORDER
    total = [0] * BLEU_MAX_ORDER
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hypotheses, references):
        seg_correct, seg_total, seg_hyp, seg_ref = bleu_segment_counts(hyp, ref)
        hyp_len += seg_hyp
        ref_len += seg_ref
        for n in range(BLEU_MAX_ORDER):
            correct[n] += seg_correct[n]
            total[n] += seg_total[n]

    return bleu_from_counts(correct, total, hyp_len, ref_len, lowercase=lowercase)


def raw_copy_baseline(source: list[list[Token]], target: list[list[Token]],
                      lowercase: bool = False) -> BleuReport:
    """BLEU of copying the source unchanged; the no-translation baseline."""
    return bleu(source, target, lowercase=lowercase)


def pearson(x: list[float], y: list[float]) -> float:
    """Product-moment correlation; errors on degenerate input."""
    if len(x) != len(y):
        raise InputError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise InputError("pearson needs at least 2 observations")
    mx = sum(x) / len(x)
    my = sum(y) / len(y)
    cov = sum((a - mx) * (b - my) for a, b in zip(x, y))
    var_x = sum((a - mx) ** 2 for a in x)
    var_y = sum((b - my) ** 2 for b in y)
    if var_x == 0.0 or var_y == 0.0:
        raise UndefinedStatisticError("pearson is undefined: zero variance")
    return cov / math.sqrt(var_x * var_y)


@dataclass(frozen=True)
class JudgmentSummary:
    mean_score: float       # mean of per-item annotator averages
    pearson: float | None   # None when undefined (zero variance)
    pearson_defined: bool
    items: int

    def to_dict(self) -> dict:
        return {
            "mean_score": self.mean_score,
            "pearson": self.pearson,
            "pearson_defined": self.pearson_defined,
            "items": self.items,
        }


def judgment_summary(scores_a: list[int], scores_b: list[int]) -> JudgmentSummary:
    """Aggregate two annotators' 1-5 judgments: averaged mean + agreement."""
    if len(scores_a) != len(scores_b):
        raise InputError(f"length mismatch: {len(scores_a)} vs {len(scores_b)}")
    if len(scores_a) < 2:
        raise InputError("judgment summary needs at least 2 items")
    for s in list(scores_a) + list(scores_b):
        if not isinstance(s, int) or not 1 <= s <= 5:
            raise InputError(f"scores must be integers in 1..5, got {s!r}")
    mean_score = sum((a + b) / 2 for a, b in zip(scores_a, scores_b)) / len(scores_a)
    try:
        corr = pearson([float(s) for s in scores_a], [float(s) for s in scores_b])
        return JudgmentSummary(mean_score, corr, True, len(scores_a))
    except UndefinedStatisticError:
        return JudgmentSummary(mean_score, None, False, len(scores_a))


@dataclass(frozen=True)
class SideStats:
    sentences: int
    mean_words: float
    std_words: float
    mean_chars: float
    std_chars: float
    vocab_size: int

    def to_dict(self) -> dict:
        return {
            "sentences": self.sentences,
            "mean_words": self.mean_words,
            "std_words": self.std_words,
            "mean_chars": self.mean_chars,
            "std_chars": self.std_chars,
            "vocab_size": self.vocab_size,
        }


@dataclass(frozen=True)
class CorpusStats:
    side_a: SideStats
    side_b: SideStats
    overlapping_vocab: int
    empty: bool

    def to_dict(self) -> dict:
        return {
            "side_a": self.side_a.to_dict(),
            "side_b": self.side_b.to_dict(),
            "overlapping_vocab": self.overlapping_vocab,
            "empty": self.empty,
            "std_kind": "population",
        }


def _side_stats(sentences: list[Sentence]) -> tuple[SideStats, set[str]]:
    vocab: set[str] = set()
    word_counts = []
    char_counts = []
    for sent in sentences:
        tokens = sent.tokens()
        word_counts.append(len(tokens))
        char_counts.append(len(sent.text))
        vocab.update(t.lower() for t in tokens if not is_punctuation(t))
    if not sentences:
        return SideStats(0, 0.0, 0.0, 0.0, 0.0, 0), vocab
    words = np.asarray(word_counts, dtype=float)
    chars = np.asarray(char_counts, dtype=float)
    return SideStats(
        sentences=len(sentences),
        mean_words=float(words.mean()),
        std_words=float(words.std()),  # population std
        mean_chars=float(chars.mean()),
        std_chars=float(chars.std()),
        vocab_size=len(vocab),
    ), vocab


def corpus_stats(side_a: list[Sentence], side_b: list[Sentence]) -> CorpusStats:
    """Per-side length statistics plus vocabulary overlap."""
    stats_a, vocab_a = _side_stats(side_a)
    stats_b, vocab_b = _side_stats(side_b)
    return CorpusStats(
        side_a=stats_a,
        side_b=stats_b,
        overlapping_vocab=len(vocab_a & vocab_b),
        empty=not side_a and not side_b,
    )
