"""
Project:     Sorani ATS
Name:        ats/scorer.py
Author:      Sorani ATS contributors
Date:        2025-09-05
Description: Sentence weighting, bottom-half pruning and in-document TF-IDF
"""

from __future__ import annotations

import collections
import dataclasses
import math
import typing as t
from pathlib import Path

from ats import artifacts, errors, preprocessor


@dataclasses.dataclass
class SentenceScore:
    """SentenceScore.

    `tfidf` and `rank` are set only on retained sentences.
    """

    sentence_index: int
    weight: float
    retained: bool = False
    tfidf: float | None = None
    rank: int | None = None


def format_score(value: float) -> str:
    return f"{value:.3f}"


### Stages ###


def sentence_weights(document: preprocessor.ProcessedDocument) -> list[SentenceScore]:
    """Mean normalized stem frequency of each sentence's terms."""

    if not document.sentences:
        raise errors.EmptyDocument(f"{document.doc_id} has no sentences")

    freq = collections.Counter(
        term for sentence in document.sentences for term in sentence.terms
    )
    max_freq = max(freq.values(), default=0)

    scores = []
    for index, sentence in enumerate(document.sentences):
        terms = sentence.terms
        if not terms or not max_freq:
            weight = 0.0
        else:
            # Integer numerator and denominator: one rounding step.
            weight = sum(freq[term] for term in terms) / (max_freq * len(terms))
        scores.append(SentenceScore(index, weight))
    return scores


def prune_bottom_half(scores: list[SentenceScore]) -> list[SentenceScore]:
    """Retain the ceil(n/2) heaviest sentences; earlier sentences win ties."""

    keep = math.ceil(len(scores) / 2)
    ordered = sorted(scores, key=lambda s: (-s.weight, s.sentence_index))
    survivors = {score.sentence_index for score in ordered[:keep]}
    for score in scores:
        score.retained = score.sentence_index in survivors
        if not score.retained:
            score.tfidf = score.rank = None
    return scores


def tfidf_scores(
    document: preprocessor.ProcessedDocument, scores: list[SentenceScore]
) -> list[SentenceScore]:
    """Score retained sentences by TF-IDF over the retained sentences only."""

    retained = [score for score in scores if score.retained]
    bags = {
        score.sentence_index: collections.Counter(
            document.sentences[score.sentence_index].terms
        )
        for score in retained
    }
    df = collections.Counter(term for bag in bags.values() for term in bag)
    total = len(retained)

    for score in retained:
        bag = bags[score.sentence_index]
        length = sum(bag.values())
        if not length:
            score.tfidf = 0.0
            continue
        weight = sum(
            (count / length) * math.log(total / df[term]) for term, count in bag.items()
        )
        score.tfidf = weight / length
    return scores


def rank_descending(scores: list[SentenceScore]) -> list[SentenceScore]:
    """Retained sentences by descending TF-IDF, ranks assigned from 1."""

    ranked = sorted(
        (score for score in scores if score.retained),
        key=lambda s: (-(s.tfidf or 0.0), s.sentence_index),
    )
    for rank, score in enumerate(ranked, start=1):
        score.rank = rank
    return ranked


def score_document(document: preprocessor.ProcessedDocument) -> list[SentenceScore]:
    """Run every scoring stage; returns all scores in document order."""

    scores = prune_bottom_half(sentence_weights(document))
    tfidf_scores(document, scores)
    rank_descending(scores)
    return scores


def ranked(scores: t.Iterable[SentenceScore]) -> list[SentenceScore]:
    return sorted((s for s in scores if s.retained), key=lambda s: s.rank)


### Artifacts ###


def write_scoring_artifacts(
    document: preprocessor.ProcessedDocument,
    scores: list[SentenceScore],
    out_dir: str | Path,
) -> list[Path]:
    out_dir = Path(out_dir)
    doc_id = document.doc_id

    def block(score: SentenceScore, label: str, value: float) -> str:
        line = document.sentences[score.sentence_index].line
        return f"Sentence: {line}\n{label}: {format_score(value)}\n"

    weights = "".join(block(s, "Weight", s.weight) for s in scores)
    in_order = "".join(
        block(s, "TF-IDF Weight", s.tfidf or 0.0) for s in scores if s.retained
    )
    by_rank = "".join(
        block(s, "TF-IDF Weight", s.tfidf or 0.0) for s in ranked(scores)
    )

    return [
        artifacts.write_text(
            out_dir / f"Processed_Sentence_Weight_{doc_id}.txt", weights
        ),
        artifacts.write_text(out_dir / f"Processed_TF-IDF_{doc_id}.txt", in_order),
        artifacts.write_text(out_dir / f"Sorted_TF-IDF_{doc_id}.txt", by_rank),
    ]
