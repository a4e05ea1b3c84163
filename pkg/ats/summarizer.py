"""
Project:     Sorani ATS
Name:        ats/summarizer.py
Author:      Sorani ATS contributors
Date:        2025-09-06
Description: Full and word-limited extractive summaries and their state files
"""

from __future__ import annotations

import dataclasses
import enum
import logging
from pathlib import Path

import regex

from ats import artifacts, errors, normalizer, preprocessor, scorer

logger = logging.getLogger(__name__)

DEFAULT_WORD_LIMIT = 182


class SummaryKind(enum.StrEnum):
    FULL = "full"
    FINAL = "final"


@dataclasses.dataclass(frozen=True)
class SelectedSentence:
    sentence_index: int
    text: str
    """Original surface text, whitespace collapsed."""

    word_count: int


@dataclasses.dataclass(frozen=True)
class Summary:
    doc_id: str
    kind: SummaryKind
    selected: tuple[SelectedSentence, ...]
    """Always in document order."""

    word_limit: int | None = None

    override: bool = False
    """A lone sentence was kept even though it exceeds the word limit."""

    @property
    def total_words(self) -> int:
        return sum(sentence.word_count for sentence in self.selected)

    @property
    def total_sentences(self) -> int:
        return len(self.selected)

    @property
    def text(self) -> str:
        return "\n".join(sentence.text for sentence in self.selected)


def _select(
    document: preprocessor.ProcessedDocument, score: scorer.SentenceScore
) -> SelectedSentence:
    words = normalizer.whitespace_tokens(
        document.sentences[score.sentence_index].span.text
    )
    return SelectedSentence(score.sentence_index, " ".join(words), len(words))


def extract_full_summary(
    document: preprocessor.ProcessedDocument, scores: list[scorer.SentenceScore]
) -> Summary:
    """Every retained sentence, in document order."""

    selected = sorted(
        (_select(document, s) for s in scores if s.retained),
        key=lambda s: s.sentence_index,
    )
    return Summary(document.doc_id, SummaryKind.FULL, tuple(selected))


def extract_final_summary(
    document: preprocessor.ProcessedDocument,
    scores: list[scorer.SentenceScore],
    word_limit: int = DEFAULT_WORD_LIMIT,
) -> Summary:
    """Greedy fill in rank order, skipping sentences that would overflow.

    When not even the top-ranked sentence fits, it is taken alone and the
    summary is flagged as an override.
    """

    if word_limit < 1:
        raise errors.InvalidLimit(f"Word limit must be at least 1, got {word_limit}")

    candidates = [_select(document, s) for s in scorer.ranked(scores)]
    selected: list[SelectedSentence] = []
    total = 0
    for candidate in candidates:
        if total + candidate.word_count <= word_limit:
            selected.append(candidate)
            total += candidate.word_count

    override = False
    if not selected and candidates:
        selected = [candidates[0]]
        override = True
        logger.debug(
            "%s: top sentence has %d words, over the %d word limit",
            document.doc_id,
            candidates[0].word_count,
            word_limit,
        )

    selected.sort(key=lambda s: s.sentence_index)
    return Summary(
        document.doc_id, SummaryKind.FINAL, tuple(selected), word_limit, override
    )


### Files ###


def write_summary(summary: Summary, path: str | Path) -> Path:
    return artifacts.write_text(
        path, "".join(f"{sentence.text}\n" for sentence in summary.selected)
    )


def write_summary_state(summary: Summary, path: str | Path) -> Path:
    """Write sentence and word counts in a line format read_summary_state parses."""

    limit = "none" if summary.word_limit is None else str(summary.word_limit)
    lines = [
        f"Document: {summary.doc_id}",
        f"Kind: {summary.kind}",
        f"Word limit: {limit}",
    ]
    lines += [
        f"Sentence {position} (index {s.sentence_index}): {s.word_count} words"
        for position, s in enumerate(summary.selected, start=1)
    ]
    lines += [
        f"Total words: {summary.total_words}",
        f"Total sentences: {summary.total_sentences}",
        f"Override: {'yes' if summary.override else 'no'}",
    ]
    return artifacts.write_text(path, "".join(f"{line}\n" for line in lines))


@dataclasses.dataclass(frozen=True)
class SummaryState:
    doc_id: str
    kind: SummaryKind
    word_limit: int | None
    word_counts: tuple[tuple[int, int], ...]
    """(sentence_index, word_count) per selected sentence."""

    total_words: int
    total_sentences: int
    override: bool


_SENTENCE_RE = regex.compile(r"Sentence (\d+) \(index (\d+)\): (\d+) words")


def read_summary_state(path: str | Path) -> SummaryState:
    fields: dict[str, str] = {}
    counts: list[tuple[int, int]] = []
    for line in artifacts.read_text(path).splitlines():
        if match := _SENTENCE_RE.fullmatch(line):
            counts.append((int(match[2]), int(match[3])))
        elif ": " in line:
            key, value = line.split(": ", 1)
            fields[key] = value

    try:
        limit = fields["Word limit"]
        return SummaryState(
            doc_id=fields["Document"],
            kind=SummaryKind(fields["Kind"]),
            word_limit=None if limit == "none" else int(limit),
            word_counts=tuple(counts),
            total_words=int(fields["Total words"]),
            total_sentences=int(fields["Total sentences"]),
            override=fields["Override"] == "yes",
        )
    except (KeyError, ValueError) as exc:
        raise errors.IoFailure(f"{path} is not a summary state file: {exc}") from exc
