"""
Project:     Sorani ATS
Name:        ats/corpus.py
Author:      Sorani ATS contributors
Date:        2025-09-08
Description: Corpus loading, conclusion stripping, word statistics and splits
"""

from __future__ import annotations

import dataclasses
import decimal
import enum
import io
import logging
import math
import typing as t
from pathlib import Path

import pandas as pd

from ats import artifacts, errors, normalizer

logger = logging.getLogger(__name__)

BODY_FILE = "body.txt"
ABSTRACT_FILE = "abstract.txt"
META_FILE = "conclusion.meta"

SPLIT_COLUMNS = ["doc_id", "department", "body", "abstract"]


class Stage(enum.StrEnum):
    TRAIN = "train"
    VAL = "val"
    TEST = "test"


@dataclasses.dataclass(frozen=True)
class CorpusDocument:
    doc_id: str
    department: str
    body: str
    abstract: str
    conclusion_span: tuple[int, int] | None = None
    """Codepoint offsets of the conclusion section in the body."""

    def __post_init__(self):
        if self.conclusion_span is not None:
            start, end = self.conclusion_span
            if not 0 <= start < end <= len(self.body):
                raise errors.MalformedMeta(
                    self.doc_id,
                    f"span {start}..{end} outside a body of {len(self.body)} chars",
                )


@dataclasses.dataclass(frozen=True)
class LoadedCorpus:
    documents: list[CorpusDocument]
    errors: list[errors.CorpusError]

    @property
    def departments(self) -> list[str]:
        return sorted({doc.department for doc in self.documents})


### Loading ###


def load_corpus(root: str | Path) -> LoadedCorpus:
    """Read `<root>/<department>/<id>/` folders.

    Broken documents are recorded in `errors` and skipped; the rest load.
    """

    root = Path(root)
    if not root.is_dir():
        raise errors.IoFailure(f"Corpus root {root} is not a directory")

    documents: list[CorpusDocument] = []
    failures: list[errors.CorpusError] = []
    seen: dict[str, str] = {}

    for department_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        for doc_dir in sorted(p for p in department_dir.iterdir() if p.is_dir()):
            doc_id = doc_dir.name
            try:
                if doc_id in seen:
                    raise errors.DuplicateDocument(
                        doc_id, f"already loaded from {seen[doc_id]}"
                    )
                document = _load_document(doc_id, department_dir.name, doc_dir)
            except errors.CorpusError as exc:
                logger.warning("Skipping document: %s", exc)
                failures.append(exc)
                continue

            seen[doc_id] = department_dir.name
            documents.append(document)

    logger.info(
        "Loaded %d documents from %s (%d skipped)",
        len(documents),
        root,
        len(failures),
    )
    return LoadedCorpus(documents, failures)


def _load_document(doc_id: str, department: str, doc_dir: Path) -> CorpusDocument:
    body = _read_optional(doc_id, doc_dir / BODY_FILE)
    if not body or not body.strip():
        raise errors.MissingBody(doc_id, f"no {BODY_FILE}")

    abstract = _read_optional(doc_id, doc_dir / ABSTRACT_FILE)
    if not abstract or not abstract.strip():
        raise errors.MissingAbstract(doc_id, f"no {ABSTRACT_FILE}")

    span = None
    meta = _read_optional(doc_id, doc_dir / META_FILE)
    if meta is not None:
        span = _parse_meta(doc_id, meta)

    return CorpusDocument(doc_id, department, body, abstract, span)


def _read_optional(doc_id: str, path: Path) -> str | None:
    """File contents with line endings untouched, so meta offsets stay valid."""

    if not path.is_file():
        return None
    try:
        with path.open(encoding="utf-8", newline="") as handle:
            return handle.read()
    except UnicodeDecodeError as exc:
        raise errors.UnreadableFile(
            doc_id, f"{path.name} is not UTF-8 (byte {exc.start})"
        ) from exc
    except OSError as exc:
        raise errors.UnreadableFile(doc_id, f"cannot read {path.name}: {exc}") from exc


def _parse_meta(doc_id: str, meta: str) -> tuple[int, int]:
    fields = meta.split()
    try:
        start, end = (int(field) for field in fields)
    except ValueError as exc:
        raise errors.MalformedMeta(
            doc_id, f"expected 'START END' offsets, got {meta.strip()!r}"
        ) from exc
    return start, end


### Conclusions ###


def strip_conclusion(document: CorpusDocument) -> CorpusDocument:
    """Excise the conclusion span from the body; the abstract is untouched."""

    if document.conclusion_span is None:
        logger.warning("%s has no conclusion span; left unchanged", document.doc_id)
        return document

    start, end = document.conclusion_span
    return dataclasses.replace(
        document,
        body=document.body[:start] + document.body[end:],
        conclusion_span=None,
    )


def strip_conclusions(
    documents: t.Iterable[CorpusDocument],
) -> tuple[list[CorpusDocument], int]:
    """Strip every document; returns the documents and how many had no span."""

    stripped, missing = [], 0
    for document in documents:
        if document.conclusion_span is None:
            missing += 1
        stripped.append(strip_conclusion(document))
    return stripped, missing


### Statistics ###


@dataclasses.dataclass(frozen=True)
class WordStats:
    departments: dict[str, float]
    """Mean word count per department."""

    overall: float
    """Unweighted mean of the department means."""


def overall_mean(department_means: t.Mapping[str, float]) -> float:
    if not department_means:
        return 0.0
    return float(pd.Series(department_means, dtype="float64").mean())


def _word_stats(rows: t.Iterable[tuple[str, str]]) -> WordStats:
    frame = pd.DataFrame(
        [
            {"department": department, "words": len(normalizer.whitespace_tokens(text))}
            for department, text in rows
        ],
        columns=["department", "words"],
    )
    means = frame.groupby("department", sort=True)["words"].mean()
    departments = {str(k): float(v) for k, v in means.items()}
    return WordStats(departments, overall_mean(departments))


def abstract_word_stats(documents: t.Iterable[CorpusDocument]) -> WordStats:
    return _word_stats((doc.department, doc.abstract) for doc in documents)


@dataclasses.dataclass(frozen=True)
class BodyWordStats:
    with_conclusion: WordStats
    without_conclusion: WordStats

    @property
    def difference(self) -> float:
        return self.with_conclusion.overall - self.without_conclusion.overall


def body_word_stats(documents: t.Iterable[CorpusDocument]) -> BodyWordStats:
    """Mean body length with and without the conclusion section."""

    documents = list(documents)
    stripped = [
        strip_conclusion(doc) if doc.conclusion_span else doc for doc in documents
    ]
    return BodyWordStats(
        with_conclusion=_word_stats((doc.department, doc.body) for doc in documents),
        without_conclusion=_word_stats(
            (doc.department, doc.body) for doc in stripped
        ),
    )


### Splitting ###


@dataclasses.dataclass(frozen=True)
class SplitSpec:
    train: float = 0.70
    val: float = 0.15
    test: float = 0.15
    seed: int = 0

    def __post_init__(self):
        for name in ("train", "val", "test"):
            if not 0 < getattr(self, name) < 1:
                raise ValueError(f"Split ratio {name} must lie in (0, 1)")
        if not math.isclose(self.train + self.val + self.test, 1.0, abs_tol=1e-9):
            raise ValueError("Split ratios must sum to 1")

    @property
    def ratio_label(self) -> str:
        return "/".join(f"{round(r * 100)}" for r in (self.train, self.val, self.test))


def _round_half_up(value: decimal.Decimal) -> int:
    return int(value.quantize(decimal.Decimal(1), rounding=decimal.ROUND_HALF_UP))


def split_counts(n: int, spec: SplitSpec) -> tuple[int, int, int]:
    """(train, val, test) sizes: val and test rounded half up, train the rest.

    Validation and test get at least one document each.
    """

    if n < 3:
        raise errors.TooFewDocuments(f"Splitting needs at least 3 documents, got {n}")

    test = max(1, _round_half_up(decimal.Decimal(str(spec.test)) * n))
    val = max(1, _round_half_up(decimal.Decimal(str(spec.val)) * n))
    return n - val - test, val, test


_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64, a 64-bit generator with published constants."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next() % bound


def fnv1a_64(text: str) -> int:
    digest = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        digest = ((digest ^ byte) * 0x100000001B3) & _MASK64
    return digest


def shuffled(items: t.Sequence[str], seed: int) -> list[str]:
    """Fisher-Yates shuffle of sorted items driven by SplitMix64."""

    items = sorted(items)
    rng = SplitMix64(seed)
    for i in range(len(items) - 1, 0, -1):
        j = rng.below(i + 1)
        items[i], items[j] = items[j], items[i]
    return items


@dataclasses.dataclass(frozen=True)
class DepartmentSplit:
    department: str
    train: tuple[CorpusDocument, ...]
    val: tuple[CorpusDocument, ...]
    test: tuple[CorpusDocument, ...]

    def stage(self, stage: Stage) -> tuple[CorpusDocument, ...]:
        return getattr(self, stage.value)

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.train), len(self.val), len(self.test)


def split_corpus(
    documents: t.Iterable[CorpusDocument],
    spec: SplitSpec,
    out_dir: str | Path | None = None,
) -> dict[str, DepartmentSplit]:
    """Shuffle each department with its own seeded stream and cut it three ways."""

    by_department: dict[str, dict[str, CorpusDocument]] = {}
    for document in documents:
        by_department.setdefault(document.department, {})[document.doc_id] = document

    splits = {}
    for department in sorted(by_department):
        docs = by_department[department]
        train_n, val_n, _ = split_counts(len(docs), spec)
        order = [
            docs[doc_id]
            for doc_id in shuffled(list(docs), spec.seed ^ fnv1a_64(department))
        ]
        splits[department] = DepartmentSplit(
            department,
            train=tuple(order[:train_n]),
            val=tuple(order[train_n : train_n + val_n]),
            test=tuple(order[train_n + val_n :]),
        )
        logger.debug("Split %s into %d/%d/%d", department, *splits[department].counts)

    if out_dir is not None:
        write_splits(splits, out_dir)
    return splits


def write_splits(
    splits: t.Mapping[str, DepartmentSplit], out_dir: str | Path
) -> list[Path]:
    """One CSV per department and stage, UTF-8 with LF line endings."""

    written = []
    for department, split in splits.items():
        for stage in Stage:
            frame = pd.DataFrame(
                [
                    {column: getattr(doc, column) for column in SPLIT_COLUMNS}
                    for doc in split.stage(stage)
                ],
                columns=SPLIT_COLUMNS,
            )
            buffer = io.StringIO()
            frame.to_csv(buffer, index=False, lineterminator="\n")
            written.append(
                artifacts.write_text(
                    Path(out_dir) / f"{department}_{stage}.csv", buffer.getvalue()
                )
            )
    return written
