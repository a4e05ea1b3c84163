"""
Project:     Sorani ATS
Name:        ats/segmenter.py
Author:      Sorani ATS contributors
Date:        2025-09-03
Description: Trainable Punkt sentence segmentation with a portable model file
"""

from __future__ import annotations

import dataclasses
import functools
import json
import logging
import math
import typing as t
from pathlib import Path

from nltk.tokenize import punkt

from ats import errors

logger = logging.getLogger(__name__)

MODEL_VERSION = 1


class SoraniLanguageVars(punkt.PunktLanguageVars):
    """Punkt language variables for Sorani.

    The Arabic question mark ends a sentence; the Arabic comma is
    sentence-internal punctuation, like the Latin comma.
    """

    sent_end_chars = (".", "?", "!", "\u061f")
    internal_punctuation = ",:;\u060c"


@dataclasses.dataclass(frozen=True)
class SegmenterParams:
    """Punkt decision thresholds."""

    abbrev_threshold: float = 0.3
    colloc_threshold: float = 7.88
    starter_threshold: float = 30.0

    def __post_init__(self):
        for field in dataclasses.fields(self):
            if getattr(self, field.name) <= 0:
                raise ValueError(f"{field.name} must be positive")


@dataclasses.dataclass(frozen=True)
class SentenceSpan:
    """A sentence located in its source text by codepoint offsets."""

    start: int
    end: int
    """Exclusive end offset."""

    text: str


@dataclasses.dataclass(frozen=True)
class SegmenterModel:
    """SegmenterModel.

    The evidence Punkt learned from a corpus. Segmentation consults nothing
    but these fields and the Sorani punctuation rules.
    """

    abbreviations: frozenset[str] = frozenset()
    """Lowercased types judged to be abbreviations when period-final."""

    collocations: frozenset[tuple[str, str]] = frozenset()
    """Type pairs spanning a period that suppress a boundary."""

    sentence_starters: frozenset[str] = frozenset()
    """Types that frequently begin sentences."""

    type_counts: t.Mapping[str, int] = dataclasses.field(default_factory=dict)
    """Training frequency of each type, final period folded in."""

    ortho_context: t.Mapping[str, int] = dataclasses.field(default_factory=dict)
    """Punkt's orthographic-context flags per type."""

    params: SegmenterParams = dataclasses.field(default_factory=SegmenterParams)

    @functools.cached_property
    def tokenizer(self) -> punkt.PunktSentenceTokenizer:
        """An NLTK tokenizer wired to this model's evidence."""

        punkt_params = punkt.PunktParameters()
        punkt_params.abbrev_types = set(self.abbreviations)
        punkt_params.collocations = set(self.collocations)
        punkt_params.sent_starters = set(self.sentence_starters)
        for typ, flags in self.ortho_context.items():
            punkt_params.ortho_context[typ] = flags

        return punkt.PunktSentenceTokenizer(
            punkt_params, lang_vars=SoraniLanguageVars()
        )

    def __getstate__(self):
        state = self.__dict__.copy()
        state.pop("tokenizer", None)
        return state

    def to_dict(self) -> dict[str, t.Any]:
        """The model file payload, with every collection sorted."""

        return {
            "version": MODEL_VERSION,
            "params": dataclasses.asdict(self.params),
            "abbreviations": sorted(self.abbreviations),
            "collocations": [list(pair) for pair in sorted(self.collocations)],
            "sentence_starters": sorted(self.sentence_starters),
            "type_counts": dict(sorted(self.type_counts.items())),
            "ortho_context": dict(sorted(self.ortho_context.items())),
        }

    @classmethod
    def from_dict(cls, data: t.Any) -> SegmenterModel:
        """Rebuild a model from a model file payload."""

        if not isinstance(data, dict):
            raise errors.MalformedModel("Model payload is not an object")
        if data.get("version") != MODEL_VERSION:
            raise errors.MalformedModel(
                f"Unsupported model version {data.get('version')!r}"
            )

        try:
            return cls(
                abbreviations=frozenset(_strings(data["abbreviations"])),
                collocations=frozenset(
                    (str(first), str(second))
                    for first, second in data["collocations"]
                ),
                sentence_starters=frozenset(_strings(data["sentence_starters"])),
                type_counts={str(k): int(v) for k, v in data["type_counts"].items()},
                ortho_context={
                    str(k): int(v) for k, v in data.get("ortho_context", {}).items()
                },
                params=SegmenterParams(**data["params"]),
            )
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise errors.MalformedModel(f"Malformed model payload: {exc}") from exc


def _strings(items: t.Any) -> list[str]:
    if not isinstance(items, list):
        raise TypeError("expected a list")
    return [str(item) for item in items]


### Training ###


def _xlogp(count: float, p: float) -> float:
    """count * log(p), with 0 * log(0) taken as 0."""

    if count == 0:
        return 0.0
    if p <= 0:
        return -math.inf
    return count * math.log(p)


class SoraniPunktTrainer(punkt.PunktTrainer):
    """PunktTrainer with per-instance thresholds.

    Also survives corpora where every token is period-final, which drive the
    abbreviation statistic to log(0) in the stock trainer.
    """

    def __init__(self, params: SegmenterParams):
        super().__init__(lang_vars=SoraniLanguageVars())
        self.ABBREV = params.abbrev_threshold
        self.COLLOCATION = params.colloc_threshold
        self.SENT_STARTER = params.starter_threshold

    @staticmethod
    def _dunning_log_likelihood(count_a, count_b, count_ab, N):
        p1 = count_b / N
        p2 = 0.99

        null_hypo = _xlogp(count_ab, p1) + _xlogp(count_a - count_ab, 1.0 - p1)
        alt_hypo = _xlogp(count_ab, p2) + _xlogp(count_a - count_ab, 1.0 - p2)

        return -2.0 * (null_hypo - alt_hypo)

    def type_counts(self) -> dict[str, int]:
        """Type frequencies with a final period folded into the bare type."""

        counts: dict[str, int] = {}
        for typ, count in self._type_fdist.items():
            if not typ:
                continue
            if typ.endswith(".") and len(typ) > 1:
                typ = typ[:-1]
            counts[typ] = counts.get(typ, 0) + count
        return counts


def train_segmenter(
    corpus: t.Iterable[str], params: SegmenterParams | None = None
) -> SegmenterModel:
    """Learn abbreviations, collocations and sentence starters from a corpus."""

    params = params or SegmenterParams()
    texts = list(corpus)
    if not any(text.split() for text in texts):
        raise errors.EmptyCorpus("The training corpus contains no tokens")

    trainer = SoraniPunktTrainer(params)
    for text in texts:
        trainer.train(text, finalize=False)
    trainer.finalize_training()
    learned = trainer.get_params()

    model = SegmenterModel(
        abbreviations=frozenset(learned.abbrev_types),
        collocations=frozenset(learned.collocations),
        sentence_starters=frozenset(learned.sent_starters),
        type_counts=trainer.type_counts(),
        ortho_context={
            typ: flags for typ, flags in learned.ortho_context.items() if flags
        },
        params=params,
    )
    logger.info(
        "Trained segmenter on %d texts: %d abbreviations, %d collocations, "
        "%d sentence starters",
        len(texts),
        len(model.abbreviations),
        len(model.collocations),
        len(model.sentence_starters),
    )
    return model


### Segmentation ###


def segment(model: SegmenterModel, text: str) -> list[SentenceSpan]:
    """Split text into sentence spans.

    Spans are trimmed of surrounding whitespace, so the gaps between them
    hold only whitespace. Text without a terminal yields one span.
    """

    spans = []
    for start, end in model.tokenizer.span_tokenize(text):
        chunk = text[start:end]
        start += len(chunk) - len(chunk.lstrip())
        end -= len(chunk) - len(chunk.rstrip())
        if start < end:
            spans.append(SentenceSpan(start, end, text[start:end]))
    return spans


### Persistence ###


def save_model(model: SegmenterModel, path: str | Path):
    """Write a model as versioned, key-sorted UTF-8 JSON."""

    payload = json.dumps(model.to_dict(), ensure_ascii=False, indent=2, sort_keys=True)
    try:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(payload + "\n", encoding="utf-8")
    except OSError as exc:
        raise errors.IoFailure(f"Cannot write segmenter model {path}: {exc}") from exc


def load_model(path: str | Path) -> SegmenterModel:
    """Read a model written by save_model."""

    try:
        payload = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise errors.IoFailure(f"Cannot read segmenter model {path}: {exc}") from exc

    try:
        data = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise errors.MalformedModel(f"{path} is not a model file: {exc}") from exc

    return SegmenterModel.from_dict(data)
