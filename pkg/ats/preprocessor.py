"""
Project:     Sorani ATS
Name:        ats/preprocessor.py
Author:      Sorani ATS contributors
Date:        2025-09-04
Description: Tokenization, light stemming and two-tier stopword removal
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import json
import logging
import typing as t
from pathlib import Path
from xml.etree import ElementTree

import regex
from django import conf

from ats import artifacts, errors, normalizer, segmenter

logger = logging.getLogger(__name__)

_TOKEN_RE = regex.compile(
    r"\d+(?:[.,\u066b]\d+)+|[^\s\p{P}]+(?:[-\u2010][^\s\p{P}]+)*|\p{P}"
)
_PUNCT_RE = regex.compile(r"\p{P}+")

GENERAL_LIST = "general.json"


class StopwordSource(enum.StrEnum):
    NONE = "none"
    GENERAL = "general"
    DOMAIN = "domain"


def is_punctuation(surface: str) -> bool:
    return bool(_PUNCT_RE.fullmatch(surface))


@dataclasses.dataclass(frozen=True)
class Token:
    """A token of one sentence."""

    surface: str
    stem: str
    sentence_index: int
    stopword_source: StopwordSource = StopwordSource.NONE

    @property
    def is_stopword(self) -> bool:
        return self.stopword_source is not StopwordSource.NONE

    @property
    def is_punctuation(self) -> bool:
        return is_punctuation(self.surface)

    @property
    def marked(self) -> str:
        """Artifact rendering: `_stem_`, punctuation bare."""

        return self.surface if self.is_punctuation else f"_{self.stem}_"


### Stemming ###


@dataclasses.dataclass(frozen=True)
class LightStemmer:
    """LightStemmer.

    Strips inflectional suffixes, longest first, ties resolved by inventory
    order. At most `max_strips` suffixes come off and a strip only happens
    when at least `min_stem` codepoints remain.
    """

    suffixes: tuple[str, ...]
    max_strips: int = 2
    min_stem: int = 2

    def __post_init__(self):
        ordered = tuple(sorted(self.suffixes, key=len, reverse=True))
        object.__setattr__(self, "suffixes", ordered)

    @classmethod
    def from_file(cls, path: str | Path) -> LightStemmer:
        """Load a suffix inventory, one suffix per line, `#` comments."""

        suffixes = []
        for line in artifacts.read_text(path).splitlines():
            line = line.split("#", 1)[0].strip()
            if line and line not in suffixes:
                suffixes.append(line)
        return cls(tuple(suffixes))

    def stem(self, surface: str) -> str:
        if not surface or is_punctuation(surface):
            return surface

        stem = surface
        for _ in range(self.max_strips):
            for suffix in self.suffixes:
                if stem.endswith(suffix) and len(stem) - len(suffix) >= self.min_stem:
                    stem = stem[: -len(suffix)]
                    break
            else:
                break
        return stem


@functools.cache
def _stemmer_from(path: str) -> LightStemmer:
    return LightStemmer.from_file(path)


def get_stemmer() -> LightStemmer:
    """The stemmer for the ATS_SUFFIXES inventory."""

    path = getattr(conf.settings, "ATS_SUFFIXES", None)
    if path is None:
        return LightStemmer(())
    return _stemmer_from(str(path))


def stem(surface: str, stemmer: LightStemmer | None = None) -> str:
    return (stemmer or get_stemmer()).stem(surface)


def tokenize(sentence: str) -> list[str]:
    """Split a sentence into word, number and punctuation tokens.

    Decimal numbers and hyphenated compounds stay whole; ZWNJ is
    word-internal.
    """

    return _TOKEN_RE.findall(sentence)


### Stopwords ###


@dataclasses.dataclass(frozen=True)
class StopwordList:
    """General and per-department stopwords, held as stems."""

    general: frozenset[str] = frozenset()
    domain: t.Mapping[str, frozenset[str]] = dataclasses.field(default_factory=dict)

    def lookup(self, stem: str, department: str) -> StopwordSource:
        if stem in self.general:
            return StopwordSource.GENERAL
        if stem in self.domain.get(department, ()):
            return StopwordSource.DOMAIN
        return StopwordSource.NONE

    @classmethod
    def load(
        cls,
        directory: str | Path,
        cfg: normalizer.NormalizationConfig | None = None,
        stemmer: LightStemmer | None = None,
    ) -> StopwordList:
        """Load `general.json` and one JSON list per department.

        Entries are normalized and stemmed so they match token stems.
        """

        cfg = cfg or normalizer.NormalizationConfig()
        stemmer = stemmer or get_stemmer()
        directory = Path(directory)

        def canonical(words: list[str]) -> frozenset[str]:
            stems = set()
            for word in words:
                word = normalizer.normalize(word, cfg).strip()
                if word:
                    stems.add(stemmer.stem(word))
            return frozenset(stems)

        general: frozenset[str] = frozenset()
        domain: dict[str, frozenset[str]] = {}
        for path in sorted(directory.glob("*.json")):
            department, words = _read_stopword_file(path)
            if path.name == GENERAL_LIST:
                general = canonical(words)
            else:
                domain[department] = canonical(words)

        logger.debug(
            "Loaded %d general stopwords and %d department lists from %s",
            len(general),
            len(domain),
            directory,
        )
        return cls(general=general, domain=domain)

    @classmethod
    def from_settings(cls) -> StopwordList:
        return cls.load(
            conf.settings.ATS_STOPWORD_DIR,
            normalizer.default_config(),
            get_stemmer(),
        )


def _read_stopword_file(path: Path) -> tuple[str, list[str]]:
    try:
        data = json.loads(artifacts.read_text(path))
    except json.JSONDecodeError as exc:
        raise errors.IoFailure(f"{path} is not valid JSON: {exc}") from exc

    words = data.get("stopwords") if isinstance(data, dict) else None
    if not isinstance(words, list) or not all(isinstance(w, str) for w in words):
        raise errors.IoFailure(f"{path} has no list of stopwords")
    return str(data.get("department", path.stem)), words


def check_department(lists: StopwordList, department: str, strict: bool = True):
    """Fail, or warn and fall back to general stopwords, on unknown departments."""

    if department in lists.domain:
        return
    if strict:
        raise errors.UnknownDepartment(f"No stopword list for {department!r}")
    logger.warning(
        "No stopword list for %r; using general stopwords only", department
    )


def annotate_stopwords(
    tokens: t.Iterable[Token], lists: StopwordList, department: str
) -> list[Token]:
    annotated = []
    for token in tokens:
        source = (
            StopwordSource.NONE
            if token.is_punctuation
            else lists.lookup(token.stem, department)
        )
        annotated.append(dataclasses.replace(token, stopword_source=source))
    return annotated


def remove_stopwords(
    tokens: t.Iterable[Token],
    lists: StopwordList,
    department: str,
    strict: bool = True,
) -> tuple[list[Token], list[tuple[str, StopwordSource]]]:
    """Split tokens into kept tokens and the ordered removal log."""

    check_department(lists, department, strict)
    kept, removed = [], []
    for token in annotate_stopwords(tokens, lists, department):
        if token.is_stopword:
            removed.append((token.surface, token.stopword_source))
        else:
            kept.append(token)
    return kept, removed


### Documents ###


@dataclasses.dataclass(frozen=True)
class ProcessedSentence:
    span: segmenter.SentenceSpan
    tokens: tuple[Token, ...]
    """Every token, stopwords included."""

    @property
    def kept(self) -> list[Token]:
        return [token for token in self.tokens if not token.is_stopword]

    @property
    def terms(self) -> list[str]:
        """Stems of kept, non-punctuation tokens."""

        return [tok.stem for tok in self.kept if not tok.is_punctuation]

    @property
    def line(self) -> str:
        return " ".join(token.marked for token in self.kept)


@dataclasses.dataclass(frozen=True)
class ProcessedDocument:
    doc_id: str
    department: str
    sentences: tuple[ProcessedSentence, ...]
    removed_stopwords: tuple[tuple[str, StopwordSource], ...]

    @property
    def counts(self) -> dict[str, int]:
        return {
            "tokens": sum(len(s.tokens) for s in self.sentences),
            "removed": len(self.removed_stopwords),
        }


def preprocess_document(
    doc_id: str,
    department: str,
    text: str,
    model: segmenter.SegmenterModel,
    lists: StopwordList,
    *,
    stemmer: LightStemmer | None = None,
    strict_departments: bool = True,
    out_dir: str | Path | None = None,
) -> ProcessedDocument:
    """Segment, tokenize, stem and filter one normalized document."""

    stemmer = stemmer or get_stemmer()
    check_department(lists, department, strict_departments)

    sentences = []
    removed: list[tuple[str, StopwordSource]] = []
    for index, span in enumerate(segmenter.segment(model, text)):
        tokens = annotate_stopwords(
            (Token(s, stemmer.stem(s), index) for s in tokenize(span.text)),
            lists,
            department,
        )
        removed.extend(
            (tok.surface, tok.stopword_source) for tok in tokens if tok.is_stopword
        )
        sentences.append(ProcessedSentence(span, tuple(tokens)))

    document = ProcessedDocument(doc_id, department, tuple(sentences), tuple(removed))
    logger.debug(
        "Preprocessed %s: %d sentences, %d stopwords removed",
        doc_id,
        len(document.sentences),
        len(removed),
    )
    if out_dir is not None:
        write_preprocessing_artifacts(document, out_dir)
    return document


def write_preprocessing_artifacts(
    document: ProcessedDocument, out_dir: str | Path
) -> list[Path]:
    """Write the processed text, XML, stopword debug log and token list."""

    out_dir = Path(out_dir)
    doc_id = document.doc_id
    lines = [sentence.line for sentence in document.sentences]

    root = ElementTree.Element("doc", id=doc_id)
    for line in lines:
        ElementTree.SubElement(root, "s").text = line
    ElementTree.indent(root, space="  ")
    xml = ElementTree.tostring(root, encoding="unicode")

    removed = " , ".join(surface for surface, _ in document.removed_stopwords)
    debug = (
        f"Stop words removed one by one: ({removed})\n"
        f"Number of stop words removed: {len(document.removed_stopwords)}\n"
    )
    tokens = "".join(
        f"{token.marked}\n" for s in document.sentences for token in s.tokens
    )

    return [
        artifacts.write_text(out_dir / f"Processed_{doc_id}.txt", _lines(lines)),
        artifacts.write_text(
            out_dir / f"Processed_{doc_id}.xml",
            f'<?xml version="1.0" encoding="UTF-8"?>\n{xml}\n',
        ),
        artifacts.write_text(out_dir / f"Debug_{doc_id}.txt", debug),
        artifacts.write_text(out_dir / f"Processed_{doc_id}_tokens.txt", tokens),
    ]


def _lines(lines: t.Iterable[str]) -> str:
    return "".join(f"{line}\n" for line in lines)
