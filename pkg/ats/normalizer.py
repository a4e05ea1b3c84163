"""
Project:     Sorani ATS
Name:        ats/normalizer.py
Author:      Sorani ATS contributors
Date:        2025-09-02
Description: Character standardization, numeral unification and layout repair
"""

from __future__ import annotations

import dataclasses
import typing as t
from pathlib import Path

import regex
from django import conf

from ats import errors

TATWEEL = "\u0640"
ZWNJ = "\u200c"

# Terminal punctuation that may end a line without it being joined to the next.
TERMINALS = ".!?\u061f"

NUMERAL_FAMILIES = {
    "ascii": "0123456789",
    "arabic_indic": "".join(chr(c) for c in range(0x0660, 0x066A)),
    "extended_arabic_indic": "".join(chr(c) for c in range(0x06F0, 0x06FA)),
}

_INLINE_SPACE_RE = regex.compile(r"[^\S\n]+")


@dataclasses.dataclass(frozen=True)
class NormalizationConfig:
    """NormalizationConfig.

    The canonical form every downstream stage sees.
    """

    char_map: t.Mapping[str, str] = dataclasses.field(default_factory=dict)
    """Source character to canonical character."""

    numeral_policy: str = "ascii"
    """Target digit family, a key of NUMERAL_FAMILIES."""

    strip_tatweel: bool = True

    collapse_whitespace: bool = True
    """Collapse runs of spaces and tabs inside a line to one space."""

    preserve_zwnj: bool = True
    """Keep the zero-width non-joiner; it is word-internal in Sorani."""

    def __post_init__(self):
        if self.numeral_policy not in NUMERAL_FAMILIES:
            raise ValueError(f"Unknown numeral policy {self.numeral_policy!r}")

        _check_char_map(self.char_map)

    @property
    def translation_table(self) -> dict[int, str | None]:
        """The str.translate table for standardize_characters."""

        table: dict[int, str | None] = {ord(s): d for s, d in self.char_map.items()}
        if self.strip_tatweel:
            table[ord(TATWEEL)] = None
        if not self.preserve_zwnj:
            table[ord(ZWNJ)] = None
        return table

    @property
    def numeral_table(self) -> dict[int, str]:
        """The str.translate table for unify_numerals."""

        target = NUMERAL_FAMILIES[self.numeral_policy]
        table = {}
        for family in NUMERAL_FAMILIES.values():
            if family == target:
                continue
            table.update({ord(src): dst for src, dst in zip(family, target)})
        return table


def _check_char_map(char_map: t.Mapping[str, str]):
    """Reject maps whose single application is not idempotent."""

    for source, target in char_map.items():
        if len(source) != 1 or len(target) != 1:
            raise errors.MalformedCharMap(
                f"Mapping {source!r} -> {target!r} is not codepoint to codepoint"
            )
        if target in char_map:
            raise errors.MalformedCharMap(
                f"Target U+{ord(target):04X} is also a mapping source"
            )


def load_char_map(path: str | Path) -> dict[str, str]:
    """Load a character map file.

    One `SOURCE_HEX TARGET_HEX` pair per line; `#` starts a comment.
    """

    char_map: dict[str, str] = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise errors.IoFailure(f"Cannot read character map {path}: {exc}") from exc

    for lineno, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue

        fields = line.split()
        if len(fields) != 2:
            raise errors.MalformedCharMap(f"{path}:{lineno}: expected two fields")
        try:
            source, target = (chr(int(field, 16)) for field in fields)
        except ValueError as exc:
            raise errors.MalformedCharMap(f"{path}:{lineno}: {exc}") from exc

        if source in char_map and char_map[source] != target:
            raise errors.MalformedCharMap(
                f"{path}:{lineno}: U+{ord(source):04X} is mapped twice"
            )
        char_map[source] = target

    _check_char_map(char_map)
    return char_map


def default_config() -> NormalizationConfig:
    """Build the configuration named by the ATS_CHARMAP setting."""

    path = getattr(conf.settings, "ATS_CHARMAP", None)
    if path is None:
        return NormalizationConfig()

    return NormalizationConfig(char_map=load_char_map(path))


### Operations ###


def standardize_characters(raw: str, cfg: NormalizationConfig) -> str:
    """Apply the character map, dropping tatweel when configured."""

    return raw.translate(cfg.translation_table)


def unify_numerals(raw: str, cfg: NormalizationConfig) -> str:
    """Map every digit to the configured family, digit by digit."""

    return raw.translate(cfg.numeral_table)


def repair_layout(raw: str) -> str:
    """Undo the line-break damage PDF conversion leaves behind.

    Lines are trimmed, blank-line runs collapse to one blank line, and a
    line that does not end in terminal punctuation is joined to the next
    content line with a space.
    """

    parts: list[str] = []
    blank = False
    for line in raw.replace("\r\n", "\n").split("\n"):
        line = line.strip()
        if not line:
            blank = True
            continue

        if parts:
            if parts[-1][-1] not in TERMINALS:
                parts.append(" ")
            else:
                parts.append("\n\n" if blank else "\n")
        parts.append(line)
        blank = False

    return "".join(parts)


def collapse_whitespace(raw: str) -> str:
    """Collapse runs of inline whitespace (not newlines) to one space."""

    return _INLINE_SPACE_RE.sub(" ", raw)


def normalize(raw: str, cfg: NormalizationConfig, keep_layout: bool = False) -> str:
    """Run the full normalization chain."""

    text = standardize_characters(raw, cfg)
    text = unify_numerals(text, cfg)
    if cfg.collapse_whitespace:
        text = collapse_whitespace(text)
    if not keep_layout:
        text = repair_layout(text)
    return text


def whitespace_tokens(text: str) -> list[str]:
    """Split text into words.

    A word is a whitespace-delimited token with its punctuation attached.
    Summary word counts, abstract statistics and ROUGE all count this way.
    """

    return text.split()
