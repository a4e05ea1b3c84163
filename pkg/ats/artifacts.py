"""
Project:     Sorani ATS
Name:        ats/artifacts.py
Author:      Sorani ATS contributors
Date:        2025-09-03
Description: Writing pipeline artifact files
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from ats import errors


def write_text(path: str | Path, text: str) -> Path:
    """Write UTF-8 text with LF line endings, creating parent folders."""

    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise errors.IoFailure(f"Cannot write {path}: {exc}") from exc
    return path


def read_text(path: str | Path) -> str:
    """Read a UTF-8 file, raising IoFailure instead of OSError."""

    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise errors.IoFailure(f"Cannot read {path}: {exc}") from exc


def sha256_file(path: str | Path) -> str:
    """Hex digest of a file's bytes."""

    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
