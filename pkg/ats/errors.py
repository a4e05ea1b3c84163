"""
Project:     Sorani ATS
Name:        ats/errors.py
Author:      Sorani ATS contributors
Date:        2025-09-02
Description: Exceptions raised by the summarization pipeline
"""

from __future__ import annotations


class ATSError(Exception):
    """Base class for every error the pipeline raises on purpose."""


class MalformedCharMap(ATSError):
    """The character map file could not be parsed or is not idempotent."""


class EmptyCorpus(ATSError):
    """Segmenter training received no tokens."""


class MalformedModel(ATSError):
    """A segmenter model file has the wrong version or schema."""


class IoFailure(ATSError):
    """Reading or writing a pipeline file failed."""


class UnknownDepartment(ATSError):
    """No domain stopword list exists for the requested department."""


class EmptyDocument(ATSError):
    """A document reached scoring without any sentence."""


class InvalidLimit(ATSError):
    """A summary word limit below 1 was requested."""


class MissingReference(ATSError):
    """Evaluation was requested against an empty abstract."""


class TooFewDocuments(ATSError):
    """A department has too few documents to split three ways."""


### Corpus Errors ###


class CorpusError(ATSError):
    """A per-document ingestion problem.

    These are collected while loading a corpus instead of aborting the load.
    """

    def __init__(self, doc_id: str, message: str):
        super().__init__(f"{doc_id}: {message}")
        self.doc_id = doc_id
        """The id of the offending document."""


class MissingBody(CorpusError):
    """The document directory has no body.txt (or it is empty)."""


class MissingAbstract(CorpusError):
    """The document directory has no abstract.txt (or it is empty)."""


class MalformedMeta(CorpusError):
    """The conclusion.meta sidecar is unreadable or out of range."""


class DuplicateDocument(CorpusError):
    """Two departments contain a document with the same id."""


class UnreadableFile(CorpusError):
    """A document file exists but cannot be read as UTF-8."""
