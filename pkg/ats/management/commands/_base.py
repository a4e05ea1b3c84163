"""
Project:     Sorani ATS
Name:        ats/management/commands/_base.py
Author:      Sorani ATS contributors
Date:        2025-09-12
Description: Shared plumbing for the pipeline management commands
"""

from __future__ import annotations

from pathlib import Path

from django import conf
from django.core.management.base import BaseCommand, CommandError

from ats import artifacts, corpus, errors, normalizer, preprocessor, segmenter


class PipelineCommand(BaseCommand):
    """A command whose pipeline errors exit non-zero with a clean message."""

    def handle(self, *args, **options):
        try:
            return self.run(*args, **options)
        except errors.ATSError as exc:
            raise CommandError(f"{type(exc).__name__}: {exc}") from exc

    def run(self, *args, **options):
        raise NotImplementedError

    ### Shared arguments ###

    def add_model_argument(self, parser, required: bool = False):
        parser.add_argument(
            "--model",
            type=Path,
            required=required,
            help="A *.segmodel.json file from train-segmenter.",
        )

    def add_document_arguments(self, parser, many: bool = False):
        if many:
            parser.add_argument(
                "inputs", type=Path, nargs="+", help="Raw document bodies."
            )
        else:
            parser.add_argument("input", type=Path, help="Raw document body.")
        parser.add_argument("--department", required=True)
        parser.add_argument(
            "--doc-id",
            help="Artifact name stem for a single input; defaults to the file "
            "stem, or the folder name for a corpus body.txt.",
        )
        parser.add_argument("--out", type=Path, required=True, help="Output folder.")
        parser.add_argument(
            "--stopwords",
            type=Path,
            default=None,
            help="Stopword folder; defaults to ATS_STOPWORD_DIR.",
        )
        parser.add_argument(
            "--lenient",
            action="store_true",
            help="Warn instead of failing on departments without a stopword list.",
        )
        self.add_model_argument(parser)

    ### Shared loading ###

    def load_model(self, path: Path | None) -> segmenter.SegmenterModel:
        if path is None:
            return segmenter.SegmenterModel()
        return segmenter.load_model(path)

    def preprocess(
        self, options, inputs: list[Path]
    ) -> list[preprocessor.ProcessedDocument]:
        doc_ids = [options["doc_id"] or document_id(path) for path in inputs]
        if options["doc_id"] and len(inputs) > 1:
            raise CommandError("--doc-id names a single input")
        if len(set(doc_ids)) != len(doc_ids):
            raise CommandError(f"Inputs share document ids: {', '.join(doc_ids)}")

        cfg = normalizer.default_config()
        stemmer = preprocessor.get_stemmer()
        if options["stopwords"] is None:
            lists = preprocessor.StopwordList.from_settings()
        else:
            lists = preprocessor.StopwordList.load(options["stopwords"], cfg, stemmer)
        strict = (
            not options["lenient"]
            and getattr(conf.settings, "ATS_STRICT_DEPARTMENTS", True)
        )

        model = self.load_model(options["model"])
        return [
            preprocessor.preprocess_document(
                doc_id,
                options["department"],
                normalizer.normalize(artifacts.read_text(path), cfg),
                model,
                lists,
                stemmer=stemmer,
                strict_departments=strict,
                out_dir=options["out"],
            )
            for doc_id, path in zip(doc_ids, inputs)
        ]


def document_id(path: Path) -> str:
    """The folder name for a corpus `body.txt`, otherwise the file stem."""

    if path.name == corpus.BODY_FILE:
        return path.parent.name
    return path.stem
