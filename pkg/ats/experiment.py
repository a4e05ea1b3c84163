"""
Project:     Sorani ATS
Name:        ats/experiment.py
Author:      Sorani ATS contributors
Date:        2025-09-10
Description: The end-to-end experiment runner and the two-mode comparison
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import io
import json
import logging
import shutil
import time
import tomllib
import typing as t
from pathlib import Path

import pandas as pd
from django import conf

from ats import (
    artifacts,
    corpus,
    errors,
    evaluator,
    normalizer,
    preprocessor,
    scorer,
    segmenter,
    summarizer,
)

logger = logging.getLogger(__name__)

MANIFEST_VERSION = 1
MANIFEST_FILE = "manifest.json"
SEGMENTER_FILE = "segmenter.segmodel.json"
COMPARISON_FILE = "comparison.csv"
DEFAULT_STOPWORD_DIR = Path(__file__).resolve().parent / "data" / "domain_stopwords"

WITH_CONCLUSION = "with_conclusion"
WITHOUT_CONCLUSION = "without_conclusion"


### Configuration ###


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    corpus_root: Path
    output_root: Path
    stopword_dir: Path
    word_limit: int = summarizer.DEFAULT_WORD_LIMIT
    include_conclusions: bool | None = None
    """None runs both modes side by side."""

    split: corpus.SplitSpec = dataclasses.field(default_factory=corpus.SplitSpec)
    segmenter_corpus: t.Literal["train", "all"] = "train"
    """Which documents the segmenter learns from."""

    workers: int = 1
    strict_departments: bool = True

    def __post_init__(self):
        if self.word_limit < 1:
            raise errors.InvalidLimit(
                f"word_limit must be at least 1, got {self.word_limit}"
            )
        if self.segmenter_corpus not in ("train", "all"):
            raise ValueError(f"Unknown segmenter_corpus {self.segmenter_corpus!r}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    @property
    def label(self) -> str:
        return WITH_CONCLUSION if self.include_conclusions else WITHOUT_CONCLUSION

    def for_mode(self, include_conclusions: bool) -> ExperimentConfig:
        return dataclasses.replace(self, include_conclusions=include_conclusions)

    def as_dict(self) -> dict[str, t.Any]:
        return {
            "corpus_root": str(self.corpus_root),
            "output_root": str(self.output_root),
            "stopword_dir": str(self.stopword_dir),
            "word_limit": self.word_limit,
            "include_conclusions": self.include_conclusions,
            "split": dataclasses.asdict(self.split),
            "segmenter_corpus": self.segmenter_corpus,
            "strict_departments": self.strict_departments,
        }


def _setting(name: str, default: t.Any) -> t.Any:
    return getattr(conf.settings, name, default)


def load_config(path: str | Path) -> ExperimentConfig:
    """Read an experiment TOML file.

    Relative paths resolve against the file's folder. Settings fill in what
    the file leaves out, and ATS_SEED, when set, replaces the split seed.
    """

    path = Path(path)
    try:
        with path.open("rb") as handle:
            data = tomllib.load(handle)
    except OSError as exc:
        raise errors.IoFailure(f"Cannot read experiment config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise errors.IoFailure(f"{path} is not valid TOML: {exc}") from exc

    def resolve(value: str | Path) -> Path:
        value = Path(value)
        return value if value.is_absolute() else path.parent / value

    stopword_dir = _setting("ATS_STOPWORD_DIR", DEFAULT_STOPWORD_DIR)
    word_limit = _setting("ATS_WORD_LIMIT", summarizer.DEFAULT_WORD_LIMIT)

    split = dict(data.get("split", {}))
    seed = _setting("ATS_SEED", None)
    if seed is not None:
        logger.info("ATS_SEED=%d overrides the configured seed", seed)
        split["seed"] = seed

    try:
        return ExperimentConfig(
            corpus_root=resolve(data["corpus_root"]),
            output_root=resolve(data["output_root"]),
            stopword_dir=resolve(data.get("stopword_dir", stopword_dir)),
            word_limit=int(data.get("word_limit", word_limit)),
            include_conclusions=data.get("include_conclusions"),
            split=corpus.SplitSpec(**split),
            segmenter_corpus=data.get("segmenter_corpus", "train"),
            workers=int(data.get("workers", _setting("ATS_WORKERS", 1))),
            strict_departments=bool(
                data.get("strict_departments", _setting("ATS_STRICT_DEPARTMENTS", True))
            ),
        )
    except KeyError as exc:
        raise errors.IoFailure(f"{path} is missing {exc.args[0]!r}") from exc
    except TypeError as exc:
        raise errors.IoFailure(f"{path} has an invalid [split] table: {exc}") from exc


### Per-document pipeline ###


@dataclasses.dataclass(frozen=True)
class DocumentJob:
    document: corpus.CorpusDocument
    stage: corpus.Stage
    model: segmenter.SegmenterModel
    stopwords: preprocessor.StopwordList
    stemmer: preprocessor.LightStemmer
    word_limit: int
    strict_departments: bool
    output_root: Path


@dataclasses.dataclass(frozen=True)
class DocumentOutcome:
    doc_id: str
    department: str
    stage: corpus.Stage
    scores: dict[evaluator.Metric, evaluator.RougeScore] | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def _run_document(job: DocumentJob) -> DocumentOutcome:
    """Preprocess, score, summarize and evaluate one document.

    Pipeline errors become the outcome's error instead of propagating.
    """

    document, stage, root = job.document, job.stage, job.output_root
    try:
        processed = preprocessor.preprocess_document(
            document.doc_id,
            document.department,
            document.body,
            job.model,
            job.stopwords,
            stemmer=job.stemmer,
            strict_departments=job.strict_departments,
            out_dir=root / "process" / stage,
        )
        scores = scorer.score_document(processed)
        scorer.write_scoring_artifacts(processed, scores, root / "process" / stage)

        summaries = root / "summaries" / stage
        full = summarizer.extract_full_summary(processed, scores)
        final = summarizer.extract_final_summary(processed, scores, job.word_limit)
        summarizer.write_summary(full, summaries / f"{document.doc_id}.full.txt")
        summarizer.write_summary(final, summaries / f"{document.doc_id}.final.txt")
        summarizer.write_summary_state(
            final, summaries / f"{document.doc_id}.state.txt"
        )

        rouge = evaluator.evaluate_document(final.text, document.abstract)
        evaluator.write_document_scores(
            rouge, root / "eval" / stage / f"{document.doc_id}.rouge.csv"
        )
    except errors.ATSError as exc:
        logger.warning("%s failed: %s", document.doc_id, exc)
        return DocumentOutcome(
            document.doc_id,
            document.department,
            stage,
            error=f"{type(exc).__name__}: {exc}",
        )

    return DocumentOutcome(document.doc_id, document.department, stage, rouge)


def _execute(jobs: list[DocumentJob], workers: int) -> list[DocumentOutcome]:
    if workers == 1 or len(jobs) < 2:
        return [_run_document(job) for job in jobs]

    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_document, jobs, chunksize=4))


### Experiment ###


@dataclasses.dataclass
class ExperimentResult:
    config: ExperimentConfig
    output_root: Path
    outcomes: list[DocumentOutcome]
    corpus_errors: list[errors.CorpusError]
    report: pd.DataFrame
    manifest_path: Path
    manifest_sha256: str
    missing_conclusions: int = 0
    elapsed_seconds: float = 0.0

    @property
    def label(self) -> str:
        return self.config.label

    @property
    def failures(self) -> list[DocumentOutcome]:
        return [outcome for outcome in self.outcomes if not outcome.ok]

    @property
    def documents_evaluated(self) -> int:
        return sum(outcome.ok for outcome in self.outcomes)

    @property
    def error_count(self) -> int:
        return len(self.failures) + len(self.corpus_errors)

    @property
    def best(self) -> tuple[str, str, float] | None:
        return evaluator.best_result(self.report)


def _normalized(
    document: corpus.CorpusDocument, cfg: normalizer.NormalizationConfig
) -> corpus.CorpusDocument:
    # Offsets no longer line up once the body is normalized.
    return dataclasses.replace(
        document,
        body=normalizer.normalize(document.body, cfg),
        abstract=normalizer.normalize(document.abstract, cfg),
        conclusion_span=None,
    )


def _report(outcomes: t.Iterable[DocumentOutcome]) -> pd.DataFrame:
    return evaluator.aggregate(
        (outcome.department, outcome.scores) for outcome in outcomes if outcome.ok
    )


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run one experiment mode into `<output_root>/<mode>/`.

    Whatever an earlier run left in that folder is removed first.
    """

    if cfg.include_conclusions is None:
        raise ValueError("run_experiment needs include_conclusions set")

    started = time.perf_counter()
    root = Path(cfg.output_root) / cfg.label
    logger.info("Starting %s experiment into %s", cfg.label, root)

    loaded = corpus.load_corpus(cfg.corpus_root)
    if not loaded.documents:
        raise errors.EmptyCorpus(f"No loadable documents under {cfg.corpus_root}")

    if root.exists():
        logger.info("Clearing previous outputs in %s", root)
        shutil.rmtree(root)

    documents = loaded.documents
    missing = 0
    if not cfg.include_conclusions:
        documents, missing = corpus.strip_conclusions(documents)
        if missing:
            logger.warning("%d documents had no conclusion span to strip", missing)

    norm_cfg = normalizer.default_config()
    documents = [_normalized(doc, norm_cfg) for doc in documents]

    splits = corpus.split_corpus(documents, cfg.split, root / "splits")

    if cfg.segmenter_corpus == "train":
        training = [doc.body for split in splits.values() for doc in split.train]
    else:
        training = [doc.body for doc in documents]
    model = segmenter.train_segmenter(training)
    segmenter.save_model(model, root / "segmenters" / SEGMENTER_FILE)

    stemmer = preprocessor.get_stemmer()
    stopwords = preprocessor.StopwordList.load(cfg.stopword_dir, norm_cfg, stemmer)

    jobs = [
        DocumentJob(
            document,
            stage,
            model,
            stopwords,
            stemmer,
            cfg.word_limit,
            cfg.strict_departments,
            root,
        )
        for stage in corpus.Stage
        for department, split in splits.items()
        for document in sorted(split.stage(stage), key=lambda doc: doc.doc_id)
    ]
    logger.info("Running %d documents on %d workers", len(jobs), cfg.workers)
    outcomes = _execute(jobs, cfg.workers)

    report = _report(outcomes)
    evaluator.write_report(report, root / "eval" / "report.csv")
    for stage in corpus.Stage:
        evaluator.write_report(
            _report(o for o in outcomes if o.stage == stage),
            root / "eval" / stage / "report.csv",
        )

    manifest = write_manifest(root, cfg, outcomes, loaded.errors)
    elapsed = time.perf_counter() - started
    logger.info(
        "Finished %s experiment: %d documents, %d failed, %.1fs",
        cfg.label,
        len(outcomes),
        sum(not o.ok for o in outcomes),
        elapsed,
    )
    return ExperimentResult(
        config=cfg,
        output_root=root,
        outcomes=outcomes,
        corpus_errors=loaded.errors,
        report=report,
        manifest_path=manifest,
        manifest_sha256=artifacts.sha256_file(manifest),
        missing_conclusions=missing,
        elapsed_seconds=elapsed,
    )


def write_manifest(
    root: Path,
    cfg: ExperimentConfig,
    outcomes: list[DocumentOutcome],
    corpus_errors: list[errors.CorpusError],
) -> Path:
    """Record config, seed, per-document status and a hash of every output."""

    manifest_path = root / MANIFEST_FILE
    outputs = {
        path.relative_to(root).as_posix(): artifacts.sha256_file(path)
        for path in sorted(root.rglob("*"))
        if path.is_file() and path != manifest_path
    }
    documents = [
        {
            "doc_id": outcome.doc_id,
            "department": outcome.department,
            "stage": str(outcome.stage),
            "status": "ok" if outcome.ok else "error",
            "error": outcome.error,
        }
        for outcome in outcomes
    ] + [
        {
            "doc_id": error.doc_id,
            "department": None,
            "stage": None,
            "status": "error",
            "error": f"{type(error).__name__}: {error}",
        }
        for error in corpus_errors
    ]

    payload = {
        "version": MANIFEST_VERSION,
        "config": cfg.as_dict(),
        "seed": cfg.split.seed,
        "documents": documents,
        "outputs": outputs,
    }
    return artifacts.write_text(
        manifest_path,
        json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
    )


### Comparison ###


@dataclasses.dataclass
class Comparison:
    with_conclusion: ExperimentResult
    without_conclusion: ExperimentResult
    table: pd.DataFrame
    path: Path

    @property
    def results(self) -> list[ExperimentResult]:
        return [self.with_conclusion, self.without_conclusion]


def _best_label(result: ExperimentResult) -> str:
    if result.best is None:
        return "none"
    metric, department, f = result.best
    return f"{metric} F {f:.4f} ({department})"


def run_comparison(cfg: ExperimentConfig) -> Comparison:
    """Run both modes and tabulate how they differ."""

    with_result = run_experiment(cfg.for_mode(True))
    without_result = run_experiment(cfg.for_mode(False))

    words = corpus.body_word_stats(corpus.load_corpus(cfg.corpus_root).documents)
    with_docs = len(with_result.outcomes)
    without_docs = len(without_result.outcomes)

    table = pd.DataFrame(
        [
            (
                "Dataset",
                f"{with_docs} documents with conclusions",
                f"{without_docs} documents without conclusions",
                "conclusions removed in experiment 2",
            ),
            (
                "Average word count",
                f"{words.with_conclusion.overall:.2f}",
                f"{words.without_conclusion.overall:.2f}",
                f"difference {words.difference:.2f}",
            ),
            (
                "Data split ratio",
                cfg.split.ratio_label,
                cfg.split.ratio_label,
                "same seeded split",
            ),
            (
                "Documents evaluated",
                str(with_result.documents_evaluated),
                str(without_result.documents_evaluated),
                f"{with_result.error_count + without_result.error_count} errors",
            ),
            (
                "Best evaluation result",
                _best_label(with_result),
                _best_label(without_result),
                "highest department F",
            ),
        ],
        columns=["feature", "experiment_1", "experiment_2", "remarks"],
    )

    buffer = io.StringIO()
    table.to_csv(buffer, index=False, lineterminator="\n")
    path = artifacts.write_text(
        Path(cfg.output_root) / COMPARISON_FILE, buffer.getvalue()
    )
    return Comparison(with_result, without_result, table, path)


def run(cfg: ExperimentConfig) -> list[ExperimentResult]:
    """Run the configured mode, or both when the config leaves it open."""

    if cfg.include_conclusions is None:
        return run_comparison(cfg).results
    return [run_experiment(cfg)]
