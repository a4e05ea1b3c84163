"""
Project:     Sorani ATS
Name:        ats/models.py
Author:      Sorani ATS contributors
Date:        2025-09-11
Description: Models recording experiment runs and their per-document results
"""

from __future__ import annotations

import typing as t

from django.db import models, transaction
from django.utils.translation import gettext_lazy as _

if t.TYPE_CHECKING:
    from django.db.models.manager import RelatedManager

    from ats.experiment import ExperimentResult

### ExperimentRun ###


class ExperimentRunQuerySet(models.QuerySet["ExperimentRun"]):
    """Custom Queryset for ExperimentRun."""

    def with_conclusions(self):
        return self.filter(include_conclusions=True)

    def without_conclusions(self):
        return self.filter(include_conclusions=False)

    def with_counts(self):
        """Annotate each run with its document and failure counts."""

        return self.annotate(
            document_count=models.Count("results"),
            failure_count=models.Count(
                "results", filter=~models.Q(results__error="")
            ),
        )

    @transaction.atomic
    def record(self, result: ExperimentResult, elapsed_seconds: float):
        """Store a finished experiment and one row per document."""

        cfg = result.config
        run = self.model(
            label=result.label,
            include_conclusions=bool(cfg.include_conclusions),
            seed=cfg.split.seed,
            word_limit=cfg.word_limit,
            output_root=str(result.output_root),
            manifest_sha256=result.manifest_sha256,
            elapsed_seconds=elapsed_seconds,
        )
        run.full_clean()
        run.save()

        DocumentResult.objects.bulk_create(
            DocumentResult(
                run=run,
                doc_id=outcome.doc_id,
                department=outcome.department,
                stage=outcome.stage,
                error=outcome.error or "",
                scores={
                    str(metric): score.as_dict()
                    for metric, score in (outcome.scores or {}).items()
                },
            )
            for outcome in result.outcomes
        )
        return run


class ExperimentRun(models.Model):
    """
    ExperimentRun.

    One execution of one experiment mode.
    """

    objects: ExperimentRunQuerySet = ExperimentRunQuerySet.as_manager()

    label = models.CharField(_("Label"), max_length=64)
    """The experiment mode, `with_conclusion` or `without_conclusion`."""

    include_conclusions = models.BooleanField(_("Include conclusions"))

    seed = models.BigIntegerField(_("Seed"))
    """The split seed actually used."""

    word_limit = models.PositiveIntegerField(_("Word limit"))

    output_root = models.CharField(_("Output root"), max_length=1024)

    manifest_sha256 = models.CharField(_("Manifest SHA-256"), max_length=64)
    """Hash of the run's manifest.json; equal hashes mean equal output trees."""

    elapsed_seconds = models.FloatField(_("Elapsed seconds"))

    created_at = models.DateTimeField(auto_now_add=True)

    ## Relationships

    results: RelatedManager[DocumentResult]
    """The per-document outcomes of the run."""

    class Meta:
        ordering = ["-created_at"]

    def __str__(self):
        return f"{self.label} (seed {self.seed})"


### DocumentResult ###


class DocumentResultQuerySet(models.QuerySet["DocumentResult"]):
    """Custom Queryset for DocumentResult."""

    def for_run(self, run: ExperimentRun):
        return self.filter(run=run)

    def for_stage(self, stage: str):
        return self.filter(stage=stage)

    def failed(self):
        return self.exclude(error="")

    def succeeded(self):
        return self.filter(error="")


class DocumentResult(models.Model):
    """
    DocumentResult.

    How one document fared in a run.
    """

    objects: DocumentResultQuerySet = DocumentResultQuerySet.as_manager()

    run = models.ForeignKey(
        ExperimentRun, on_delete=models.CASCADE, related_name="results"
    )

    doc_id = models.CharField(_("Document"), max_length=255)

    department = models.CharField(_("Department"), max_length=255)

    stage = models.CharField(_("Stage"), max_length=8)
    """train, val or test."""

    error = models.TextField(_("Error"), blank=True, default="")
    """Empty when the document went through the whole pipeline."""

    scores = models.JSONField(_("Scores"), default=dict, blank=True)
    """Metric name to {precision, recall, f}."""

    class Meta:
        ordering = ["stage", "department", "doc_id"]
        constraints = [
            models.UniqueConstraint(
                fields=["run", "doc_id"], name="unique_document_per_run"
            )
        ]
