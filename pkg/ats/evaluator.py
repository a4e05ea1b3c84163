"""
Project:     Sorani ATS
Name:        ats/evaluator.py
Author:      Sorani ATS contributors
Date:        2025-09-07
Description: ROUGE-1, ROUGE-2 and ROUGE-L scoring and department reports
"""

from __future__ import annotations

import collections
import dataclasses
import enum
import io
import typing as t
from pathlib import Path

import pandas as pd

from ats import artifacts, errors, normalizer

AVERAGE = "Average"

REPORT_COLUMNS = ["metric", "department", "precision", "recall", "f"]


class Metric(enum.StrEnum):
    ROUGE1 = "rouge1"
    ROUGE2 = "rouge2"
    ROUGEL = "rougeL"


@dataclasses.dataclass(frozen=True)
class RougeScore:
    metric: Metric
    precision: float
    recall: float

    @property
    def f(self) -> float:
        total = self.precision + self.recall
        return 2 * self.precision * self.recall / total if total else 0.0

    def as_dict(self) -> dict[str, float]:
        return {"precision": self.precision, "recall": self.recall, "f": self.f}


Tokens = t.Union[str, t.Sequence[str]]


def _tokens(text: Tokens) -> list[str]:
    if isinstance(text, str):
        return normalizer.whitespace_tokens(text)
    return list(text)


def _ngrams(tokens: list[str], n: int) -> collections.Counter[tuple[str, ...]]:
    return collections.Counter(
        tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)
    )


def rouge_n(candidate: Tokens, reference: Tokens, n: int) -> RougeScore:
    """Clipped n-gram overlap; zeros when either side has no n-grams."""

    metric = {1: Metric.ROUGE1, 2: Metric.ROUGE2}.get(n)
    if metric is None:
        raise ValueError(f"ROUGE-N is defined here for n in (1, 2), got {n}")

    cand = _ngrams(_tokens(candidate), n)
    ref = _ngrams(_tokens(reference), n)
    cand_total, ref_total = cand.total(), ref.total()
    if not cand_total or not ref_total:
        return RougeScore(metric, 0.0, 0.0)

    overlap = (cand & ref).total()
    return RougeScore(metric, overlap / cand_total, overlap / ref_total)


def lcs_length(first: t.Sequence[str], second: t.Sequence[str]) -> int:
    """Longest common subsequence length, two-row dynamic programming."""

    if len(second) > len(first):
        first, second = second, first
    previous = [0] * (len(second) + 1)
    for item in first:
        current = [0]
        for j, other in enumerate(second, start=1):
            if item == other:
                current.append(previous[j - 1] + 1)
            else:
                current.append(max(previous[j], current[j - 1]))
        previous = current
    return previous[-1]


def rouge_l(candidate: Tokens, reference: Tokens) -> RougeScore:
    cand, ref = _tokens(candidate), _tokens(reference)
    if not cand or not ref:
        return RougeScore(Metric.ROUGEL, 0.0, 0.0)

    lcs = lcs_length(cand, ref)
    return RougeScore(Metric.ROUGEL, lcs / len(cand), lcs / len(ref))


def evaluate_document(summary: Tokens, abstract: Tokens) -> dict[Metric, RougeScore]:
    """Score a summary against its abstract on every metric."""

    if not _tokens(abstract):
        raise errors.MissingReference("The reference abstract is empty")

    return {
        Metric.ROUGE1: rouge_n(summary, abstract, 1),
        Metric.ROUGE2: rouge_n(summary, abstract, 2),
        Metric.ROUGEL: rouge_l(summary, abstract),
    }


### Reports ###


def aggregate(
    results: t.Iterable[tuple[str, t.Mapping[Metric, RougeScore]]],
) -> pd.DataFrame:
    """Per-department means of every metric plus an Average row per metric.

    The Average row is the unweighted mean of the department means.
    """

    rows = [
        {"metric": str(metric), "department": department, **score.as_dict()}
        for department, scores in results
        for metric, score in scores.items()
    ]
    if not rows:
        return pd.DataFrame(columns=REPORT_COLUMNS)

    frame = pd.DataFrame(rows)
    departments = (
        frame.groupby(["metric", "department"], sort=True)[["precision", "recall", "f"]]
        .mean()
        .reset_index()
    )
    average = (
        departments.groupby("metric", sort=True)[["precision", "recall", "f"]]
        .mean()
        .reset_index()
        .assign(department=AVERAGE)
    )

    report = pd.concat([departments, average], ignore_index=True)[REPORT_COLUMNS]
    report["metric"] = pd.Categorical(
        report["metric"], categories=[str(m) for m in Metric], ordered=True
    )
    report["_average"] = report["department"] == AVERAGE
    report = report.sort_values(["metric", "_average", "department"], kind="stable")
    report["metric"] = report["metric"].astype(str)
    return report.drop(columns="_average").reset_index(drop=True)


def best_result(report: pd.DataFrame) -> tuple[str, str, float] | None:
    """The highest department-level F of any metric, Average rows excluded."""

    departments = report[report["department"] != AVERAGE]
    if departments.empty:
        return None

    row = departments.loc[departments["f"].idxmax()]
    return str(row["metric"]), str(row["department"]), float(row["f"])


def _csv(frame: pd.DataFrame) -> str:
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format="%.6f", lineterminator="\n")
    return buffer.getvalue()


def write_document_scores(
    scores: t.Mapping[Metric, RougeScore], path: str | Path
) -> Path:
    frame = pd.DataFrame(
        [
            {"metric": str(metric), **score.as_dict()}
            for metric, score in scores.items()
        ],
        columns=["metric", "precision", "recall", "f"],
    )
    return artifacts.write_text(path, _csv(frame))


def write_report(report: pd.DataFrame, path: str | Path) -> Path:
    return artifacts.write_text(path, _csv(report[REPORT_COLUMNS]))


def read_report(path: str | Path) -> pd.DataFrame:
    try:
        return pd.read_csv(path)
    except (OSError, pd.errors.ParserError) as exc:
        raise errors.IoFailure(f"Cannot read report {path}: {exc}") from exc
