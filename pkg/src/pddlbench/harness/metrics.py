"""Accounting over run records: solvability and correctness ratios.

summarize() is the single-cell accounting and refuses mixed pipelines;
pivot() partitions records per (domain, level, model, pipeline) and
summarizes each cell. Unsolvable, resource-exceeded, and parse-failure
verdicts all count as not solvable; the distinction survives in the
records and the resource-exceeded count is carried as a flag so reports
can call it out.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..search import SolvabilityOutcome
from ..validate import CorrectnessOutcome
from .pipelines import RunRecord

BLOCK_BUCKETS = ((2, 4), (5, 7), (8, 10), (11, 13), (14, 15))


@dataclass(frozen=True)
class MetricsSummary:
    pipeline: str
    total: int
    solvable_count: int | None
    correct_count: int
    resource_exceeded: int = 0
    failed: int = 0


def summarize(records: Sequence[RunRecord]) -> MetricsSummary:
    """Accounting for one experiment cell; records must share one pipeline."""
    pipelines = {record.pipeline for record in records}
    if len(pipelines) > 1:
        raise ValueError(
            "mixed pipelines in one summary: "
            + ", ".join(sorted(pipelines))
            + "; partition records first (see pivot)"
        )
    pipeline = pipelines.pop() if pipelines else ""
    total = len(records)
    correct = sum(
        1 for r in records if r.correctness_verdict == CorrectnessOutcome.CORRECT
    )
    failed = sum(1 for r in records if r.failed)
    solvable: int | None = None
    resource_exceeded = 0
    if pipeline == "formalizer":
        solvable = sum(
            1
            for r in records
            if r.solvability_verdict == SolvabilityOutcome.SOLVABLE
        )
        resource_exceeded = sum(
            1
            for r in records
            if r.solvability_verdict == SolvabilityOutcome.RESOURCE_EXCEEDED
        )
        if correct > solvable:
            raise ValueError(
                f"accounting violation: {correct} correct > {solvable} solvable"
            )
    return MetricsSummary(
        pipeline=pipeline,
        total=total,
        solvable_count=solvable,
        correct_count=correct,
        resource_exceeded=resource_exceeded,
        failed=failed,
    )


def format_summary(summary: MetricsSummary) -> str:
    """Render counts in the x/N reporting style, e.g. "64/100 60/100"."""
    correct = f"{summary.correct_count}/{summary.total}"
    if summary.solvable_count is None:
        return correct
    return f"{summary.solvable_count}/{summary.total} {correct}"


PivotKey = tuple[str, str, str, str]  # (domain_tag, level, model_id, pipeline)


def pivot(records: Iterable[RunRecord]) -> dict[PivotKey, MetricsSummary]:
    groups: dict[PivotKey, list[RunRecord]] = {}
    for record in records:
        key = (record.domain_tag, record.level, record.model_id, record.pipeline)
        groups.setdefault(key, []).append(record)
    return {key: summarize(groups[key]) for key in sorted(groups)}


def bucket_by_blocks(records: Sequence[RunRecord]) -> dict[str, MetricsSummary]:
    """Summaries per problem-size bucket, for records carrying num_blocks."""
    out: dict[str, MetricsSummary] = {}
    for low, high in BLOCK_BUCKETS:
        bucket = [
            r
            for r in records
            if isinstance(r.complexity, dict)
            and low <= r.complexity.get("num_blocks", -1) <= high
        ]
        if bucket:
            out[f"{low}-{high}"] = summarize(bucket)
    return out


def to_csv(cells: Mapping[PivotKey, MetricsSummary]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        ["domain", "level", "model", "pipeline", "total",
         "solvable", "correct", "resource_exceeded", "failed"]
    )
    for (domain, level, model, pipeline), s in sorted(cells.items()):
        writer.writerow(
            [domain, level, model, pipeline, s.total,
             "" if s.solvable_count is None else s.solvable_count,
             s.correct_count, s.resource_exceeded, s.failed]
        )
    return buffer.getvalue()


def to_table(cells: Mapping[PivotKey, MetricsSummary]) -> str:
    """Plain-text report, one row per cell, solvability and correctness columns."""
    headers = ["domain", "level", "model", "pipeline", "solvable", "correct"]
    rows = []
    for (domain, level, model, pipeline), s in sorted(cells.items()):
        solvable = (
            "-" if s.solvable_count is None else f"{s.solvable_count}/{s.total}"
        )
        row = [domain, level, model, pipeline, solvable,
               f"{s.correct_count}/{s.total}"]
        notes = []
        if s.resource_exceeded:
            notes.append(f"{s.resource_exceeded} resource-exceeded")
        if s.failed:
            notes.append(f"{s.failed} failed")
        if notes:
            row[-1] += "  (" + ", ".join(notes) + ")"
        rows.append(row)
    if not rows:
        return "no records\n"
    widths = [
        max(len(headers[i]), *(len(row[i]) for row in rows))
        for i in range(len(headers))
    ]
    lines = [
        "  ".join(headers[i].ljust(widths[i]) for i in range(len(headers))).rstrip()
    ]
    for row in rows:
        lines.append(
            "  ".join(row[i].ljust(widths[i]) for i in range(len(headers))).rstrip()
        )
    return "\n".join(lines) + "\n"
