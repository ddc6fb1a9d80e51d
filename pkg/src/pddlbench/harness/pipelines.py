"""The two evaluation pipelines and their run records.

Formalizer: the model writes a DF/PF pair from the descriptions; a
deterministic planner searches the predicted pair (solvability), and the
found plan is replayed against the gold pair (correctness). The predicted
PDDL itself is never diffed against gold for scoring.

Planner: the model writes the plan directly; the plan is replayed against
the gold pair.

One completion per instance; no retry on bad output, no self-refine.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from ..assets import DOMAIN_TAGS, asset_text
from ..datagen.dataset import TaskInstance
from ..errors import EndpointError, ExtractionFailure, UnsupportedDomain
from ..llm import LlmClient, LlmRequest
from ..printer import print_domain, print_problem, print_plan
from ..search import SearchLimits, SolvabilityOutcome, solvability_check
from ..validate import CorrectnessOutcome, correctness_check
from .extract import extract_pddl, extract_plan

PIPELINES = ("formalizer", "planner")

# error_class values; None means no error (correct record) or not yet judged
ERROR_SYNTAX = "syntax"
ERROR_DF_SEMANTIC = "df_semantic"
ERROR_PF_SEMANTIC = "pf_semantic"
ERROR_UNCLASSIFIED = "unclassified"

ERROR_CLASSES = (ERROR_SYNTAX, ERROR_DF_SEMANTIC, ERROR_PF_SEMANTIC, ERROR_UNCLASSIFIED)


@dataclass(frozen=True)
class PromptCatalog:
    """Prompt templates with {domain_description}/{problem_description} slots."""

    formalizer_template: str
    planner_templates: Mapping[str, str]

    @classmethod
    def default(cls) -> "PromptCatalog":
        return cls(
            formalizer_template=asset_text("prompts/formalizer.txt"),
            planner_templates={
                tag: asset_text(f"prompts/planner_{tag}.txt") for tag in DOMAIN_TAGS
            },
        )

    @staticmethod
    def _fill(template: str, instance: TaskInstance) -> str:
        return template.replace(
            "{domain_description}", instance.dd_text.strip()
        ).replace("{problem_description}", instance.pd_text.strip())

    def formalizer_prompt(self, instance: TaskInstance) -> str:
        return self._fill(self.formalizer_template, instance)

    def planner_prompt(self, instance: TaskInstance) -> str:
        template = self.planner_templates.get(instance.domain_tag)
        if template is None:
            raise UnsupportedDomain(
                f"no planner prompt for domain '{instance.domain_tag}'"
            )
        return self._fill(template, instance)


@dataclass
class RunRecord:
    """Outcome of one instance through one pipeline."""

    instance_id: str
    pipeline: str
    domain_tag: str = ""
    level: str = ""
    model_id: str = ""
    complexity: dict = field(default_factory=dict)
    raw_output: str = ""
    extracted: dict = field(default_factory=dict)
    solvability_verdict: str | None = None
    correctness_verdict: str = CorrectnessOutcome.INCORRECT
    error_class: str | None = None
    failed: bool = False
    failure: str | None = None
    timings: dict = field(default_factory=dict)
    usage: dict = field(default_factory=dict)
    triage: dict | None = None

    def __post_init__(self):
        if self.pipeline not in PIPELINES:
            raise ValueError(f"unknown pipeline {self.pipeline!r}")

    def to_dict(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "pipeline": self.pipeline,
            "domain_tag": self.domain_tag,
            "level": self.level,
            "model_id": self.model_id,
            "complexity": self.complexity,
            "raw_output": self.raw_output,
            "extracted": self.extracted,
            "solvability_verdict": self.solvability_verdict,
            "correctness_verdict": self.correctness_verdict,
            "error_class": self.error_class,
            "failed": self.failed,
            "failure": self.failure,
            "timings": self.timings,
            "usage": self.usage,
            "triage": self.triage,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunRecord":
        return cls(**{k: data.get(k) for k in cls.__dataclass_fields__ if k in data})


def write_records(records: Sequence[RunRecord], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record.to_dict(), ensure_ascii=False) + "\n")


def read_records(path: str | Path) -> list[RunRecord]:
    records = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                records.append(RunRecord.from_dict(json.loads(line)))
    return records


def _new_record(instance: TaskInstance, pipeline: str, model_id: str) -> RunRecord:
    return RunRecord(
        instance_id=instance.id,
        pipeline=pipeline,
        domain_tag=instance.domain_tag,
        level=instance.level.value,
        model_id=model_id,
        complexity=dict(instance.complexity),
    )


def _complete(
    record: RunRecord,
    llm: LlmClient,
    prompt: str,
    model_id: str,
    temperature: float | None,
    max_output_tokens: int | None,
    replicate_index: int,
) -> str | None:
    """Run the LLM call; on endpoint failure mark the record and return None.

    CacheMiss and ConfigError are infrastructure problems and propagate.
    """
    req = LlmRequest(
        model_id=model_id,
        messages=(("user", prompt),),
        temperature=temperature,
        max_output_tokens=max_output_tokens,
    )
    start = time.perf_counter()
    try:
        response = llm.complete(req, replicate_index=replicate_index)
    except EndpointError as exc:
        record.timings["llm_seconds"] = time.perf_counter() - start
        record.failed = True
        record.failure = str(exc)
        return None
    record.timings["llm_seconds"] = time.perf_counter() - start
    record.raw_output = response.text
    record.usage = {
        "input_tokens": response.usage.input_tokens,
        "output_tokens": response.usage.output_tokens,
        "cached": response.cached,
    }
    return response.text


def run_formalizer(
    instance: TaskInstance,
    llm: LlmClient,
    catalog: PromptCatalog,
    limits: SearchLimits | None = None,
    model_id: str = "gpt-4o",
    temperature: float | None = 0.0,
    max_output_tokens: int | None = None,
    replicate_index: int = 0,
) -> RunRecord:
    record = _new_record(instance, "formalizer", model_id)
    raw = _complete(
        record, llm, catalog.formalizer_prompt(instance),
        model_id, temperature, max_output_tokens, replicate_index,
    )
    if raw is None:
        return record

    try:
        df_text, pf_text = extract_pddl(raw)
    except ExtractionFailure as exc:
        record.solvability_verdict = SolvabilityOutcome.PARSE_FAILURE
        record.error_class = ERROR_SYNTAX
        record.failure = str(exc)
        return record
    record.extracted = {"df_text": df_text, "pf_text": pf_text}

    start = time.perf_counter()
    outcome = solvability_check(df_text, pf_text, limits)
    record.timings["solve_seconds"] = time.perf_counter() - start
    record.solvability_verdict = outcome.status

    if outcome.status == SolvabilityOutcome.PARSE_FAILURE:
        record.error_class = ERROR_SYNTAX
        record.failure = outcome.error
        return record
    if outcome.status != SolvabilityOutcome.SOLVABLE:
        record.error_class = ERROR_UNCLASSIFIED
        return record

    start = time.perf_counter()
    correctness = correctness_check(
        print_domain(instance.gold_df),
        print_problem(instance.gold_pf),
        print_plan(outcome.plan),
    )
    record.timings["validate_seconds"] = time.perf_counter() - start
    record.correctness_verdict = correctness.status
    record.error_class = (
        None if correctness.status == CorrectnessOutcome.CORRECT else ERROR_UNCLASSIFIED
    )
    return record


def run_planner(
    instance: TaskInstance,
    llm: LlmClient,
    catalog: PromptCatalog,
    model_id: str = "gpt-4o",
    temperature: float | None = 0.0,
    max_output_tokens: int | None = None,
    replicate_index: int = 0,
) -> RunRecord:
    record = _new_record(instance, "planner", model_id)
    raw = _complete(
        record, llm, catalog.planner_prompt(instance),
        model_id, temperature, max_output_tokens, replicate_index,
    )
    if raw is None:
        return record

    try:
        plan_text = extract_plan(raw)
    except ExtractionFailure as exc:
        record.error_class = ERROR_SYNTAX
        record.failure = str(exc)
        return record
    record.extracted = {"plan_text": plan_text}

    start = time.perf_counter()
    correctness = correctness_check(
        print_domain(instance.gold_df),
        print_problem(instance.gold_pf),
        plan_text,
    )
    record.timings["validate_seconds"] = time.perf_counter() - start
    record.correctness_verdict = correctness.status
    if correctness.status == CorrectnessOutcome.CORRECT:
        record.error_class = None
    elif correctness.status == CorrectnessOutcome.PLAN_PARSE_FAILURE:
        record.error_class = ERROR_SYNTAX
    else:
        record.error_class = ERROR_UNCLASSIFIED
    return record


def run_batch(
    instances: Sequence[TaskInstance],
    llm: LlmClient,
    catalog: PromptCatalog | None = None,
    pipelines: Sequence[str] = PIPELINES,
    limits: SearchLimits | None = None,
    model_id: str = "gpt-4o",
    temperature: float | None = 0.0,
    max_output_tokens: int | None = None,
    max_workers: int = 4,
    out_path: str | Path | None = None,
) -> list[RunRecord]:
    """Evaluate every (instance, pipeline) cell with bounded parallelism.

    Records come back in deterministic (instance, pipeline) order no matter
    how threads interleave; endpoint failures land in their records while
    infrastructure errors (cache miss in replay, bad config) abort the batch.
    """
    catalog = catalog or PromptCatalog.default()
    for pipeline in pipelines:
        if pipeline not in PIPELINES:
            raise ValueError(f"unknown pipeline {pipeline!r}")

    def cell(task: tuple[TaskInstance, str]) -> RunRecord:
        instance, pipeline = task
        if pipeline == "formalizer":
            return run_formalizer(
                instance, llm, catalog, limits, model_id,
                temperature, max_output_tokens,
            )
        return run_planner(
            instance, llm, catalog, model_id, temperature, max_output_tokens
        )

    cells = [(instance, pipeline) for instance in instances for pipeline in pipelines]
    if max_workers <= 1:
        records = [cell(c) for c in cells]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            records = list(pool.map(cell, cells))

    if out_path is not None:
        write_records(records, out_path)
    return records
