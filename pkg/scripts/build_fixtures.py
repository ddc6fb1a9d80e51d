"""Rebuild the hermetic replay fixtures under tests/fixtures/.

Produces a tiny frozen dataset, a seeded response cache covering every
(instance, pipeline) cell, and the expected artifacts that the replay
acceptance test compares byte-for-byte:

  dataset/   three small heavily-templated blocksworld instances
  cache/     six canned completions keyed exactly as the pipelines key them
  expected/  score table, score CSV, and timing-free records

The canned completions exercise the main outcome classes:

  instance 0  formalizer: JSON echo of the gold pair   -> solvable, correct
              planner: a valid plan in uppercase steps -> correct
  instance 1  formalizer: ':preconditions' keyword typo -> parse failure, syntax
              planner: prose with no steps              -> extraction failure, syntax
  instance 2  formalizer: pair missing the 'clear' bookkeeping
                -> solvable under its own semantics, plan incorrect on gold
              planner: that shortcut plan               -> incorrect

Run from the repository root:  python3 scripts/build_fixtures.py
"""

from __future__ import annotations

import json
import shutil
import sys
from pathlib import Path

from pddlbench.datagen import generate_dataset, read_instance
from pddlbench.harness import PromptCatalog, run_batch
from pddlbench.harness.metrics import pivot, to_csv, to_table
from pddlbench.llm import LlmClient, LlmRequest, seed_cache
from pddlbench.model import ActionSchema, Domain, Problem
from pddlbench.printer import print_domain, print_plan, print_problem
from pddlbench.search import SolvabilityOutcome, solvability_check
from pddlbench.validate import CorrectnessOutcome, correctness_check

REPO = Path(__file__).resolve().parent.parent
FIXTURES = REPO / "tests" / "fixtures"

MODEL_ID = "gpt-4o"
DATASET_SEED = 11
BLOCKS_RANGE = (3, 5)


def drop_predicate(domain: Domain, problem: Problem, name: str):
    """Remove one predicate everywhere, keeping both files parseable."""
    actions = tuple(
        ActionSchema(
            a.name,
            a.params,
            tuple(l for l in a.precondition if l.predicate != name),
            tuple(l for l in a.add_effects if l.predicate != name),
            tuple(l for l in a.del_effects if l.predicate != name),
        )
        for a in domain.actions
    )
    relaxed_domain = Domain(
        domain.name,
        domain.requirements,
        domain.types,
        tuple(p for p in domain.predicates if p.name != name),
        actions,
    )
    relaxed_problem = Problem(
        problem.name,
        problem.domain_name,
        problem.objects,
        tuple(l for l in problem.init if l.predicate != name),
        tuple(l for l in problem.goal if l.predicate != name),
    )
    return relaxed_domain, relaxed_problem


def build_replies(instances):
    """One canned completion per (instance, pipeline) cell."""
    i0, i1, i2 = instances

    echo = json.dumps(
        {
            "domain_file": print_domain(i0.gold_df),
            "problem_file": print_problem(i0.gold_pf),
        },
        indent=2,
    )

    gold_outcome = solvability_check(
        print_domain(i0.gold_df), print_problem(i0.gold_pf)
    )
    if gold_outcome.status != SolvabilityOutcome.SOLVABLE:
        raise SystemExit("gold pair for instance 0 did not solve")
    good_plan = print_plan(gold_outcome.plan).upper()

    typo_df = print_domain(i1.gold_df).replace(":precondition", ":preconditions")
    typo_reply = (
        "Here are the two files.\n\n"
        f"```\n{typo_df}```\n\n"
        f"```\n{print_problem(i1.gold_pf)}```\n"
    )

    relaxed_df, relaxed_pf = drop_predicate(i2.gold_df, i2.gold_pf, "clear")
    relaxed_df_text = print_domain(relaxed_df)
    relaxed_pf_text = print_problem(relaxed_pf)
    relaxed_outcome = solvability_check(relaxed_df_text, relaxed_pf_text)
    if relaxed_outcome.status != SolvabilityOutcome.SOLVABLE:
        raise SystemExit(
            "relaxed pair did not solve; try another DATASET_SEED"
        )
    shortcut_plan = print_plan(relaxed_outcome.plan)
    replay = correctness_check(
        print_domain(i2.gold_df), print_problem(i2.gold_pf), shortcut_plan
    )
    if replay.status != CorrectnessOutcome.INCORRECT:
        raise SystemExit(
            f"shortcut plan scored {replay.status!r} on the gold pair; "
            "the fixture needs an incorrect one, try another DATASET_SEED"
        )

    return {
        (i0.id, "formalizer"): echo,
        (i0.id, "planner"): good_plan,
        (i1.id, "formalizer"): typo_reply,
        (i1.id, "planner"): (
            "I would move the blocks one at a time until the goal "
            "configuration is reached. Start from the table and work upward."
        ),
        (i2.id, "formalizer"): (
            "Domain file:\n\n" + relaxed_df_text + "\nProblem file:\n\n"
            + relaxed_pf_text
        ),
        (i2.id, "planner"): shortcut_plan,
    }


def main() -> int:
    for sub in ("dataset", "cache", "expected"):
        shutil.rmtree(FIXTURES / sub, ignore_errors=True)

    manifest = generate_dataset(
        "blocksworld",
        FIXTURES / "dataset",
        count=3,
        seed=DATASET_SEED,
        levels=("heavy",),
        blocks_range=BLOCKS_RANGE,
    )
    instances = [
        read_instance(FIXTURES / "dataset" / rel) for rel in manifest["instances"]
    ]

    replies = build_replies(instances)
    catalog = PromptCatalog.default()
    cache_dir = FIXTURES / "cache"
    cache_dir.mkdir(parents=True)
    for instance in instances:
        for pipeline, prompt in (
            ("formalizer", catalog.formalizer_prompt(instance)),
            ("planner", catalog.planner_prompt(instance)),
        ):
            reply = replies[(instance.id, pipeline)]
            req = LlmRequest(
                model_id=MODEL_ID,
                messages=(("user", prompt),),
                temperature=0.0,
                max_output_tokens=None,
            )
            seed_cache(
                cache_dir, req, reply,
                usage=(len(prompt) // 4, len(reply) // 4),
            )

    llm = LlmClient(cache_dir=cache_dir, mode="replay")
    records = run_batch(instances, llm, catalog, model_id=MODEL_ID)

    by_cell = {(r.instance_id, r.pipeline): r for r in records}
    expect = {
        (instances[0].id, "formalizer"): ("solvable", "correct", None),
        (instances[0].id, "planner"): (None, "correct", None),
        (instances[1].id, "formalizer"): ("parse_failure", "incorrect", "syntax"),
        (instances[1].id, "planner"): (None, "incorrect", "syntax"),
        (instances[2].id, "formalizer"): ("solvable", "incorrect", "unclassified"),
        (instances[2].id, "planner"): (None, "incorrect", "unclassified"),
    }
    for cell, (solvability, correctness, error_class) in expect.items():
        record = by_cell[cell]
        got = (
            record.solvability_verdict,
            record.correctness_verdict,
            record.error_class,
        )
        if got != (solvability, correctness, error_class):
            raise SystemExit(f"cell {cell} produced {got}, wanted "
                             f"{(solvability, correctness, error_class)}")

    expected_dir = FIXTURES / "expected"
    expected_dir.mkdir(parents=True)
    cells = pivot(records)
    (expected_dir / "score_table.txt").write_text(to_table(cells), encoding="utf-8")
    (expected_dir / "score.csv").write_text(to_csv(cells), encoding="utf-8")
    timing_free = [
        {k: v for k, v in record.to_dict().items() if k != "timings"}
        for record in records
    ]
    (expected_dir / "records_timing_free.json").write_text(
        json.dumps(timing_free, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )

    print(f"dataset: {len(instances)} instances, cache: {len(replies)} entries")
    print((expected_dir / "score_table.txt").read_text(), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
