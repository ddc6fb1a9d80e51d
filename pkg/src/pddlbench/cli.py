"""Command-line entry point tying generation, evaluation, and scoring together.

Subcommands: gen, run, score, solve, validate. Exit codes are a stable
scripting contract: 0 success, 1 negative verdict (solve/validate), 2 usage
error, 3 infrastructure error (endpoint, credentials, replay cache miss),
4 ill-formed plan (validate only).

A config file may hold flat key=value defaults for any long flag of the
chosen subcommand; explicit flags win. All randomness flows from --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .datagen import LEVELS_BY_DOMAIN, generate_dataset, read_instance
from .errors import (
    CacheMiss,
    ConfigError,
    EndpointError,
    PddlError,
    UnsupportedDomain,
)
from .ground import ground
from .harness import (
    PromptCatalog,
    bucket_by_blocks,
    format_summary,
    pivot,
    read_records,
    run_batch,
    to_csv,
    to_table,
)
from .llm import LlmClient
from .parser import parse_domain, parse_plan, parse_problem
from .printer import print_plan
from .search import SearchLimits, Verdict, solve
from .validate import ILL_FORMED, VALID, validate

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2
EXIT_INFRA = 3
EXIT_ILL_FORMED = 4

_DOMAIN_ALIASES = {"mystery": "mystery_blocksworld"}


class UsageError(Exception):
    pass


def _domain_tag(name: str) -> str:
    return _DOMAIN_ALIASES.get(name, name)


def _load_config(path: str) -> dict[str, str]:
    """Flat key=value file; blank lines and # comments ignored."""
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}")
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(parser: argparse.ArgumentParser, args: list[str]) -> list[str]:
    """Fold --config file values into parser defaults; flags still win."""
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    found, _ = probe.parse_known_args(args)
    if not found.config:
        return args
    values = _load_config(found.config)
    known = {
        action.dest for action in parser._actions if action.dest != argparse.SUPPRESS
    }
    unknown = sorted(set(values) - known)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    typed = {}
    for key, raw in values.items():
        action = next(a for a in parser._actions if a.dest == key)
        if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
            typed[key] = raw.lower() in ("1", "true", "yes", "on")
        elif action.type is not None:
            typed[key] = action.type(raw)
        else:
            typed[key] = raw
    parser.set_defaults(**typed)
    return args


def _limits(args) -> SearchLimits | None:
    """Limits from flags, or None when no search flag was given."""
    kwargs = {}
    if getattr(args, "max_expanded", None) is not None:
        kwargs["max_expanded_states"] = args.max_expanded
    if getattr(args, "max_seconds", None) is not None:
        kwargs["max_wall_time"] = args.max_seconds
    if getattr(args, "strategy", None):
        kwargs["strategy"] = args.strategy
    return SearchLimits(**kwargs) if kwargs else None


def _llm_client(args) -> LlmClient:
    mode = "replay" if getattr(args, "replay", False) else "record"
    return LlmClient(
        cache_dir=args.cache_dir,
        mode=mode,
        max_in_flight=getattr(args, "parallelism", 4),
    )


def _read_text(path: str, what: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {what}: {exc}")


# ---------------------------------------------------------------- gen


def _cmd_gen(args) -> int:
    tag = _domain_tag(args.domain)
    levels = args.levels.split(",") if args.levels else None
    barman_sizes = None
    if args.barman_sizes:
        try:
            shots, ingredients, cocktails = (
                int(v) for v in args.barman_sizes.split(",")
            )
        except ValueError:
            raise UsageError("--barman-sizes expects three integers: shots,ingredients,cocktails")
        barman_sizes = (shots, ingredients, cocktails)
    blocks_range = (2, 15)
    if args.blocks:
        try:
            low, high = (int(v) for v in args.blocks.split(","))
        except ValueError:
            raise UsageError("--blocks expects two integers: min,max")
        blocks_range = (low, high)

    if levels is None:
        wants_natural = any(
            l.value == "natural" for l in LEVELS_BY_DOMAIN.get(tag, ())
        )
    else:
        wants_natural = "natural" in levels
    llm = _llm_client(args) if wants_natural else None

    manifest = generate_dataset(
        tag,
        args.out,
        count=args.count,
        seed=args.seed,
        levels=levels,
        llm=llm,
        model_id=args.model,
        mystery_map=args.map,
        barman_sizes=barman_sizes,
        blocks_range=blocks_range,
        check_solvable=not args.no_solve_check,
        limits=_limits(args),
    )
    print(
        f"wrote {len(manifest['instances'])} instances "
        f"({manifest['count']} per level) under {args.out}"
    )
    return EXIT_OK


# ---------------------------------------------------------------- run


def _cmd_run(args) -> int:
    root = Path(args.dataset)
    manifest_path = root / "manifest.json"
    if not manifest_path.exists():
        raise UsageError(f"no manifest.json under {root}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    level_filter = set(args.levels.split(",")) if args.levels else None
    instances = []
    for rel in manifest["instances"]:
        instance = read_instance(root / rel)
        if level_filter and instance.level.value not in level_filter:
            continue
        instances.append(instance)

    pipelines = tuple(args.pipelines.split(","))
    llm = _llm_client(args)
    records = run_batch(
        instances,
        llm,
        PromptCatalog.default(),
        pipelines=pipelines,
        limits=_limits(args),
        model_id=args.model,
        temperature=args.temperature,
        max_workers=args.parallelism,
        out_path=args.out,
    )
    failed = sum(1 for r in records if r.failed)
    print(f"wrote {len(records)} records to {args.out}" + (f" ({failed} failed)" if failed else ""))
    return EXIT_OK


# ---------------------------------------------------------------- score


def _cmd_score(args) -> int:
    records = []
    for path in args.records:
        if not Path(path).exists():
            raise UsageError(f"records file not found: {path}")
        records.extend(read_records(path))
    cells = pivot(records)
    sys.stdout.write(to_table(cells))
    if args.buckets:
        blocks = bucket_by_blocks([r for r in records if r.pipeline == "formalizer"])
        if blocks:
            sys.stdout.write("\nby problem size (formalizer)\n")
            for label, summary in blocks.items():
                sys.stdout.write(f"{label:>6}  {format_summary(summary)}\n")
    if args.csv:
        Path(args.csv).write_text(to_csv(cells), encoding="utf-8")
        print(f"\ncsv written to {args.csv}")
    return EXIT_OK


# ---------------------------------------------------------------- solve


def _cmd_solve(args) -> int:
    df_text = _read_text(args.domain_file, "domain file")
    pf_text = _read_text(args.problem_file, "problem file")
    try:
        domain = parse_domain(df_text)
        problem = parse_problem(pf_text, domain)
    except PddlError as exc:
        raise UsageError(f"input is not valid PDDL: {exc}")
    task = ground(domain, problem, prune_static=True)
    result = solve(task, _limits(args))
    if result.verdict is Verdict.SOLVED:
        text = print_plan(result.plan)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        sys.stdout.write(text)
        return EXIT_OK
    print(result.verdict.value, file=sys.stderr)
    return EXIT_VERDICT


# ---------------------------------------------------------------- validate


def _cmd_validate(args) -> int:
    df_text = _read_text(args.domain_file, "domain file")
    pf_text = _read_text(args.problem_file, "problem file")
    plan_text = _read_text(args.plan_file, "plan file")
    try:
        domain = parse_domain(df_text)
        problem = parse_problem(pf_text, domain)
    except PddlError as exc:
        raise UsageError(f"input is not valid PDDL: {exc}")
    try:
        plan = parse_plan(plan_text)
    except PddlError as exc:
        print(f"ill_formed: plan does not parse: {exc}", file=sys.stderr)
        return EXIT_ILL_FORMED
    report = validate(domain, problem, plan)
    if report.verdict == VALID:
        print("valid")
        return EXIT_OK
    reason = report.failure_reason
    detail = f" at step {report.failure_step}: {reason.detail}" if reason else ""
    print(f"{report.verdict}{detail}", file=sys.stderr)
    return EXIT_ILL_FORMED if report.verdict == ILL_FORMED else EXIT_VERDICT


# ---------------------------------------------------------------- parser


def _add_search_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--strategy", choices=("bfs", "gbfs_goalcount"), default=None,
                     help="search strategy (default bfs)")
    sub.add_argument("--max-expanded", type=int, default=None,
                     help="state expansion budget")
    sub.add_argument("--max-seconds", type=float, default=None,
                     help="wall-clock budget in seconds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pddlbench",
        description="Benchmark harness for LLM PDDL formalization and planning.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="generate a dataset")
    gen.add_argument("domain", help="blocksworld | mystery | logistics | barman")
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--levels", default=None, help="comma list: heavy,moderate,natural")
    gen.add_argument("--out", default="dataset")
    gen.add_argument("--map", choices=("canonical", "fresh"), default="canonical",
                     help="mystery renaming style")
    gen.add_argument("--barman-sizes", default=None,
                     help="fixed shots,ingredients,cocktails")
    gen.add_argument("--blocks", default=None,
                     help="block count range min,max (default 2,15)")
    gen.add_argument("--no-solve-check", action="store_true")
    gen.add_argument("--model", default="gpt-4o", help="drafting model for natural level")
    gen.add_argument("--cache-dir", default="llm_cache")
    gen.add_argument("--replay", action="store_true", help="serve LLM calls from cache only")
    gen.add_argument("--config", default=None)
    _add_search_flags(gen)
    gen.set_defaults(func=_cmd_gen)

    run = subs.add_parser("run", help="evaluate a dataset through the pipelines")
    run.add_argument("--dataset", required=True)
    run.add_argument("--pipelines", default="formalizer,planner")
    run.add_argument("--levels", default=None, help="only these levels")
    run.add_argument("--model", default="gpt-4o")
    run.add_argument("--temperature", type=float, default=0.0)
    run.add_argument("--cache-dir", default="llm_cache")
    run.add_argument("--replay", action="store_true")
    run.add_argument("--parallelism", type=int, default=4)
    run.add_argument("--out", default="records.jsonl")
    run.add_argument("--config", default=None)
    _add_search_flags(run)
    run.set_defaults(func=_cmd_run)

    score = subs.add_parser("score", help="summarize run records")
    score.add_argument("records", nargs="+")
    score.add_argument("--csv", default=None, help="also write csv here")
    score.add_argument("--buckets", action="store_true",
                       help="include problem-size buckets")
    score.add_argument("--config", default=None)
    score.set_defaults(func=_cmd_score)

    solve_cmd = subs.add_parser("solve", help="find a plan for a PDDL pair")
    solve_cmd.add_argument("domain_file")
    solve_cmd.add_argument("problem_file")
    solve_cmd.add_argument("--out", default=None, help="write the plan here too")
    solve_cmd.add_argument("--config", default=None)
    _add_search_flags(solve_cmd)
    solve_cmd.set_defaults(func=_cmd_solve)

    val = subs.add_parser("validate", help="replay a plan against a PDDL pair")
    val.add_argument("domain_file")
    val.add_argument("problem_file")
    val.add_argument("plan_file")
    val.add_argument("--config", default=None)
    val.set_defaults(func=_cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if argv and argv[0] in ("gen", "run", "score", "solve", "validate"):
            # fold config-file defaults into the matching subparser
            for action in parser._actions:
                if isinstance(action, argparse._SubParsersAction):
                    _apply_config(action.choices[argv[0]], argv[1:])
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedDomain as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, CacheMiss, EndpointError) as exc:
        print(f"infrastructure error: {exc}", file=sys.stderr)
        return EXIT_INFRA
    except OSError as exc:
        print(f"infrastructure error: {exc}", file=sys.stderr)
        return EXIT_INFRA


if __name__ == "__main__":
    sys.exit(main())
