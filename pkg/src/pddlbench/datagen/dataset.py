"""Benchmark task instances: generation driver and on-disk dataset layout.

Layout: ``<root>/<domain>/<level>/<id>/`` holding domain.pddl, problem.pddl,
dd.txt, pd.txt, and meta.json (seed, complexity, verification status). A
manifest.json at the root lists every instance directory.
"""

from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

from ..assets import asset_text, gold_domain, gold_problem
from ..errors import ConfigError, UnsupportedDomain
from ..ground import ground
from ..llm import LlmClient
from ..model import Domain, Problem
from ..parser import parse_domain, parse_problem
from ..printer import print_domain, print_problem
from ..search import SearchLimits, Verdict, solve
from .instances import blocksworld_config, gen_barman_instance, gen_blocksworld_instance
from .lexicon import Lexicalization, for_domain, mystery_lexicalization
from .obfuscate import RenameMap, canonical_mystery_map, fresh_nonsense_map, obfuscate
from .render import (
    NATURAL_SEEDS,
    heavy_dd_text,
    render_heavy_pd,
    render_moderate,
    render_moderate_pd,
    render_natural,
)


class NaturalnessLevel(str, Enum):
    HEAVILY_TEMPLATED = "heavy"
    MODERATELY_TEMPLATED = "moderate"
    NATURAL = "natural"


LEVELS_BY_DOMAIN: Mapping[str, tuple[NaturalnessLevel, ...]] = {
    "blocksworld": (
        NaturalnessLevel.HEAVILY_TEMPLATED,
        NaturalnessLevel.MODERATELY_TEMPLATED,
        NaturalnessLevel.NATURAL,
    ),
    "mystery_blocksworld": (NaturalnessLevel.HEAVILY_TEMPLATED,),
    "logistics": (
        NaturalnessLevel.HEAVILY_TEMPLATED,
        NaturalnessLevel.MODERATELY_TEMPLATED,
        NaturalnessLevel.NATURAL,
    ),
    "barman": (NaturalnessLevel.HEAVILY_TEMPLATED,),
}

# How many fresh draws to try before concluding a configuration cannot be
# solved within limits.
_MAX_REDRAWS = 25


@dataclass(frozen=True)
class TaskInstance:
    """One benchmark item: gold PDDL pair plus its description texts."""

    id: str
    domain_tag: str
    gold_df: Domain
    gold_pf: Problem
    dd_text: str
    pd_text: str
    level: NaturalnessLevel
    complexity: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.dd_text.strip() or not self.pd_text.strip():
            raise ValueError(f"instance {self.id}: dd/pd text must be nonempty")


def instance_dir(root: str | Path, instance: TaskInstance) -> Path:
    return Path(root) / instance.domain_tag / instance.level.value / instance.id


def write_instance(
    instance: TaskInstance, root: str | Path, meta_extra: Mapping | None = None
) -> Path:
    out = instance_dir(root, instance)
    out.mkdir(parents=True, exist_ok=True)
    (out / "domain.pddl").write_text(print_domain(instance.gold_df), encoding="utf-8")
    (out / "problem.pddl").write_text(
        print_problem(instance.gold_pf), encoding="utf-8"
    )
    (out / "dd.txt").write_text(instance.dd_text, encoding="utf-8")
    (out / "pd.txt").write_text(instance.pd_text, encoding="utf-8")
    meta = {
        "id": instance.id,
        "domain_tag": instance.domain_tag,
        "level": instance.level.value,
        "complexity": dict(instance.complexity),
    }
    if meta_extra:
        meta.update(meta_extra)
    (out / "meta.json").write_text(
        json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return out


def read_meta(path: str | Path) -> dict:
    return json.loads((Path(path) / "meta.json").read_text(encoding="utf-8"))


def read_instance(path: str | Path) -> TaskInstance:
    path = Path(path)
    meta = read_meta(path)
    domain = parse_domain((path / "domain.pddl").read_text(encoding="utf-8"))
    problem = parse_problem(
        (path / "problem.pddl").read_text(encoding="utf-8"), domain
    )
    return TaskInstance(
        id=meta["id"],
        domain_tag=meta["domain_tag"],
        gold_df=domain,
        gold_pf=problem,
        dd_text=(path / "dd.txt").read_text(encoding="utf-8"),
        pd_text=(path / "pd.txt").read_text(encoding="utf-8"),
        level=NaturalnessLevel(meta["level"]),
        complexity=meta.get("complexity", {}),
    )


def _coerce_levels(
    domain_tag: str, levels: Sequence[NaturalnessLevel | str] | None
) -> tuple[NaturalnessLevel, ...]:
    allowed = LEVELS_BY_DOMAIN[domain_tag]
    if levels is None:
        return allowed
    out = []
    for level in levels:
        level = NaturalnessLevel(level)
        if level not in allowed:
            raise UnsupportedDomain(
                f"domain '{domain_tag}' has no {level.value} level; "
                f"available: {', '.join(l.value for l in allowed)}"
            )
        out.append(level)
    return tuple(out)


def _is_solvable(domain: Domain, problem: Problem, limits: SearchLimits) -> bool:
    task = ground(domain, problem, prune_static=True)
    return solve(task, limits).verdict is Verdict.SOLVED


def _logistics_complexity(problem: Problem) -> dict[str, int]:
    counts = {"packages": 0, "trucks": 0, "airplanes": 0, "cities": 0}
    names = {"package": "packages", "truck": "trucks", "airplane": "airplanes", "city": "cities"}
    for lit in problem.init:
        if lit.predicate in names:
            counts[names[lit.predicate]] += 1
    return counts


@dataclass
class _Draw:
    """One sampled problem before per-level rendering."""

    domain: Domain
    problem: Problem
    complexity: dict
    lex: Lexicalization
    seed: int
    meta_extra: dict = field(default_factory=dict)


def _draw_blocksworld(
    rng: random.Random, domain: Domain, lex, blocks_range, limits, check
) -> _Draw:
    for _ in range(_MAX_REDRAWS):
        inst_seed = rng.randrange(2**31)
        num_blocks = rng.randint(*blocks_range)
        problem, complexity = gen_blocksworld_instance(inst_seed, num_blocks)
        if not check or _is_solvable(domain, problem, limits):
            return _Draw(domain, problem, complexity, lex, inst_seed)
    raise RuntimeError("no solvable blocksworld draw found")


def _draw_mystery(
    rng: random.Random, bw_domain: Domain, map_style: str, blocks_range, limits, check
) -> _Draw:
    for _ in range(_MAX_REDRAWS):
        inst_seed = rng.randrange(2**31)
        num_blocks = rng.randint(*blocks_range)
        problem, complexity = gen_blocksworld_instance(inst_seed, num_blocks)
        if map_style == "canonical":
            rmap = canonical_mystery_map()
        elif map_style == "fresh":
            rmap = fresh_nonsense_map(bw_domain, problem, rng)
        else:
            raise ValueError(f"unknown mystery map style {map_style!r}")
        obf_domain, obf_problem = obfuscate(bw_domain, problem, rmap)
        if not check or _is_solvable(obf_domain, obf_problem, limits):
            return _Draw(
                obf_domain,
                obf_problem,
                complexity,
                mystery_lexicalization(rmap),
                inst_seed,
                {"map_style": map_style, "rename_map": rmap.as_dict()},
            )
    raise RuntimeError("no solvable mystery draw found")


def _draw_barman(
    rng: random.Random,
    domain: Domain,
    lex,
    sizes: tuple[int, int, int] | None,
    limits,
    check,
) -> _Draw:
    for _ in range(_MAX_REDRAWS):
        inst_seed = rng.randrange(2**31)
        if sizes is not None:
            shots, ingredients, cocktails = sizes
        else:
            shots = rng.randint(1, 9)
            ingredients = rng.randint(1, 9)
            cocktails = rng.randint(1, shots)
        problem = gen_barman_instance(inst_seed, shots, ingredients, cocktails)
        complexity = {
            "shots": shots,
            "ingredients": ingredients,
            "cocktails": cocktails,
        }
        if not check or _is_solvable(domain, problem, limits):
            return _Draw(domain, problem, complexity, lex, inst_seed)
    raise RuntimeError("no solvable barman draw found")


def generate_dataset(
    domain_tag: str,
    out_dir: str | Path,
    count: int = 1,
    seed: int = 0,
    levels: Sequence[NaturalnessLevel | str] | None = None,
    llm: LlmClient | None = None,
    model_id: str = "gpt-4o",
    mystery_map: str = "canonical",
    barman_sizes: tuple[int, int, int] | None = None,
    blocks_range: tuple[int, int] = (2, 15),
    check_solvable: bool = True,
    limits: SearchLimits | None = None,
) -> dict:
    """Generate ``count`` instances per requested level and write them under out_dir.

    Each index draws one problem, shared by every level; every emitted
    instance passes a solvability check unless check_solvable is off.
    Returns the manifest, which is also written to out_dir/manifest.json.
    """
    if domain_tag not in LEVELS_BY_DOMAIN:
        raise UnsupportedDomain(
            f"unknown domain '{domain_tag}', "
            f"expected one of {', '.join(LEVELS_BY_DOMAIN)}"
        )
    levels = _coerce_levels(domain_tag, levels)
    if count < 0:
        raise ValueError("count must be nonnegative")
    if not (2 <= blocks_range[0] <= blocks_range[1] <= 15):
        raise ValueError("blocks_range must fall within 2..15")
    if NaturalnessLevel.NATURAL in levels and llm is None:
        raise ConfigError(
            "the natural level drafts text with an LLM; pass an LlmClient"
        )
    if domain_tag == "logistics" and count > 1:
        warnings.warn(
            "logistics replicates the single shipped instance; clamping count to 1"
        )
        count = 1

    limits = limits or SearchLimits(strategy="gbfs_goalcount")
    rng = random.Random(seed)
    out_dir = Path(out_dir)

    draws: list[_Draw] = []
    for _ in range(count):
        if domain_tag == "blocksworld":
            draws.append(
                _draw_blocksworld(
                    rng, gold_domain("blocksworld"), for_domain("blocksworld"),
                    blocks_range, limits, check_solvable,
                )
            )
        elif domain_tag == "mystery_blocksworld":
            draws.append(
                _draw_mystery(
                    rng, gold_domain("blocksworld"), mystery_map, blocks_range,
                    limits, check_solvable,
                )
            )
        elif domain_tag == "logistics":
            domain = gold_domain("logistics")
            problem = gold_problem("logistics")
            if check_solvable and not _is_solvable(domain, problem, limits):
                raise RuntimeError("shipped logistics instance failed solve check")
            draws.append(
                _Draw(
                    domain, problem, _logistics_complexity(problem),
                    for_domain("logistics"), seed,
                )
            )
        else:
            draws.append(
                _draw_barman(
                    rng, gold_domain("barman"), for_domain("barman"),
                    barman_sizes, limits, check_solvable,
                )
            )

    instance_dirs: list[str] = []
    for level in levels:
        for i, draw in enumerate(draws):
            dd, pd, meta_extra = _render_level(
                domain_tag, level, draw, llm, model_id, rng
            )
            instance = TaskInstance(
                id=f"{domain_tag}-{level.value}-{i:04d}",
                domain_tag=domain_tag,
                gold_df=draw.domain,
                gold_pf=draw.problem,
                dd_text=dd,
                pd_text=pd,
                level=level,
                complexity=draw.complexity,
            )
            meta = {"seed": draw.seed, **draw.meta_extra, **meta_extra}
            path = write_instance(instance, out_dir, meta)
            instance_dirs.append(str(path.relative_to(out_dir)))

    manifest = {
        "domain_tag": domain_tag,
        "seed": seed,
        "count": count,
        "levels": [l.value for l in levels],
        "instances": instance_dirs,
    }
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    return manifest


def _render_level(
    domain_tag: str,
    level: NaturalnessLevel,
    draw: _Draw,
    llm: LlmClient | None,
    model_id: str,
    rng: random.Random,
) -> tuple[str, str, dict]:
    if level is NaturalnessLevel.HEAVILY_TEMPLATED:
        dd = heavy_dd_text(domain_tag, draw.domain, draw.lex)
        pd = render_heavy_pd(draw.problem, draw.lex)
        return dd, pd, {"verification": "not_required"}
    if level is NaturalnessLevel.MODERATELY_TEMPLATED:
        dd = render_moderate(domain_tag)
        pd = render_moderate_pd(draw.problem, draw.lex)
        return dd, pd, {"verification": "not_required"}

    dd_asset, pd_asset = NATURAL_SEEDS[domain_tag]
    if domain_tag == "blocksworld":
        config = blocksworld_config(draw.problem)
    else:
        config = {"heavy_pd": render_heavy_pd(draw.problem, draw.lex)}
    dd, pd, checklist = render_natural(
        seed_dd=asset_text(dd_asset),
        problem_config=config,
        llm=llm,
        rng=rng,
        model_id=model_id,
        pd_exemplars=(asset_text(pd_asset),),
    )
    return dd, pd, {
        "verification": "unverified",
        "review_checklist": list(checklist),
        "draft_model": model_id,
        "draft_temperature": 1.0,
    }
