import json
import random
from pathlib import Path

import pytest

from pddlbench.datagen import (
    LEVELS_BY_DOMAIN,
    NaturalnessLevel,
    TaskInstance,
    generate_dataset,
    read_instance,
    write_instance,
)
from pddlbench.datagen.dataset import read_meta
from pddlbench.errors import ConfigError, UnsupportedDomain
from pddlbench.ground import ground
from pddlbench.llm import LlmResponse
from pddlbench.search import SearchLimits, Verdict, solve


def _tree(root: Path) -> dict[str, bytes]:
    return {
        str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()
    }


class _StubLlm:
    def complete(self, req, replicate_index=0):
        return LlmResponse(text=f"Draft for replicate {replicate_index}.")


class TestLevels:
    def test_level_matrix(self):
        values = {tag: tuple(l.value for l in levels) for tag, levels in LEVELS_BY_DOMAIN.items()}
        assert values == {
            "blocksworld": ("heavy", "moderate", "natural"),
            "mystery_blocksworld": ("heavy",),
            "logistics": ("heavy", "moderate", "natural"),
            "barman": ("heavy",),
        }

    def test_level_tokens_are_path_safe(self):
        assert NaturalnessLevel("heavy") is NaturalnessLevel.HEAVILY_TEMPLATED
        assert NaturalnessLevel("moderate") is NaturalnessLevel.MODERATELY_TEMPLATED
        assert NaturalnessLevel("natural") is NaturalnessLevel.NATURAL


class TestInstanceIo:
    def test_write_read_round_trip(self, tmp_path, bw_domain, bw_problem):
        instance = TaskInstance(
            id="blocksworld-heavy-0000",
            domain_tag="blocksworld",
            gold_df=bw_domain,
            gold_pf=bw_problem,
            dd_text="Domain text.\n",
            pd_text="Problem text.\n",
            level=NaturalnessLevel.HEAVILY_TEMPLATED,
            complexity={"num_blocks": 4},
        )
        path = write_instance(instance, tmp_path, {"seed": 123, "verification": "not_required"})
        assert path == tmp_path / "blocksworld" / "heavy" / "blocksworld-heavy-0000"
        loaded = read_instance(path)
        assert loaded == instance
        meta = read_meta(path)
        assert meta["seed"] == 123
        assert meta["verification"] == "not_required"

    def test_blank_texts_rejected(self, bw_domain, bw_problem):
        with pytest.raises(ValueError):
            TaskInstance(
                id="x", domain_tag="blocksworld", gold_df=bw_domain, gold_pf=bw_problem,
                dd_text="  \n", pd_text="y", level=NaturalnessLevel.HEAVILY_TEMPLATED,
            )


class TestGenerateDataset:
    def test_deterministic_output_tree(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        ma = generate_dataset("blocksworld", a, count=2, seed=11, levels=("heavy", "moderate"))
        mb = generate_dataset("blocksworld", b, count=2, seed=11, levels=("heavy", "moderate"))
        assert ma == mb
        assert _tree(a) == _tree(b)

    def test_seed_changes_tree(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        generate_dataset("blocksworld", a, count=2, seed=1, levels=("heavy",))
        generate_dataset("blocksworld", b, count=2, seed=2, levels=("heavy",))
        assert _tree(a) != _tree(b)

    def test_layout_ids_and_manifest(self, tmp_path):
        manifest = generate_dataset(
            "blocksworld", tmp_path, count=3, seed=5, levels=("heavy", "moderate")
        )
        assert manifest["count"] == 3
        assert manifest["levels"] == ["heavy", "moderate"]
        assert len(manifest["instances"]) == 6
        assert manifest["instances"][0] == "blocksworld/heavy/blocksworld-heavy-0000"
        disk = json.loads((tmp_path / "manifest.json").read_text())
        assert disk == manifest
        for rel in manifest["instances"]:
            for name in ("domain.pddl", "problem.pddl", "dd.txt", "pd.txt", "meta.json"):
                assert (tmp_path / rel / name).exists()

    def test_levels_share_problem_draws(self, tmp_path):
        manifest = generate_dataset(
            "blocksworld", tmp_path, count=2, seed=5, levels=("heavy", "moderate")
        )
        heavy = read_instance(tmp_path / manifest["instances"][0])
        moderate = read_instance(tmp_path / manifest["instances"][2])
        assert heavy.gold_pf == moderate.gold_pf
        assert heavy.dd_text != moderate.dd_text

    def test_instances_are_solvable(self, tmp_path):
        manifest = generate_dataset("blocksworld", tmp_path, count=3, seed=9, levels=("heavy",))
        for rel in manifest["instances"]:
            inst = read_instance(tmp_path / rel)
            task = ground(inst.gold_df, inst.gold_pf, prune_static=True)
            result = solve(task, SearchLimits(strategy="gbfs_goalcount"))
            assert result.verdict is Verdict.SOLVED

    def test_count_zero_writes_empty_manifest(self, tmp_path):
        manifest = generate_dataset("barman", tmp_path, count=0, seed=1)
        assert manifest["instances"] == []
        assert json.loads((tmp_path / "manifest.json").read_text())["count"] == 0

    def test_negative_count_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            generate_dataset("barman", tmp_path, count=-1)

    def test_unknown_domain_rejected(self, tmp_path):
        with pytest.raises(UnsupportedDomain):
            generate_dataset("sokoban", tmp_path, count=1)

    def test_unsupported_level_rejected(self, tmp_path):
        with pytest.raises(UnsupportedDomain):
            generate_dataset("barman", tmp_path, count=1, levels=("natural",))

    def test_logistics_count_clamped_with_warning(self, tmp_path):
        with pytest.warns(UserWarning):
            manifest = generate_dataset(
                "logistics", tmp_path, count=7, seed=0, levels=("heavy",)
            )
        assert manifest["count"] == 1
        assert manifest["instances"] == ["logistics/heavy/logistics-heavy-0000"]

    def test_barman_sizes_respected(self, tmp_path):
        manifest = generate_dataset(
            "barman", tmp_path, count=1, seed=4, barman_sizes=(2, 3, 1)
        )
        inst = read_instance(tmp_path / manifest["instances"][0])
        assert inst.complexity == {"shots": 2, "ingredients": 3, "cocktails": 1}

    def test_blocks_range_respected(self, tmp_path):
        manifest = generate_dataset(
            "blocksworld", tmp_path, count=3, seed=4,
            levels=("heavy",), blocks_range=(3, 4),
        )
        for rel in manifest["instances"]:
            inst = read_instance(tmp_path / rel)
            assert 3 <= len(inst.gold_pf.objects) <= 4

    def test_blocks_range_validated(self, tmp_path):
        for bad in ((1, 4), (4, 3), (2, 16)):
            with pytest.raises(ValueError):
                generate_dataset(
                    "blocksworld", tmp_path, count=1, blocks_range=bad
                )

    def test_veiled_names_with_canonical_map(self, tmp_path):
        manifest = generate_dataset(
            "mystery_blocksworld", tmp_path, count=1, seed=2, mystery_map="canonical"
        )
        inst = read_instance(tmp_path / manifest["instances"][0])
        assert inst.gold_df.name == "mystery_blocksworld"
        assert [a.name for a in inst.gold_df.actions] == [
            "attack", "succumb", "overcome", "feast",
        ]
        meta = read_meta(tmp_path / manifest["instances"][0])
        assert meta["map_style"] == "canonical"
        assert meta["rename_map"]["on"] == "craves"

    def test_veiled_names_with_fresh_map(self, tmp_path):
        manifest = generate_dataset(
            "mystery_blocksworld", tmp_path, count=2, seed=2, mystery_map="fresh"
        )
        first = read_instance(tmp_path / manifest["instances"][0])
        second = read_instance(tmp_path / manifest["instances"][1])
        canonical_names = {"attack", "succumb", "overcome", "feast"}
        assert not canonical_names & {a.name for a in first.gold_df.actions}
        assert first.gold_df.name != second.gold_df.name

    def test_natural_requires_llm(self, tmp_path):
        with pytest.raises(ConfigError):
            generate_dataset("blocksworld", tmp_path, count=1, levels=("natural",))

    def test_natural_drafts_marked_unverified(self, tmp_path):
        manifest = generate_dataset(
            "blocksworld", tmp_path, count=1, seed=3, levels=("natural",), llm=_StubLlm()
        )
        rel = manifest["instances"][0]
        inst = read_instance(tmp_path / rel)
        assert inst.dd_text.startswith("Draft for replicate")
        meta = read_meta(tmp_path / rel)
        assert meta["verification"] == "unverified"
        assert meta["draft_model"] == "gpt-4o"
        assert len(meta["review_checklist"]) >= 5

    def test_templated_marked_not_required(self, tmp_path):
        manifest = generate_dataset("blocksworld", tmp_path, count=1, seed=3, levels=("heavy",))
        assert read_meta(tmp_path / manifest["instances"][0])["verification"] == "not_required"
