"""Metrics accounting, pivoting, and report rendering."""

import pytest

from pddlbench.harness import (
    BLOCK_BUCKETS,
    MetricsSummary,
    RunRecord,
    bucket_by_blocks,
    format_summary,
    pivot,
    summarize,
    to_csv,
    to_table,
)


def formalizer_record(solvability, correctness, **kwargs):
    return RunRecord(
        instance_id=kwargs.pop("instance_id", "i"),
        pipeline="formalizer",
        domain_tag=kwargs.pop("domain_tag", "blocksworld"),
        level=kwargs.pop("level", "heavy"),
        model_id=kwargs.pop("model_id", "gpt-4o"),
        solvability_verdict=solvability,
        correctness_verdict=correctness,
        **kwargs,
    )


def planner_record(correctness, **kwargs):
    return RunRecord(
        instance_id=kwargs.pop("instance_id", "i"),
        pipeline="planner",
        domain_tag=kwargs.pop("domain_tag", "blocksworld"),
        level=kwargs.pop("level", "heavy"),
        model_id=kwargs.pop("model_id", "gpt-4o"),
        correctness_verdict=correctness,
        **kwargs,
    )


class TestSummarize:
    def test_reference_ratio(self):
        records = (
            [formalizer_record("solvable", "correct") for _ in range(60)]
            + [formalizer_record("solvable", "incorrect") for _ in range(4)]
            + [formalizer_record("parse_failure", "incorrect") for _ in range(36)]
        )
        summary = summarize(records)
        assert summary.total == 100
        assert summary.solvable_count == 64
        assert summary.correct_count == 60
        assert format_summary(summary) == "64/100 60/100"

    def test_planner_has_no_solvability(self):
        records = [planner_record("correct"), planner_record("incorrect")]
        summary = summarize(records)
        assert summary.solvable_count is None
        assert format_summary(summary) == "1/2"

    def test_mixed_pipelines_rejected(self):
        with pytest.raises(ValueError, match="mixed pipelines"):
            summarize([formalizer_record("solvable", "correct"),
                       planner_record("correct")])

    def test_correct_cannot_exceed_solvable(self):
        # A correct verdict without a solvable one is an accounting bug.
        with pytest.raises(ValueError, match="accounting violation"):
            summarize([formalizer_record("parse_failure", "correct")])

    def test_empty_records(self):
        summary = summarize([])
        assert summary == MetricsSummary(
            pipeline="", total=0, solvable_count=None, correct_count=0
        )
        assert format_summary(summary) == "0/0"

    def test_resource_exceeded_counts_as_not_solvable(self):
        records = [
            formalizer_record("solvable", "correct"),
            formalizer_record("resource_exceeded", "incorrect"),
        ]
        summary = summarize(records)
        assert summary.solvable_count == 1
        assert summary.resource_exceeded == 1

    def test_failed_records_counted(self):
        records = [
            planner_record("incorrect", failed=True, failure="boom"),
            planner_record("correct"),
        ]
        assert summarize(records).failed == 1


class TestPivot:
    def build_records(self):
        return [
            formalizer_record("solvable", "correct", domain_tag="logistics"),
            formalizer_record("solvable", "incorrect"),
            formalizer_record("unsolvable", "incorrect"),
            planner_record("correct"),
            planner_record("incorrect", level="moderate"),
        ]

    def test_partitions_by_cell(self):
        cells = pivot(self.build_records())
        assert set(cells) == {
            ("blocksworld", "heavy", "gpt-4o", "formalizer"),
            ("blocksworld", "heavy", "gpt-4o", "planner"),
            ("blocksworld", "moderate", "gpt-4o", "planner"),
            ("logistics", "heavy", "gpt-4o", "formalizer"),
        }
        bw = cells[("blocksworld", "heavy", "gpt-4o", "formalizer")]
        assert (bw.total, bw.solvable_count, bw.correct_count) == (2, 1, 0)

    def test_keys_sorted(self):
        cells = pivot(self.build_records())
        assert list(cells) == sorted(cells)


class TestBuckets:
    def test_bucket_edges(self):
        records = [
            formalizer_record("solvable", "correct",
                              complexity={"num_blocks": n})
            for n in (2, 4, 5, 15)
        ]
        buckets = bucket_by_blocks(records)
        assert list(buckets) == ["2-4", "5-7", "14-15"]
        assert buckets["2-4"].total == 2
        assert buckets["5-7"].total == 1
        assert buckets["14-15"].total == 1

    def test_records_without_block_counts_are_skipped(self):
        records = [formalizer_record("solvable", "correct", complexity={})]
        assert bucket_by_blocks(records) == {}

    def test_buckets_cover_generator_range(self):
        low = BLOCK_BUCKETS[0][0]
        high = BLOCK_BUCKETS[-1][1]
        covered = set()
        for lo, hi in BLOCK_BUCKETS:
            covered.update(range(lo, hi + 1))
        assert covered == set(range(low, high + 1))
        assert (low, high) == (2, 15)


class TestRendering:
    def build_cells(self):
        return pivot(
            [
                formalizer_record("solvable", "correct"),
                formalizer_record("resource_exceeded", "incorrect"),
                planner_record("incorrect", failed=True, failure="boom"),
            ]
        )

    def test_csv_shape(self):
        text = to_csv(self.build_cells())
        lines = text.splitlines()
        assert lines[0] == (
            "domain,level,model,pipeline,total,solvable,correct,"
            "resource_exceeded,failed"
        )
        assert lines[1] == "blocksworld,heavy,gpt-4o,formalizer,2,1,1,1,0"
        assert lines[2] == "blocksworld,heavy,gpt-4o,planner,1,,0,0,1"

    def test_table_columns_and_notes(self):
        text = to_table(self.build_cells())
        lines = text.splitlines()
        assert lines[0].split() == [
            "domain", "level", "model", "pipeline", "solvable", "correct"
        ]
        assert "1/2" in lines[1]
        assert "(1 resource-exceeded)" in lines[1]
        assert " - " in lines[2]
        assert "(1 failed)" in lines[2]

    def test_empty_table(self):
        assert to_table({}) == "no records\n"

    def test_rendering_is_deterministic(self):
        cells = self.build_cells()
        assert to_csv(cells) == to_csv(self.build_cells())
        assert to_table(cells) == to_table(self.build_cells())
