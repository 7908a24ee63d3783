"""
Tests for the benchmark runner.

Feature: benchmark
"""

import json
import os

import pytest

from config import config
from src.benchmark import CSV_COLUMNS, Benchmark
from src.errors import InputError


@pytest.fixture
def small_profiles(monkeypatch):
    monkeypatch.setitem(config.BENCH_PROFILES, "tiny", [
        {"label": "k_4", "kind": "kstat", "args": 4},
        {"label": "[1^3 2]", "kind": "augtops", "args": [1, 1, 1, 2]},
        {"label": "[1 1][1]", "kind": "augprod", "args": [[1, 1], [1]]},
        {"label": "k_2,1", "kind": "polykay", "args": [2, 1]},
        {"label": "k_11 k_1", "kind": "mpolykay", "args": [[(1, 0), (0, 1)], [(1, 0)]]},
    ])
    monkeypatch.setitem(config.BENCH_SOFT_BUDGETS, "k_4", 1000.0)
    return "tiny"


class TestBenchmark:
    """Profile runs and reports."""

    def test_run_profile(self, small_profiles):
        summary = Benchmark(threads=1).run_profile(small_profiles)
        assert summary["total_inputs"] == summary["completed"] == 5
        assert summary["over_budget"] == []
        by_label = {r["label"]: r for r in summary["results"]}
        assert by_label["k_4"]["term_count"] == 5
        assert by_label["k_4"]["soft_budget_ms"] == 1000000.0
        assert by_label["[1^3 2]"]["term_count"] == 6
        assert by_label["[1 1][1]"]["term_count"] == 2
        assert all(r["peak_subdivisions"] >= 1 for r in summary["results"])

    def test_order_guard_is_reported_not_raised(self, small_profiles):
        summary = Benchmark(threads=1, max_order=3).run_profile(small_profiles)
        by_label = {r["label"]: r for r in summary["results"]}
        assert "error" in by_label["k_4"]
        assert summary["completed"] < summary["total_inputs"]

    def test_frame_columns(self, small_profiles):
        summary = Benchmark().run_profile(small_profiles)
        frame = Benchmark.to_frame(summary)
        assert list(frame.columns) == CSV_COLUMNS
        assert len(frame) == 5

    def test_save_results(self, small_profiles, tmp_path, monkeypatch):
        latest = tmp_path / "latest.json"
        monkeypatch.setattr(config, "BENCH_RESULTS_FILE", str(latest))
        benchmark = Benchmark()
        summary = benchmark.run_profile(small_profiles)
        paths = benchmark.save_results(summary, str(tmp_path / "run.json"))
        assert all(os.path.exists(p) for p in paths)
        with open(latest) as f:
            assert json.load(f)["profile"] == "tiny"
        with open(tmp_path / "run.csv") as f:
            assert f.readline().strip() == ",".join(CSV_COLUMNS)

    def test_unknown_profile(self):
        with pytest.raises(InputError):
            Benchmark().run_profile("missing")
