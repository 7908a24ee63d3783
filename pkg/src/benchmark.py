"""
Benchmark Module
Replays the benchmark profiles from config (bracket conversions, k-statistics,
polykays and bracket products) and records wall time, output size and the
largest subdivision list needed for each input
"""
import json
import os
import time
from datetime import datetime
from typing import Dict, List, Optional

import pandas as pd
from logzero import logger

from config import config
from src import basis_conversion, subdivisions
from src.errors import InputError, UmbralError
from src.estimators import k_statistic, multivariate_polykay, polykay
from src.symexpr import Bracket

CSV_COLUMNS = ["input_label", "wall_ms", "term_count", "peak_subdivisions"]


class Benchmark:
    """Runs benchmark profiles against cold caches"""

    def __init__(self, threads: int = None, max_order: int = None):
        """
        Initialize benchmark

        Args:
            threads: Worker threads passed to estimator builds
            max_order: Order guard override for large inputs
        """
        self.threads = config.DEFAULT_THREADS if threads is None else threads
        self.max_order = max_order

    def _execute(self, kind: str, args) -> int:
        """Run one input and return its output term count."""
        if kind == "kstat":
            return k_statistic(int(args), max_order=self.max_order, threads=self.threads).term_count
        if kind == "polykay":
            return polykay(args, max_order=self.max_order, threads=self.threads).term_count
        if kind == "mpolykay":
            return multivariate_polykay(args, max_order=self.max_order, threads=self.threads).term_count
        if kind == "augtops":
            return len(basis_conversion.aug_to_ps(Bracket.univariate(args)))
        if kind == "augprod":
            return len(basis_conversion.aug_product([Bracket.univariate(b) for b in args]))
        raise InputError(f"unknown benchmark kind: {kind}")

    def run_input(self, entry: Dict) -> Dict:
        """
        Time one benchmark input from a clean cache

        Args:
            entry: dict with label, kind and args

        Returns:
            dict: label, kind, wall_ms, term_count, peak_subdivisions and
                soft-budget information (or error)
        """
        label = entry["label"]
        subdivisions.clear_cache()
        basis_conversion.clear_cache()
        logger.info(f"Benchmarking {label}...")
        started = time.perf_counter()
        try:
            term_count = self._execute(entry["kind"], entry["args"])
        except UmbralError as e:
            logger.error(f"Benchmark input {label} failed: {e}")
            return {"label": label, "kind": entry["kind"], "error": str(e)}
        wall_ms = (time.perf_counter() - started) * 1000
        result = {
            "label": label,
            "kind": entry["kind"],
            "wall_ms": round(wall_ms, 2),
            "term_count": term_count,
            "peak_subdivisions": subdivisions.peak_subdivisions(),
        }
        budget = entry.get("budget")
        if budget is not None:
            result["soft_budget_ms"] = budget * 1000
            result["over_budget"] = wall_ms > budget * 1000
            if result["over_budget"]:
                logger.warning(f"{label} took {wall_ms:.0f} ms, over the soft budget of {budget:.0f} s")
        logger.info(f"{label}: {term_count} terms in {wall_ms:.1f} ms")
        return result

    def run_profile(self, name: str) -> Dict:
        """
        Run every input of a profile

        Args:
            name: Profile name from config.BENCH_PROFILES

        Returns:
            dict: Summary with per-input results
        """
        if name not in config.BENCH_PROFILES:
            raise InputError(f"unknown benchmark profile {name!r}; choose from {sorted(config.BENCH_PROFILES)}")
        entries = config.BENCH_PROFILES[name]
        logger.info(f"Starting benchmark profile {name} ({len(entries)} inputs)...")

        results = []
        for entry in entries:
            budget = config.BENCH_SOFT_BUDGETS.get(entry["label"], config.BENCH_SOFT_BUDGETS.get(name))
            results.append(self.run_input({**entry, "budget": budget}))

        completed = [r for r in results if "error" not in r]
        summary = {
            "profile": name,
            "run_at": datetime.now().isoformat(timespec="seconds"),
            "threads": self.threads,
            "total_inputs": len(entries),
            "completed": len(completed),
            "total_ms": round(sum(r["wall_ms"] for r in completed), 2),
            "over_budget": [r["label"] for r in completed if r.get("over_budget")],
            "results": results,
        }
        logger.info(f"Benchmark {name} completed: {len(completed)}/{len(entries)} inputs in {summary['total_ms']:.0f} ms")
        return summary

    @staticmethod
    def to_frame(summary: Dict) -> pd.DataFrame:
        """One row per completed input with the report columns."""
        rows = [
            {
                "input_label": r["label"],
                "wall_ms": r["wall_ms"],
                "term_count": r["term_count"],
                "peak_subdivisions": r["peak_subdivisions"],
            }
            for r in summary.get("results", []) if "error" not in r
        ]
        return pd.DataFrame(rows, columns=CSV_COLUMNS)

    def save_results(self, summary: Dict, filename: Optional[str] = None) -> List[str]:
        """
        Save benchmark results as JSON and CSV

        Args:
            summary: Result of run_profile
            filename: JSON output path (default: timestamped file in the data directory)

        Returns:
            list: Paths written
        """
        if filename is None:
            stamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            filename = os.path.join(config.DATA_DIR, f"bench_{summary['profile']}_{stamp}.json")
        os.makedirs(os.path.dirname(filename) or ".", exist_ok=True)

        with open(filename, "w") as f:
            json.dump(summary, f, indent=2, default=str)
        csv_filename = os.path.splitext(filename)[0] + ".csv"
        self.to_frame(summary).to_csv(csv_filename, index=False)
        logger.info(f"Benchmark results saved to {filename} and {csv_filename}")

        # Also save to a "latest" file for easy access
        os.makedirs(os.path.dirname(config.BENCH_RESULTS_FILE) or ".", exist_ok=True)
        with open(config.BENCH_RESULTS_FILE, "w") as f:
            json.dump(summary, f, indent=2, default=str)
        return [filename, csv_filename, config.BENCH_RESULTS_FILE]
