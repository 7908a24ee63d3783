"""
Quick script to run a benchmark profile
Usage: python run_benchmark.py [profile] [threads]
"""
import sys

from logzero import logger

from src.benchmark import Benchmark


def main():
    # Profile and thread count from the command line, default to the quick profile
    profile = sys.argv[1] if len(sys.argv) > 1 else "quick"
    threads = int(sys.argv[2]) if len(sys.argv) > 2 else None

    logger.info(f"Starting benchmark profile {profile}...")

    benchmark = Benchmark(threads=threads)
    summary = benchmark.run_profile(profile)
    paths = benchmark.save_results(summary)

    # Print summary
    print("\n" + "=" * 60)
    print("BENCHMARK RESULTS SUMMARY")
    print("=" * 60)
    print(f"Profile: {summary['profile']}")
    print(f"Completed Inputs: {summary['completed']}/{summary['total_inputs']}")
    print(f"Total Time: {summary['total_ms'] / 1000:.2f} s")
    print(benchmark.to_frame(summary).to_string(index=False))
    if summary["over_budget"]:
        print(f"Over soft budget: {', '.join(summary['over_budget'])}")
    print("=" * 60)
    print(f"\nDetailed results saved to: {paths[0]}")


if __name__ == "__main__":
    main()
