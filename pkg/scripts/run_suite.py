"""Run the full verification suite and write its JSON report.

    python scripts/run_suite.py --seed 0 --out results/suite.json
"""

import argparse
import json
import sys
import time
from pathlib import Path

from quivinv.suite import SuiteConfig, run_suite


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100, help="invariance samples per instance")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", type=Path, default=Path("results/suite.json"))
    args = p.parse_args()

    start = time.perf_counter()
    report = run_suite(SuiteConfig(seed=args.seed, invariance_samples=args.samples), args.workers)
    elapsed = time.perf_counter() - start

    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
    for name, section in report.items():
        if isinstance(section, dict) and "pass" in section:
            print(f"{name:<14} {'pass' if section['pass'] else 'FAIL'}")
    print(f"overall        {'pass' if report['pass'] else 'FAIL'}  ({elapsed:.1f}s, report in {args.out})")
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
