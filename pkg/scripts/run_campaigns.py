#!/usr/bin/env python3
"""Run the three verification campaigns and write their reports.

Convenience wrapper over the library's harness entry points; the amalgam
CLI exposes the same campaigns one at a time.  Exit code 3 if any campaign
records failures, mirroring the CLI convention.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from amalgam.campaigns import (
    check_algebraic_properties,
    check_apply_reduction,
    check_composition_equivalence,
)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=10_000, help="reduction campaign size")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--out", type=Path, default=None, help="directory for full JSON reports (optional)"
    )
    args = parser.parse_args(argv)

    runs = [
        ("composition-equivalence", lambda: check_composition_equivalence()),
        ("apply-reduction", lambda: check_apply_reduction(trials=args.trials, seed=args.seed)),
        ("algebraic-properties", lambda: check_algebraic_properties(seed=args.seed)),
    ]

    any_failures = False
    for name, run in runs:
        started = time.perf_counter()
        report = run()
        elapsed = time.perf_counter() - started
        status = "ok" if report.passed else "FAILED"
        print(
            f"{name}: {report.cases_run} cases, {len(report.failures)} failures, "
            f"{len(report.findings)} findings, {elapsed:.1f}s [{status}]"
        )
        any_failures = any_failures or not report.passed
        if args.out is not None:
            args.out.mkdir(parents=True, exist_ok=True)
            path = args.out / f"{name}.json"
            path.write_text(
                json.dumps(report.to_document(), indent=2, sort_keys=True) + "\n",
                encoding="utf-8",
            )
            print(f"  report: {path}", file=sys.stderr)

    return 3 if any_failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
