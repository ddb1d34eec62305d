#!/usr/bin/env python3
"""Run every acceptance check and print a result table.

Exit status is nonzero when any check fails or overruns its budget.
Equivalent to `bigmcg repro all` but also enforces the budgets.
"""

import argparse
import json
import sys

from bigmcg import acceptance


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=None, help="default: SEED env or 0")
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    results = acceptance.run_all(args.seed)
    ok = all(r.passed and r.seconds < r.budget for r in results)

    if args.json:
        print(
            json.dumps(
                [
                    {
                        "name": r.name,
                        "passed": r.passed,
                        "seconds": round(r.seconds, 3),
                        "budget": r.budget,
                        "detail": r.detail,
                    }
                    for r in results
                ],
                indent=2,
            )
        )
        return 0 if ok else 1

    width = max(len(r.name) for r in results)
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        if r.passed and r.seconds >= r.budget:
            mark = "SLOW"
        print(
            f"[{mark}] {r.name:<{width}}  {r.seconds:6.2f}s / {r.budget:4.0f}s  {r.detail}"
        )
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
