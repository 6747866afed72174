#!/usr/bin/env python3
"""
Utility script to run the acceptance checks of the permstat toolkit.

Reproduces the published fixtures (Denert values, the two worked examples of
phi_15 and the phi_7 table), then runs the exhaustive bijection, theorem,
Mahonian, counterexample and identity sweeps. --quick shrinks every range.
"""

import argparse
import json
import os
import sys
import time

# Add the project root to the Python path
root_dir = os.path.abspath(os.path.join(os.path.dirname(__file__), "../.."))
sys.path.insert(0, root_dir)

from src.models.permutation import StatDescriptor  # noqa: E402
from src.services.bijections import phi_den, phi_den_inverse  # noqa: E402
from src.services.distcheck import DistributionChecker  # noqa: E402
from src.services.statistics import eval_stat  # noqa: E402
from src.services.theorems import TheoremSuite  # noqa: E402
from src.utils.logging_utils import setup_logging  # noqa: E402

EXAMPLE_SIGMA = (3, 10, 1, 14, 7, 2, 8, 9, 5, 4, 13, 6, 12, 11)

# c -> step name -> sequence (None is the star)
EXAMPLE_STEPS = {
    6: {
        "Step 1. Adjusting Excedance-Letters": [3, 14, 1, 15, 10, 2, 8, 9, 5, 4, 13, 6, 12, 11],
        "Step 2. Shifting Non-Excedance-Letters": [
            3, 14, 1, 15, 10, 2, 8, 9, None, 5, 13, 4, 6, 12, 11,
        ],
        "Step 3. Placing e_d": [3, 14, 1, 15, 10, 2, 8, 9, 7, 5, 13, 4, 6, 12, 11],
    },
    9: {
        "Step i. Shifting Non-Excedance-Letters": [
            3, 10, 1, 14, 7, None, 8, 9, 2, 5, 13, 4, 6, 12, 11,
        ],
        "Step ii. Placing n": [3, 10, 1, 14, 7, 15, 8, 9, 2, 5, 13, 4, 6, 12, 11],
    },
}

TABLE1 = [
    (0, [6, 2, 1, 5, 3, 4, 7], [(2, 7), (1, 7), (1, 7), (1, 7), (0, 7), (0, 7)]),
    (1, [7, 2, 1, 5, 3, 6, 4], [(2, 8), (1, 8), (1, 8), (1, 8), (0, 8), (0, 8)]),
    (2, [7, 2, 1, 6, 5, 3, 4], [(2, 9), (1, 9), (1, 9), (1, 9), (0, 9), (0, 9)]),
    (3, [6, 7, 2, 5, 1, 3, 4], [(3, 10), (2, 10), (1, 10), (1, 10), (0, 10), (0, 10)]),
    (4, [6, 2, 7, 5, 1, 3, 4], [(3, 11), (2, 11), (2, 11), (1, 11), (0, 11), (0, 11)]),
    (5, [6, 2, 1, 5, 7, 3, 4], [(3, 12), (2, 12), (2, 12), (2, 12), (1, 12), (0, 12)]),
    (6, [6, 2, 1, 5, 3, 7, 4], [(3, 13), (2, 13), (2, 13), (2, 13), (1, 13), (1, 13)]),
]


def check_fixtures() -> dict:
    """Denert values and level excedance counts from the introduction."""
    failures = []
    den = eval_stat(StatDescriptor.den(), (7, 1, 5, 4, 9, 2, 6, 3, 8))
    if den != 13:
        failures.append(f"den(715492638)={den}")
    sigma = (2, 7, 1, 5, 6, 4, 3)
    exc_levels = [eval_stat(StatDescriptor.exc(level=r), sigma) for r in range(1, 7)]
    if exc_levels != [4, 3, 2, 2, 1, 0]:
        failures.append(f"exc_r(2715643)={exc_levels}")
    for h, expected in ((3, 15), (6, 12)):
        value = eval_stat(StatDescriptor.den(level=h), sigma)
        if value != expected:
            failures.append(f"den_{h}(2715643)={value}")
    return {"passed": not failures, "detail": "; ".join(failures)}


def check_examples() -> dict:
    """The two worked phi_15 examples, step by step, and their inverses."""
    failures = []
    for c, expected_steps in EXAMPLE_STEPS.items():
        image, trace = phi_den(EXAMPLE_SIGMA, c)
        produced = {step.step_name: step.sequence for step in trace.steps}
        for name, sequence in expected_steps.items():
            if produced.get(name) != sequence:
                failures.append(f"c={c} {name}: {produced.get(name)}")
        sigma, recovered, _ = phi_den_inverse(image)
        if sigma.letters != EXAMPLE_SIGMA or recovered != c:
            failures.append(f"c={c}: inverse gave ({sigma}, {recovered})")
    return {"passed": not failures, "detail": "; ".join(failures)}


def check_table1(checker: DistributionChecker) -> dict:
    rows = [(row.c, row.image, row.values) for row in checker.reproduce_table1()]
    mismatched = [str(row[0]) for row, want in zip(rows, TABLE1) if row != want]
    return {
        "passed": len(rows) == len(TABLE1) and not mismatched,
        "detail": f"rows differ: c={','.join(mismatched)}" if mismatched else "",
    }


def _report_entry(report) -> dict:
    return {
        "passed": report.passed,
        "detail": report.witness.describe() if report.witness and not report.passed else "",
    }


def _suite(suite: TheoremSuite, names, **kwargs) -> dict:
    for name in names:
        report = suite.verify(name, **kwargs)
        if not report.passed:
            entry = _report_entry(report)
            entry["detail"] = f"{name}: {entry['detail']}"
            return entry
    return {"passed": True, "detail": ""}


def run_acceptance(quick: bool = False, checker: DistributionChecker = None) -> list:
    """
    Run every acceptance check and return one result dict per criterion.

    Args:
        quick: Shrink the exhaustive ranges for a fast smoke run
        checker: Distribution checker to use (defaults to the configured one)

    Returns:
        List of {"criterion", "name", "passed", "detail", "seconds"} dicts
    """
    checker = checker or DistributionChecker()
    suite = TheoremSuite(checker)
    small, medium, large = (4, 5, 6) if quick else (7, 8, 9)

    criteria = [
        ("fixtures", check_fixtures),
        ("worked examples", check_examples),
        ("phi_7 table", lambda: check_table1(checker)),
        ("phiDen bijectivity", lambda: _suite(suite, ["2.1"], max_n=medium)),
        ("phiGhDen bijectivity", lambda: _suite(suite, ["4.1"], max_n=small)),
        ("exc_r and den", lambda: _suite(suite, ["1.3"], max_n=medium)),
        (
            "gap and level theorems",
            lambda: _suite(suite, ["1.1", "1.2", "1.4", "1.6"], max_n=small),
        ),
        ("Mahonian marginals", lambda: _suite(suite, ["mahonian", "denert"], max_n=large)),
        (
            "negative remarks",
            lambda: _suite(suite, ["remark-1.3", "remark-1.4"], max_n=medium),
        ),
        ("identities", lambda: _suite(suite, ["identities"], max_n=small)),
    ]

    results = []
    for number, (name, check) in enumerate(criteria, start=1):
        started = time.time()
        outcome = check()
        outcome.update(
            criterion=number, name=name, seconds=round(time.time() - started, 2)
        )
        results.append(outcome)
    return results


def main():
    """
    Run the acceptance checks and report results.
    """
    parser = argparse.ArgumentParser(description="Run the permstat acceptance checks")
    parser.add_argument(
        "--quick",
        action="store_true",
        help="Use small ranges for a fast smoke run",
    )
    parser.add_argument(
        "--format",
        choices=["text", "json"],
        default="text",
        help="Output format (default: text)",
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Worker processes for distributions (default: from settings)",
    )
    args = parser.parse_args()

    setup_logging()

    results = run_acceptance(
        quick=args.quick, checker=DistributionChecker(workers=args.workers)
    )
    all_passed = all(result["passed"] for result in results)

    if args.format == "json":
        print(json.dumps({"passed": all_passed, "results": results}, indent=2))
    else:
        print("=== permstat acceptance ===")
        for result in results:
            status = "PASS" if result["passed"] else "FAIL"
            print(
                f"{result['criterion']:>2}. {result['name']}: "
                f"{status} ({result['seconds']}s)"
            )
            if result["detail"]:
                print(f"    {result['detail']}")
        print(f"\nSummary: {'all checks passed' if all_passed else 'some checks failed'}")

    return 0 if all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
