"""Run the acceptance suites and print one pass/fail line per criterion.

    python3 scripts/run_acceptance.py            # all nine
    python3 scripts/run_acceptance.py --only 1 7 # a subset
"""
import argparse
import sys

from monocell import suites
from monocell.corpus import build_corpus


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    p.add_argument("--count", type=int, default=200, help="corpus size")
    p.add_argument("--fuzz", type=int, default=32, help="extra thresholds for criterion 8")
    p.add_argument("-v", "--verbose", action="store_true", help="print every failure")
    args = p.parse_args(argv)
    entries = build_corpus(args.count)
    runs = {
        1: suites.example_regressions,
        2: lambda: suites.dual_oracle(entries),
        3: lambda: suites.matroid_suite(entries),
        4: lambda: suites.projection_suite(entries),
        5: lambda: suites.split_glue_suite(entries, split_count=50),
        6: lambda: suites.evidence_suite(entries),
        7: suites.toric_suite,
        8: lambda: suites.fuzz_suite(entries, fuzz=args.fuzz),
        9: lambda: suites.mutation_suite(entries),
    }
    ok = True
    for number in args.only or sorted(runs):
        res = runs[number]()
        ok &= res.passed
        print(f"criterion {number}: {res.line()}", flush=True)
        for msg in res.failures if args.verbose else res.failures[:5]:
            print(f"    {msg}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
