"""Pass rate of toric_check on random exponent matrices, by parameter dimension.

    python3 scripts/toric_sweep.py --d 2 --count 80 --resolution 3
"""
import argparse
from collections import Counter
import json
import time

from monocell import toric
from monocell.suites import random_matrices, toric_outcome


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--count", type=int, default=40)
    p.add_argument("--resolution", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", help="write per-matrix outcomes here")
    args = p.parse_args(argv)
    rows = []
    t0 = time.perf_counter()
    for A in random_matrices(args.d, args.count, args.seed):
        rep = toric.toric_check(toric.ExponentData.of(A), args.resolution)
        rows.append({"A": A, "outcome": toric_outcome(rep)})
    tally = Counter(r["outcome"] for r in rows)
    print(f"d={args.d} r={args.resolution}: {tally['pass']}/{len(rows)} pass "
          f"({time.perf_counter() - t0:.1f}s)")
    for k, v in sorted(tally.items()):
        if k != "pass":
            print(f"  {v:3d}  {k}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1, sort_keys=True)


if __name__ == "__main__":
    main()
