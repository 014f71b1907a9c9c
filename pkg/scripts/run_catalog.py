"""Verify every catalog entry and print a one-line summary per check."""
import argparse
import sys

from csl.cli import verify_entry
from csl.constructions import CATALOG_NAMES, entry


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    worst = 0
    for name in CATALOG_NAMES:
        rep = verify_entry(entry(name), args.grid, args.seed)
        worst = max(worst, rep["exit_code"])
        for chk in rep["checks"]:
            print(f"{name:28s} {chk['property']:12s} expected={chk['expected']!s:6s} "
                  f"observed={chk['observed']!s:6s} {chk['status']}")
    return worst


if __name__ == "__main__":
    sys.exit(main())
