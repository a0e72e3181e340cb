#!/usr/bin/env python3
"""Scan all primes up to a bound for non-row-regular characters.

Runs the exact classification over every prime p <= pmax, prints the
survivors (one representative per conjugate pair), and optionally writes
the CSV table plus a reproducibility manifest. With --jobs > 1 the primes
are classified in parallel processes.
"""

from __future__ import annotations

import argparse
import sys
import time

from pascalchar.classification import format_scan_table, scan, write_classification_csv


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pmax", type=int, default=230, help="scan primes p <= pmax")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes")
    parser.add_argument("--out", default=None, help="write the CSV table here")
    args = parser.parse_args(argv)

    started = time.perf_counter()
    records = scan(args.pmax, jobs=args.jobs)
    elapsed = time.perf_counter() - started

    print(format_scan_table(records))
    print(f"{len(records)} non-row-regular characters among primes <= {args.pmax} "
          f"({elapsed:.2f}s, jobs={args.jobs})")
    if args.out:
        write_classification_csv(records, args.out)
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
