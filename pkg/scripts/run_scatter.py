#!/usr/bin/env python3
"""Plot phi(p)/p for every nonprincipal character up to a prime bound.

Emits the scatter data as CSV (and optionally a static SVG), then prints
per-prime parity cluster statistics: the mean of Re(phi(p))/p over even
and over odd characters separately.
"""

from __future__ import annotations

import argparse
import sys

from pascalchar.classification import (
    fundamental_scatter,
    mean_report,
    write_means_csv,
    write_scatter_csv,
)
from pascalchar.core_arith import is_prime


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pmax", type=int, default=100, help="include primes p <= pmax")
    parser.add_argument("--out", default="scatter.csv", help="scatter CSV path")
    parser.add_argument("--svg", default=None, help="also render a static SVG here")
    parser.add_argument("--means-out", default=None, help="write per-prime parity means CSV")
    args = parser.parse_args(argv)

    rows = fundamental_scatter(args.pmax)
    write_scatter_csv(rows, args.out)
    print(f"{len(rows)} points -> {args.out}")
    if args.svg:
        from pascalchar.cli import _scatter_svg

        with open(args.svg, "w") as fh:
            fh.write(_scatter_svg(rows))
        print(f"svg -> {args.svg}")

    reports = [mean_report(p) for p in range(3, args.pmax + 1) if is_prime(p)]
    print("p    mean Re(phi)/p even   mean Re(phi)/p odd")
    for rep in reports:
        print(f"{rep.p:<4} {rep.ratio_even:<21.6g} {rep.ratio_odd:.6g}")
    if args.means_out:
        write_means_csv(reports, args.means_out)
        print(f"means -> {args.means_out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
