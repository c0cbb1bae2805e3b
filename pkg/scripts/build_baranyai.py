#!/usr/bin/env python3
"""Precompute uniform-partition tables and persist them as text files.

Tables land in ./baranyai_tables/ by default (the same cache directory the
library reads from), so a later `tfnpkit baranyai K N` call is instant.
"""

import argparse
import sys
import time
from pathlib import Path

from tfnpkit.encodings import baranyai_table, baranyai_verify


DEFAULT_CASES = [(2, 2), (2, 3), (3, 2), (4, 2), (2, 4), (3, 3)]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="baranyai_tables")
    ap.add_argument("--cases", nargs="*",
                    help="K,N pairs like 2,3 (default: a small desk-scale set)")
    args = ap.parse_args()

    cases = DEFAULT_CASES
    if args.cases:
        cases = [tuple(int(t) for t in c.split(",")) for c in args.cases]

    outdir = Path(args.outdir)
    for k, n in cases:
        t0 = time.monotonic()
        table = baranyai_table(k, n, table_dir=outdir)
        ok, msg = baranyai_verify(k, n, table)
        if not ok:
            print(f"k={k} n={n}: INVALID table: {msg}")
            return 1
        dt = time.monotonic() - t0
        print(f"k={k} n={n}: {len(table)} classes of {k} blocks, verified, {dt:.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
