#!/usr/bin/env python3
"""Emit every bound table once, as CSV files in an output directory.

Thin driver over the pbtbounds CLI so all tables share its formatting and
exit-code contract; rerunning must reproduce the files byte for byte.
"""

import argparse
import os
import sys

from pbtbounds.cli import main as cli_main

TABLES = {
    "xi_table.csv": ["xi-table", "--m-max", "20"],
    "oracle_verify.csv": ["oracle-verify", "--m-max", "6"],
    "ad_sweep.csv": ["ad-sweep"],
    "resolution.csv": ["resolution"],
    "illumination.csv": ["illumination"],
    "metrology.csv": ["metrology"],
    "keyrate.csv": ["keyrate"],
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="tables")
    ap.add_argument("--precision", type=int, default=12)
    args = ap.parse_args(argv)

    os.makedirs(args.out_dir, exist_ok=True)
    for name, table_args in TABLES.items():
        path = os.path.join(args.out_dir, name)
        code = cli_main(["--out", path, "--precision", str(args.precision)] + table_args)
        if code != 0:
            print(f"error: {table_args[0]} exited {code}", file=sys.stderr)
            return code
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
