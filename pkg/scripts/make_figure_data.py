#!/usr/bin/env python3
"""Write the two reference parameter sweeps as CSV files.

Produces example1_sweep.csv (linear-entropy classical correlation over
x in [0, 2]) and horodecki_sweep.csv (full correlation report over
p in [0, 1]) in the output directory, ready for plotting.
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from qdiscord.cli import main  # noqa: E402


def run(out_dir: pathlib.Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    sweeps = [
        ["sweep", "--family", "example1", "--param", "x",
         "--from", "0", "--to", "2", "--steps", "201",
         "--out", str(out_dir / "example1_sweep.csv")],
        ["sweep", "--family", "horodecki", "--param", "p",
         "--from", "0", "--to", "1", "--steps", "101",
         "--out", str(out_dir / "horodecki_sweep.csv")],
    ]
    for argv in sweeps:
        code = main(argv)
        if code != 0:
            return code
        print("wrote", argv[-1])
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out", type=pathlib.Path)
    args = parser.parse_args()
    sys.exit(run(args.out_dir))
