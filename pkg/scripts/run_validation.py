#!/usr/bin/env python3
"""Run the randomized identity suite at desk scale and exit nonzero on failure."""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from qdiscord.cli import main  # noqa: E402

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()
    sys.exit(main(["validate", "--trials", str(args.trials), "--seed", str(args.seed)]))
