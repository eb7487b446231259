"""Run every config in configs/ (or the ones named) through the CLI.

Usage: python3 scripts/run_presets.py [--jobs N] [--out-dir DIR] [name ...]
Names are config stems such as fig1_p1_w09 or fig2_ts_r2; glob patterns work.
"""
from __future__ import annotations

import argparse
import fnmatch
import sys
from pathlib import Path

from ebucb.harness.cli import main as cli_main

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("names", nargs="*", help="config stems or glob patterns (default: all)")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out-dir", default="results")
    args = p.parse_args(argv)
    stems = sorted(c.stem for c in CONFIGS.glob("*.cfg"))
    if args.names:
        stems = [s for s in stems if any(fnmatch.fnmatch(s, n) for n in args.names)]
    if not stems:
        print("no matching configs", file=sys.stderr)
        return 2
    worst = 0
    for stem in stems:
        print(f"== {stem}", flush=True)
        argv = ["run", "--config", str(CONFIGS / f"{stem}.cfg"), "--out-dir", args.out_dir]
        if args.jobs is not None:
            argv += ["--jobs", str(args.jobs)]
        worst = max(worst, cli_main(argv))
    return worst


if __name__ == "__main__":
    sys.exit(main())
