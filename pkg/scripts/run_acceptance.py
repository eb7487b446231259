"""Print one ACCEPTANCE line per criterion; exit 1 if any fails.

Usage: python3 scripts/run_acceptance.py [n ...]   (default: all eight)
"""
from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import test_acceptance as acc  # noqa: E402


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    picks = [int(a) for a in argv] or list(range(1, len(acc.CRITERIA) + 1))
    failed = 0
    for n in picks:
        ok, detail = acc.CRITERIA[n - 1]()
        acc.report(n, ok, detail)
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
