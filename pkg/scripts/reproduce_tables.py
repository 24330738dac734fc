"""Rerun the five reference tables and print a per-cell comparison.

    python3 scripts/reproduce_tables.py [--replay-steps] [--out DIR]

Set FDLDG_WORKERS to run the cases of each table in parallel.
"""
import argparse
import sys
from pathlib import Path

from fdldg.harness import emit_outputs, verify_paper


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--tables", type=int, nargs="+", default=[1, 2, 3, 4, 5])
    p.add_argument("--replay-steps", action="store_true",
                   help="table 5 with fixed dt and recorded step counts instead of round(T/dt)")
    p.add_argument("--out", type=Path, help="directory for one CSV per table")
    args = p.parse_args()

    ok = True
    for t in args.tables:
        ver = verify_paper(t, replay_steps=args.replay_steps)
        print(ver.as_text())
        print(ver.report.as_text())
        print()
        ok &= ver.passed
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            emit_outputs(ver.report, args.out / f"table{t}.csv")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
