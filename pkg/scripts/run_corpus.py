"""Verify the builtin corpus and write JSON + markdown reports.

    python3 scripts/run_corpus.py [--out-dir reports] [--jobs 4]
"""

import argparse
import sys
from pathlib import Path

from charlevels.cli import main


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out-dir", default="reports")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("-p", default="all")
    return ap.parse_args()


if __name__ == "__main__":
    args = parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    common = ["verify", "--all", "--corpus", "builtin", "-p", args.p, "--jobs", str(args.jobs)]
    code = main(common + ["--out", str(out / "report.json")])
    code = max(code, main(common + ["--format", "md", "--out", str(out / "summary.md")]))
    sys.exit(code)
