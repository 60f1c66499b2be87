"""Rotation sweep of the reverse Hanner gap for the Figure 1 spectra.

Writes figure1.svg and figure1.csv to the output directory and prints the
sign changes of each curve.
"""

import argparse
from pathlib import Path

from schatten_lab.cli import main as cli_main
from schatten_lab.cli import sweep_table
from schatten_lab.explorer import FIGURE1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="out")
    ap.add_argument("--grid", type=int, default=721)
    args = ap.parse_args()
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for fmt in ("svg", "csv"):
        cli_main(["sweep", "--grid", str(args.grid), "--format", fmt, "--out", str(outdir / f"figure1.{fmt}")])
    _, roots = sweep_table(*FIGURE1, (0.25, 0.5, 0.75), args.grid)
    for s, r in roots.items():
        print(f"s = {s:g}: gap changes sign at t = {', '.join(f'{t:.4f}' for t in r) or 'none'}")


if __name__ == "__main__":
    main()
