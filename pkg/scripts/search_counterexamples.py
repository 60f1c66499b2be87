"""Random search for 2x2 pairs violating the matrix reverse Hanner inequality."""

import argparse

import numpy as np

from schatten_lab.explorer import counterexample_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--psd-only", action="store_true")
    args = ap.parse_args()
    s_list = (0.25, 0.5, 0.75, -0.5, -2.0)
    found = counterexample_search(s_list=s_list, trials=args.trials, seed=args.seed, psd_only=args.psd_only)
    for s in s_list:
        hits = [c for c in found if c.s == s]
        worst = min(hits, key=lambda c: -c.gap if s > 0 else c.gap, default=None)
        line = f"s = {s:5g}: {len(hits):4d} violating spectra of {args.trials}"
        if worst is not None:
            line += f"; worst lamA={np.round(worst.lamA, 3).tolist()} lamB={np.round(worst.lamB, 3).tolist()} t={worst.t:.4f} gap={worst.gap:+.4g}"
        print(line)


if __name__ == "__main__":
    main()
