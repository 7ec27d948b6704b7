"""Predicted vs measured gate counts over every legal (variant, n, n_s).

    python3 scripts/cost_sweep.py --n-max 30 > cost.tsv
"""
import argparse
import sys
from collections import Counter

from stesso.cost import cost_table, format_table, legal_points


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=30)
    args = ap.parse_args(argv)
    rows = cost_table(legal_points(args.n_max, args.n_min))
    sys.stdout.write(format_table(rows))
    off = [r for r in rows if not r["match"]]
    gaps = Counter((r["variant"], r["n"] - r["n_s"], r["ccx"] - r["pred_ccx"]) for r in off)
    print(f"# {len(rows) - len(off)}/{len(rows)} points match", file=sys.stderr)
    for (variant, diff, gap), cnt in sorted(gaps.items()):
        print(f"# {variant} with n - n_s = {diff}: {cnt} points, ccx {gap:+d}", file=sys.stderr)


if __name__ == "__main__":
    main()
