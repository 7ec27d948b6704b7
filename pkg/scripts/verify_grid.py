"""Oracle check of every PP-Stesso on a grid, plus mixed-polarity sweeps.

    python3 scripts/verify_grid.py --n-max 10 --mp-max 6
"""
import argparse
import itertools
import time

import numpy as np

from stesso.cost import legal_points
from stesso.sim import mcx_table, permutation_table, verify_mcx
from stesso.synth import PolarityMask, build_pp, synth_mp


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--mp-max", type=int, default=6)
    ap.add_argument("--samples", type=int, default=100_000)
    args = ap.parse_args(argv)

    t0 = time.time()
    failures = 0
    for variant, n, n_s in legal_points(args.n_max):
        s = build_pp(n, variant, n_s)
        v = verify_mcx(s.circuit, s.controls, s.target, s.supports, samples=args.samples)
        failures += not v.ok
        mode = "exhaustive" if v.exhaustive else f"{v.checked_states} samples"
        print(f"{variant}\tn={n}\tn_s={s.n_s}\tsize={s.circuit.size()}\t{mode}\t"
              f"{'ok' if v.ok else 'FAIL ' + str(v.as_tuple())}")
    print(f"# PP grid: {failures} failures in {time.time() - t0:.1f}s")

    t0 = time.time()
    bad = 0
    for n in range(3, args.mp_max + 1):
        for bits in itertools.product((0, 1), repeat=n):
            mask = PolarityMask(bits)
            c = synth_mp(n, mask)
            bad += not np.array_equal(permutation_table(c),
                                      mcx_table(c.width, range(n), c.width - 1, mask.negated))
    print(f"# MP masks up to n={args.mp_max}: {bad} failures in {time.time() - t0:.1f}s")
    return 1 if failures or bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
