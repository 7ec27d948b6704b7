"""Acceptance checks, one per criterion, each printing a single PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) or through pytest; the
lines are also collected into the pytest terminal summary.
"""
import functools
import itertools
import math
import time

import numpy as np

from stesso.circuit import depth
from stesso.comparator import synth_comparator, truth_table, verify_comparator
from stesso.cost import legal_points, measure, predict, stair_depth_report
from stesso.layout import (check_adjacency, shared_requirement_circuits, make_coupling, place_and_route,
                           requirement_graph, routed_equivalent)
from stesso.shapes import ShapeRule, backslash, build_i_shape, build_vshape, downstairs
from stesso.sim import mcx_table, permutation_table, run_states, verify_mcx
from stesso.synth import PolarityMask, build_pp, synth_mp, synth_pp

LINES = []


def report(name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    LINES.append(line)
    print(line)
    return ok


@functools.lru_cache(maxsize=None)
def mcx_grid():
    t0 = time.time()
    rows = []
    for variant, n, n_s in legal_points(10, 3):
        s = build_pp(n, variant, n_s)
        v = verify_mcx(s.circuit, s.controls, s.target, s.supports, samples=100_000)
        rows.append(((variant, n, s.n_s), v))
    return rows, time.time() - t0


def test_criterion_1_mcx_correctness():
    rows, dt = mcx_grid()
    bad = [key for key, v in rows if not v.ok]
    modes = {v.exhaustive for _, v in rows}
    ok = report("1 MCX correctness", not bad and dt < 120,
                f"{len(rows)} (variant, n, n_s) points, {len(bad)} failing, "
                f"exhaustive={sorted(modes)}, {dt:.1f}s")
    assert ok, bad


def test_criterion_2_cost_formulas():
    t0 = time.time()
    bad = []
    for variant, n, n_s in legal_points(30, 3):
        pred = predict(variant, n, n_s)
        meas = measure(synth_pp(n, variant, n_s))
        if (pred.x_count, pred.ccx_count) != (meas.x_count, meas.ccx_count):
            bad.append((variant, n, pred.support_count, meas.ccx_count - pred.ccx_count))
    spots = [
        predict("seq1", 5).ccx_count == 12,
        (lambda r: (r.x_count, r.ccx_count, r.total_size) == (4, 14, 18))(predict("seq2", 5, 1)),
        (lambda r: (r.x_count, r.ccx_count) == (0, 4))(predict("seq3", 3)),
        (lambda r: (r.x_count, r.ccx_count, r.total_size) == (8, 18, 26))(predict("seq3", 6)),
    ]
    degenerate = all(
        (predict("seq2", n, n - 2).x_count, predict("seq2", n, n - 2).ccx_count)
        == (predict("seq1", n).x_count, predict("seq1", n).ccx_count) for n in range(3, 31))
    dt = time.time() - t0
    shown = ", ".join(f"{v} n={n} n_s={s} ccx{d:+d}" for v, n, s, d in bad[:4])
    ok = report("2 cost formulas", not bad and all(spots) and degenerate and dt < 10,
                f"{len(bad)} mismatching points{' (' + shown + ', ...)' if bad else ''}; "
                f"spot values {sum(spots)}/4; seq2(n, n-2) == seq1: {degenerate}; {dt:.1f}s")
    assert ok, bad


def _v_target(states, c, s):
    bit = lambda q: ((states >> np.uint64(q)) & np.uint64(1)).astype(int)
    acc = bit(c[0]) & bit(c[1])
    for i in range(2, len(c)):
        acc = (acc ^ bit(s[i - 2])) & bit(c[i])
    return acc


def test_criterion_3_shape_properties():
    checks = {}
    bs3 = backslash([0, 1, 2], [3], 4, rule=ShapeRule.CONTROL_TO_TARGET)
    checks["backslash c->t n=3 D=S=2"] = (depth(bs3), bs3.size()) == (2, 2)
    ds4 = downstairs([0, 1, 2, 3], [4, 5], 6, ShapeRule.TARGET_TO_CONTROL, {0, 1, 2})
    checks["downstairs t->c n=4 S=6"] = ds4.size() == 6
    v4 = build_vshape([0, 1, 2, 3], [4, 5], 6)
    checks["V n=4 D=S=5"] = (depth(v4), v4.size()) == (5, 5)
    i3 = build_i_shape([0, 1, 2], [3], 4)
    checks["I n=3 D=S=4"] = (depth(i3), i3.size()) == (4, 4)

    def wires(n):
        return list(range(n)), list(range(n, 2 * n - 2)), 2 * n - 2

    checks["V size 2n-3"] = all(build_vshape(*wires(n)).size() == 2 * n - 3 for n in range(3, 21))
    checks["I size 3n-5"] = all(build_i_shape(*wires(n)).size() == 3 * n - 5 for n in range(3, 21))
    formula = True
    for n in range(3, 7):
        c, s, t = wires(n)
        circ = build_vshape(c, s, t)
        states = np.arange(1 << circ.width, dtype=np.uint64)
        want = states ^ (_v_target(states, c, s).astype(np.uint64) << np.uint64(t))
        formula &= bool(np.array_equal(run_states(circ, states), want))
    checks["V target formula n=3..6"] = formula
    bad = [k for k, ok in checks.items() if not ok]
    ok = report("3 shape properties", not bad, f"{len(checks) - len(bad)}/{len(checks)} checks"
                + (f", failing: {bad}" if bad else ""))
    assert ok


def test_criterion_4_support_independence():
    rows, _ = mcx_grid()
    bad = [key for key, v in rows if not (v.support_independent and v.restore)]
    ok = report("4 support independence + restoration", not bad,
                f"{len(rows)} points, {len(bad)} failing")
    assert ok, bad


def test_criterion_5_mixed_polarity():
    t0 = time.time()
    bad, count = [], 0
    for n in range(3, 7):
        configs = [("seq1", None), ("seq3", None)] + [("seq2", k) for k in range(1, n - 1)]
        for (variant, n_s), bits in itertools.product(configs, itertools.product((0, 1), repeat=n)):
            mask = PolarityMask(bits)
            c = synth_mp(n, mask, variant, n_s)
            want = mcx_table(c.width, range(n), c.width - 1, mask.negated)
            count += 1
            if not np.array_equal(permutation_table(c), want):
                bad.append((variant, n, n_s, str(mask)))
    dt = time.time() - t0
    ok = report("5 MP-Stesso", not bad and dt < 60,
                f"{count} (variant, n, mask) tables, {len(bad)} failing, {dt:.1f}s")
    assert ok, bad


ONE_BIT_ROWS = [(0, 0, 0, 1, 0), (0, 1, 1, 0, 0), (1, 1, 0, 1, 0), (1, 0, 0, 0, 1)]


def test_criterion_6_comparator():
    t0 = time.time()
    reports = [verify_comparator(synth_comparator(n)) for n in range(1, 7)]
    rows = {r[:2]: r for r in truth_table(synth_comparator(1))}
    table_ok = [rows[(x, y)] for x, y, *_ in ONE_BIT_ROWS] == ONE_BIT_ROWS
    dt = time.time() - t0
    bad = [r.n for r in reports if not r.ok]
    ok = report("6 comparator", not bad and table_ok and dt < 30,
                f"n=1..6, {sum(r.pairs for r in reports)} pairs, failing widths {bad}, "
                f"1-bit table row-for-row: {table_ok}, {dt:.1f}s")
    assert ok


def test_criterion_7_layout():
    back, vee = shared_requirement_circuits()
    same = requirement_graph(back) == requirement_graph(vee)
    chain = make_coupling("triangle_chain", (2,))
    zero = all(place_and_route(c, chain).swap_count == 0 for c in (back, vee))
    details, routed_ok = [], True
    for kind, dims in (("square_grid", (3, 3)), ("heavy_hex", (1, 1))):
        coupling = make_coupling(kind, dims)
        for name, c in (("backslash", back), ("V", vee)):
            best = place_and_route(c, coupling, "exhaustive")
            greedy = place_and_route(c, coupling, "greedy")
            good = (best.method == "exhaustive" and best.swap_count <= greedy.swap_count
                    and check_adjacency(best, c, coupling) and routed_equivalent(c, best))
            routed_ok &= good
            details.append(f"{kind}{dims} {name}: {best.swap_count} swaps")
    ok = report("7 layout", same and zero and routed_ok,
                f"same requirement: {same}; triangle_chain(2) zero swaps: {zero}; "
                + "; ".join(details))
    assert ok


def _fit_residual(variant, n_s=None):
    ns = np.arange(3, 31)
    sizes = np.array([synth_pp(int(n), variant, n_s).size() for n in ns], dtype=float)
    coef = np.polyfit(ns, sizes, 1)
    resid = sizes - np.polyval(coef, ns)
    return float(np.sqrt(np.mean(resid**2)) / sizes.mean()), coef


def test_criterion_8_linear_size():
    fits = {"seq1": _fit_residual("seq1"), "seq2 n_s=1": _fit_residual("seq2", 1),
            "seq3": _fit_residual("seq3")}
    ok = report("8a linear size growth", all(r < 0.05 for r, _ in fits.values()),
                ", ".join(f"{k}: slope {c[0]:.2f}, rms residual {100 * r:.2f}%"
                          for k, (r, c) in fits.items()))
    assert ok


def test_criterion_8_seq2_stair_depth():
    reps = [stair_depth_report(n, n_s) for n in range(3, 31) for n_s in range(1, n - 1)
            if (n - n_s - 1) // 2 >= 1]
    bad = [r for r in reps if abs(r["measured"] - math.ceil(r["estimate"])) > 2]
    worst = max(reps, key=lambda r: math.ceil(r["estimate"]) - r["measured"])
    ok = report("8b seq2 stair depth within 2 of 2 log2(k+1)", not bad,
                f"{len(reps) - len(bad)}/{len(reps)} points within; measured depth in "
                f"{sorted({r['measured'] for r in reps})}; widest gap at n={worst['n']} "
                f"n_s={worst['n_s']}: measured {worst['measured']}, estimate "
                f"{worst['estimate']:.2f}")
    assert ok


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
