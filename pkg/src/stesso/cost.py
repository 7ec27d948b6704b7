"""Closed-form gate counts for the three PP-Stesso sequences, and measurement."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterator

from .circuit import Circuit, GateKind, depth
from .composer import ladder_split, make_sequence, support_count, VARIANTS


@dataclass(frozen=True)
class CostRecord:
    x_count: int = 0
    ccx_count: int = 0
    total_size: int = 0
    depth: int | None = None
    support_count: int = 0
    total_qubits: int = 0
    distinct_qubits: int | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def parity_gap(n: int, n_s: int) -> int:
    """``ceil((n - n_s - 1)/2) - floor((n - n_s - 1)/2)``, i.e. 1 when the remainder is odd."""
    r = n - n_s - 1
    return math.ceil(r / 2) - math.floor(r / 2)


def _wave(n: int, n_s: int) -> tuple[int, int]:
    if n_s == n - 2:
        return 0, 4 * n - 8
    j = parity_gap(n, n_s)
    return 2 * n - 2 * n_s - 2 - 2 * j, 6 * n - 2 * n_s - 16 + 2 * j


def _ladder(n: int) -> tuple[int, int]:
    lad = ladder_split(n)
    k, m = lad.k, lad.m
    x = 2 * k * k - 2 * k + 4 * m - 4
    if k == 2:
        return x, 2 * k * k + 4 * m - 4
    return x, 2 * k * k + 6 * k + 4 * m - 18


def predict(variant: str, n: int, n_s: int | None = None) -> CostRecord:
    n_s = support_count(variant, n, n_s)
    if variant == "seq1":
        x, ccx = 0, 4 * n - 8
    elif variant == "seq2":
        x, ccx = _wave(n, n_s)
    else:
        x, ccx = _ladder(n)
    return CostRecord(x_count=x, ccx_count=ccx, total_size=x + ccx, support_count=n_s,
                      total_qubits=n + n_s + 1, distinct_qubits=n + n_s + 1)


def measure(circuit: Circuit) -> CostRecord:
    n_s = len(circuit.indices("support"))
    return CostRecord(
        x_count=circuit.count(GateKind.X),
        ccx_count=circuit.count(GateKind.CCX),
        total_size=circuit.size(),
        depth=depth(circuit),
        support_count=n_s,
        total_qubits=circuit.num_qubits,
        distinct_qubits=len({q for g in circuit.gates for q in g.operands}),
    )


def legal_points(n_max: int = 30, n_min: int = 3,
                 variants=VARIANTS) -> Iterator[tuple[str, int, int | None]]:
    for n in range(n_min, n_max + 1):
        for v in variants:
            if v == "seq2":
                for n_s in range(1, n - 1):
                    yield v, n, n_s
            else:
                yield v, n, None


def stair_depth_report(n: int, n_s: int) -> dict:
    """Depth of the pair-landing downstairs in a seq2 operator next to the ``2 log2(k + 1)`` estimate."""
    from .composer import compose
    seq = make_sequence("seq2", n, n_s)
    first = seq.elements[:seq.split]
    stairs = [e for e in first if e.shape == "downstairs"]
    k = (n - n_s - 1) // 2
    measured = 0
    if stairs:
        sub = type(seq)(tuple(stairs), n, n_s, register=seq.register)
        measured = depth(compose(sub))
    estimate = 2 * math.log2(k + 1)
    return {"n": n, "n_s": n_s, "k": k, "measured": measured, "estimate": estimate,
            "within_2": abs(measured - math.ceil(estimate)) <= 2}


def ladder_depth_report(n: int) -> dict:
    from .composer import compose
    seq = make_sequence("seq3", n)
    stairs = [e for e in seq.elements[:seq.split] if e.shape == "downstairs"]
    measured = 0
    if stairs:
        measured = depth(compose(type(seq)(tuple(stairs), n, 1, register=seq.register)))
    estimate = 2 * math.sqrt(2 * (n + 1))
    return {"n": n, "measured": measured, "estimate": estimate,
            "within_2": abs(measured - estimate) <= 2}


def cost_table(points) -> list[dict]:
    from .synth import synth_pp
    rows = []
    for variant, n, n_s in points:
        pred = predict(variant, n, n_s)
        meas = measure(synth_pp(n, variant, n_s))
        rows.append({
            "variant": variant, "n": n, "n_s": pred.support_count,
            "pred_x": pred.x_count, "pred_ccx": pred.ccx_count, "pred_size": pred.total_size,
            "x": meas.x_count, "ccx": meas.ccx_count, "size": meas.total_size, "depth": meas.depth,
            "match": (pred.x_count, pred.ccx_count) == (meas.x_count, meas.ccx_count),
        })
    return rows


TABLE_COLUMNS = ("variant", "n", "n_s", "pred_x", "pred_ccx", "pred_size",
                 "x", "ccx", "size", "depth", "match")


def format_table(rows: list[dict]) -> str:
    lines = ["\t".join(TABLE_COLUMNS)]
    for r in rows:
        lines.append("\t".join(str(r[c]) for c in TABLE_COLUMNS))
    return "\n".join(lines) + "\n"
