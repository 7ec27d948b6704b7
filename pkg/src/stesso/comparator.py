"""n-bit magnitude comparator built from a V-shape core and a PP-Stesso equality product.

Bit ``i`` (1-based, ``x_1`` least significant) of ``x`` lives on wire ``i - 1``,
``y_i`` on wire ``n + i - 1``; the three results follow on wires ``2n``
(less-than), ``2n + 1`` (equal) and ``2n + 2`` (greater-than).

With ``e_i = ~x_i ^ y_i`` the less-than output obeys
``f_i = y_i ^ e_i (f_{i-1} ^ y_i)``, which unrolls into the nested V-shape form
``((c1 c2 ^ s1) c3 ^ s2) ... c_{n+1} ^ y_n`` with controls
``c1 = y_1, c2 = ~x_1, c_{i+1} = e_i`` and supports ``s1 = y_2``,
``s_i = y_i ^ y_{i+1}``. For ``n = 4`` these are exactly the assignments
``c5 = ~x4 ^ y4, .., c2 = ~x1, c1 = y1, s3 = y3 ^ y4, s2 = y2 ^ y3, s1 = y2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import CCX, CX, X, Circuit, QubitId, cancel_adjacent, concat
from .shapes import build_vshape
from .sim import run_states
from .synth import ConstrainedUnitary, synth_g, synth_pp


class OutOfRange(ValueError):
    pass


def classical_compare(x: int, y: int, n: int) -> tuple[int, int, int]:
    if not (0 <= x < 2**n and 0 <= y < 2**n):
        raise OutOfRange(f"inputs must lie in [0, 2^{n})")
    lt, eq, gt = int(x < y), int(x == y), int(x > y)
    assert gt == lt ^ (1 - eq)
    return lt, eq, gt


@dataclass(frozen=True)
class ComparatorSpec:
    n: int
    x_qubits: tuple[int, ...]
    y_qubits: tuple[int, ...]
    out_lt: int
    out_eq: int
    out_gt: int

    @classmethod
    def standard(cls, n: int) -> "ComparatorSpec":
        return cls(n, tuple(range(n)), tuple(range(n, 2 * n)), 2 * n, 2 * n + 1, 2 * n + 2)

    def register(self) -> tuple[QubitId, ...]:
        qs = [QubitId(q, "control", f"x{i + 1}") for i, q in enumerate(self.x_qubits)]
        qs += [QubitId(q, "control", f"y{i + 1}") for i, q in enumerate(self.y_qubits)]
        qs += [QubitId(self.out_lt, "target", "lt"), QubitId(self.out_eq, "target", "eq"),
               QubitId(self.out_gt, "target", "gt")]
        return tuple(sorted(qs, key=lambda q: q.index))


@dataclass(frozen=True)
class LessThanLayout:
    """Wire roles of the V-shape core and its two preparation unitaries."""

    controls: tuple[int, ...]
    supports: tuple[int, ...]
    u1: Circuit
    u2: Circuit


def less_than_layout(spec: ComparatorSpec) -> LessThanLayout:
    n, x, y = spec.n, spec.x_qubits, spec.y_qubits
    reg = spec.register()
    controls = (y[0], x[0]) + tuple(x[1:])
    supports = (y[1],) + tuple(y[2:]) if n >= 2 else ()
    u1 = Circuit(reg, (X(x[0]),))
    gates = []
    for i in range(1, n):
        gates += [CX(y[i], x[i]), X(x[i])]
    # high bit first, so y_i is still clean when it is folded into y_{i+1}
    for i in range(n - 2, 0, -1):
        gates.append(CX(y[i], y[i + 1]))
    return LessThanLayout(controls, supports[: max(n - 1, 0)], u1, Circuit(reg, tuple(gates)))


def _less_than(spec: ComparatorSpec) -> Circuit:
    n, x, y, lt = spec.n, spec.x_qubits, spec.y_qubits, spec.out_lt
    reg = spec.register()
    if n == 1:
        return Circuit(reg, (X(x[0]), CCX(y[0], x[0], lt), X(x[0])))
    lay = less_than_layout(spec)
    core = build_vshape(lay.controls, lay.supports, lt, register=reg)
    allowed_ctrl = lay.controls
    g = synth_g((core, Circuit(reg, ())), ConstrainedUnitary(lay.u1), ConstrainedUnitary(lay.u2),
                controls=allowed_ctrl, supports=lay.supports, target=lt, register=reg)
    return concat([Circuit(reg, (CX(y[n - 1], lt),)), g], reg)


def _equal(spec: ComparatorSpec) -> Circuit:
    n, x, y, eq = spec.n, spec.x_qubits, spec.y_qubits, spec.out_eq
    reg = spec.register()
    prep = []
    for i in range(n):
        prep += [CX(y[i], x[i]), X(x[i])]
    prep_c = Circuit(reg, tuple(prep))
    if n == 1:
        core = Circuit(reg, (CX(x[0], eq),))
    elif n == 2:
        core = Circuit(reg, (CCX(x[0], x[1], eq),))
    else:
        # PP-Stesso (seq1) over the equality bits, borrowing y wires as supports
        pp = synth_pp(n, "seq1")
        mapping = {i: x[i] for i in range(n)}
        mapping.update({n + i: y[i] for i in range(n - 2)})
        mapping[2 * n - 2] = eq
        core = Circuit(reg, tuple(type(gate)(gate.kind, tuple(mapping[q] for q in gate.operands))
                                  for gate in pp.gates))
    return concat([prep_c, core, prep_c.inverse()], reg)


def synth_comparator(n: int) -> Circuit:
    if n < 1:
        raise ValueError("comparator width must be at least 1")
    spec = ComparatorSpec.standard(n)
    reg = spec.register()
    gt = Circuit(reg, (CX(spec.out_lt, spec.out_gt), CX(spec.out_eq, spec.out_gt), X(spec.out_gt)))
    return cancel_adjacent(concat([_less_than(spec), _equal(spec), gt], reg))


@dataclass
class ComparatorReport:
    n: int
    pairs: int
    matches: bool
    one_hot: bool
    inputs_restored: bool
    gt_identity: bool
    mismatches: list

    @property
    def ok(self) -> bool:
        return self.matches and self.one_hot and self.inputs_restored and self.gt_identity

    def __str__(self) -> str:
        word = {True: "ok", False: "FAIL"}
        return (f"comparator n={self.n}: {self.pairs} pairs, classical: {word[self.matches]}, "
                f"one-hot: {word[self.one_hot]}, inputs restored: {word[self.inputs_restored]}, "
                f"gt = lt ^ ~eq: {word[self.gt_identity]}")


def evaluate(circuit: Circuit, spec: ComparatorSpec) -> np.ndarray:
    """Outputs (lt, eq, gt) and restored inputs for every (x, y) with zeroed result wires."""
    n = spec.n
    xs, ys = np.meshgrid(np.arange(2**n), np.arange(2**n), indexing="ij")
    xs, ys = xs.ravel(), ys.ravel()
    states = np.zeros(xs.size, dtype=np.uint64)
    for i in range(n):
        states |= ((xs >> i) & 1).astype(np.uint64) << np.uint64(spec.x_qubits[i])
        states |= ((ys >> i) & 1).astype(np.uint64) << np.uint64(spec.y_qubits[i])
    out = run_states(circuit, states)
    return xs, ys, states, out


def verify_comparator(circuit: Circuit, spec: ComparatorSpec | None = None) -> ComparatorReport:
    spec = spec or ComparatorSpec.standard(_width_to_n(circuit))
    xs, ys, states, out = evaluate(circuit, spec)
    bit = lambda q: ((out >> np.uint64(q)) & np.uint64(1)).astype(int)
    lt, eq, gt = bit(spec.out_lt), bit(spec.out_eq), bit(spec.out_gt)
    ref = np.array([classical_compare(int(a), int(b), spec.n) for a, b in zip(xs, ys)])
    got = np.stack([lt, eq, gt], axis=1)
    bad = np.nonzero((got != ref).any(axis=1))[0]
    inputs = np.uint64(sum(1 << q for q in spec.x_qubits + spec.y_qubits))
    return ComparatorReport(
        n=spec.n,
        pairs=int(xs.size),
        matches=bad.size == 0,
        one_hot=bool((got.sum(axis=1) == 1).all()),
        inputs_restored=bool(((out & inputs) == (states & inputs)).all()),
        gt_identity=bool((gt == (lt ^ (1 - eq))).all()),
        mismatches=[(int(xs[i]), int(ys[i])) for i in bad[:10]],
    )


def _width_to_n(circuit: Circuit) -> int:
    return (circuit.width - 3) // 2


def prepared_values(spec: ComparatorSpec) -> dict[str, np.ndarray]:
    """Wire values feeding the V-shape core after the preparation layer, for every (x, y).

    Keys are ``c1..c_{n+1}``, ``s1..s_{n-1}`` and ``t``; used to pin the preparation
    against the reference n = 4 assignments.
    """
    lay = less_than_layout(spec)
    reg = spec.register()
    prep = concat([Circuit(reg, (CX(spec.y_qubits[-1], spec.out_lt),)), lay.u1, lay.u2], reg)
    xs, ys, states, _ = evaluate(Circuit(reg, ()), spec)
    out = run_states(prep, states)
    bit = lambda q: ((out >> np.uint64(q)) & np.uint64(1)).astype(int)
    values = {f"c{i + 1}": bit(q) for i, q in enumerate(lay.controls)}
    values.update({f"s{i + 1}": bit(q) for i, q in enumerate(lay.supports)})
    values["t"] = bit(spec.out_lt)
    return values


def truth_table(circuit: Circuit, spec: ComparatorSpec | None = None) -> list[tuple[int, ...]]:
    """Rows ``(x, y, lt, eq, gt)`` in input order."""
    spec = spec or ComparatorSpec.standard(_width_to_n(circuit))
    xs, ys, _, out = evaluate(circuit, spec)
    bit = lambda q: ((out >> np.uint64(q)) & np.uint64(1)).astype(int)
    cols = [xs, ys, bit(spec.out_lt), bit(spec.out_eq), bit(spec.out_gt)]
    return [tuple(int(c[i]) for c in cols) for i in range(xs.size)]
