"""Circuit IR: qubits, self-inverse gates, metrics, peephole cancellation, QASM export.

Every builder in the package produces a :class:`Circuit`. Circuits are frozen
values; ``append`` and friends return new objects.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence


class CircuitError(ValueError):
    pass


class UnknownQubit(CircuitError):
    pass


class DuplicateOperand(CircuitError):
    pass


class GateKind(str, Enum):
    X = "x"
    CX = "cx"
    CCX = "ccx"
    SWAP = "swap"

    @property
    def arity(self) -> int:
        return _ARITY[self]


_ARITY = {GateKind.X: 1, GateKind.CX: 2, GateKind.CCX: 3, GateKind.SWAP: 2}

ROLES = ("control", "support", "target", "auxiliary")


@dataclass(frozen=True)
class QubitId:
    index: int
    role: str = "auxiliary"
    label: str = ""

    def __post_init__(self):
        if self.index < 0:
            raise CircuitError(f"negative qubit index {self.index}")
        if self.role not in ROLES:
            raise CircuitError(f"unknown role {self.role!r}")
        if not self.label:
            object.__setattr__(self, "label", f"q{self.index}")


@dataclass(frozen=True)
class Gate:
    """A gate; for CX/CCX the last operand is the target."""

    kind: GateKind
    operands: tuple[int, ...]

    def __post_init__(self):
        kind = GateKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "operands", tuple(int(q) for q in self.operands))
        if len(self.operands) != kind.arity:
            raise CircuitError(f"{kind.name} takes {kind.arity} operands, got {len(self.operands)}")
        if len(set(self.operands)) != len(self.operands):
            raise DuplicateOperand(f"{kind.name}{self.operands} repeats an operand")

    @property
    def target(self) -> int:
        return self.operands[-1]

    @property
    def controls(self) -> tuple[int, ...]:
        if self.kind is GateKind.SWAP:
            return ()
        return self.operands[:-1]

    def __str__(self) -> str:
        return f"{self.kind.name}({','.join(map(str, self.operands))})"


def X(q: int) -> Gate:
    return Gate(GateKind.X, (q,))


def CX(c: int, t: int) -> Gate:
    return Gate(GateKind.CX, (c, t))


def CCX(a: int, b: int, t: int) -> Gate:
    return Gate(GateKind.CCX, (a, b, t))


def SWAP(a: int, b: int) -> Gate:
    return Gate(GateKind.SWAP, (a, b))


def make_register(n_controls: int, n_supports: int = 0, target: bool = True,
                  n_aux: int = 0) -> tuple[QubitId, ...]:
    """Standard layout: controls c1..cn, then supports s1.., then the target, then aux."""
    qubits = [QubitId(i, "control", f"c{i + 1}") for i in range(n_controls)]
    qubits += [QubitId(n_controls + i, "support", f"s{i + 1}") for i in range(n_supports)]
    if target:
        qubits.append(QubitId(len(qubits), "target", "t"))
    base = len(qubits)
    qubits += [QubitId(base + i, "auxiliary", f"a{i + 1}") for i in range(n_aux)]
    return tuple(qubits)


@dataclass(frozen=True)
class Circuit:
    qubits: tuple[QubitId, ...]
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        qubits = tuple(q if isinstance(q, QubitId) else QubitId(int(q)) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)
        object.__setattr__(self, "gates", tuple(self.gates))
        indices = [q.index for q in qubits]
        if len(set(indices)) != len(indices):
            raise CircuitError("qubit indices must be unique")
        declared = set(indices)
        for g in self.gates:
            _check_operands(g, declared)

    @classmethod
    def on(cls, num_qubits: int, gates: Iterable[Gate] = ()) -> "Circuit":
        """Circuit over anonymous qubits 0..num_qubits-1."""
        return cls(tuple(QubitId(i) for i in range(num_qubits)), tuple(gates))

    @property
    def num_qubits(self) -> int:
        return len(self.qubits)

    @property
    def width(self) -> int:
        """One past the largest qubit index (simulation register width)."""
        return max((q.index for q in self.qubits), default=-1) + 1

    def qubit(self, index: int) -> QubitId:
        for q in self.qubits:
            if q.index == index:
                return q
        raise UnknownQubit(index)

    def indices(self, role: str) -> list[int]:
        return [q.index for q in self.qubits if q.role == role]

    def append(self, gate: Gate) -> "Circuit":
        return append(self, gate)

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        gates = tuple(gates)
        declared = {q.index for q in self.qubits}
        for g in gates:
            _check_operands(g, declared)
        return Circuit(self.qubits, self.gates + gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        return compose(self, other)

    def __len__(self) -> int:
        return len(self.gates)

    def count(self, kind: GateKind | str) -> int:
        kind = GateKind(kind)
        return sum(1 for g in self.gates if g.kind is kind)

    def size(self) -> int:
        return size(self)

    def depth(self) -> int:
        return depth(self)

    def inverse(self) -> "Circuit":
        return inverse(self)

    def to_qasm(self) -> str:
        return to_qasm(self)


def _check_operands(gate: Gate, declared: set[int]) -> None:
    for q in gate.operands:
        if q not in declared:
            raise UnknownQubit(f"{gate} uses undeclared qubit {q}")


def append(circuit: Circuit, gate: Gate) -> Circuit:
    _check_operands(gate, {q.index for q in circuit.qubits})
    return Circuit(circuit.qubits, circuit.gates + (gate,))


def compose(first: Circuit, second: Circuit) -> Circuit:
    """Run ``first`` then ``second``; qubit declarations are merged by index."""
    merged = {q.index: q for q in second.qubits}
    merged.update({q.index: q for q in first.qubits})
    qubits = tuple(merged[i] for i in sorted(merged))
    return Circuit(qubits, first.gates + second.gates)


def concat(circuits: Sequence[Circuit], qubits: Sequence[QubitId] | None = None) -> Circuit:
    gates: list[Gate] = []
    merged: dict[int, QubitId] = {}
    for c in circuits:
        for q in c.qubits:
            merged.setdefault(q.index, q)
        gates.extend(c.gates)
    if qubits is None:
        qubits = tuple(merged[i] for i in sorted(merged))
    return Circuit(tuple(qubits), tuple(gates))


def size(circuit: Circuit) -> int:
    return len(circuit.gates)


def layers(circuit: Circuit) -> list[list[Gate]]:
    """ASAP layering: each gate lands one layer after the last layer touching its qubits."""
    frontier: dict[int, int] = {}
    out: list[list[Gate]] = []
    for g in circuit.gates:
        layer = max((frontier.get(q, 0) for q in g.operands), default=0)
        if layer == len(out):
            out.append([])
        out[layer].append(g)
        for q in g.operands:
            frontier[q] = layer + 1
    return out


def depth(circuit: Circuit) -> int:
    return len(layers(circuit))


def inverse(circuit: Circuit) -> Circuit:
    # every gate kind is self-inverse
    return Circuit(circuit.qubits, tuple(reversed(circuit.gates)))


def cancel_adjacent(circuit: Circuit) -> Circuit:
    """Drop sequence-adjacent identical gate pairs until fixpoint (stack pass)."""
    stack: list[Gate] = []
    for g in circuit.gates:
        if stack and stack[-1] == g:
            stack.pop()
        else:
            stack.append(g)
    return Circuit(circuit.qubits, tuple(stack))


# The pass is named for its main use: absorbing X pairs left by polarity conjugation.
cancel_adjacent_x = cancel_adjacent


def relabel(circuit: Circuit, mapping: dict[int, int],
            qubits: Sequence[QubitId] | None = None) -> Circuit:
    gates = tuple(Gate(g.kind, tuple(mapping[q] for q in g.operands)) for g in circuit.gates)
    if qubits is None:
        qubits = tuple(QubitId(mapping[q.index], q.role, q.label) for q in circuit.qubits)
    return Circuit(tuple(qubits), gates)


def to_qasm(circuit: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{circuit.width}];"]
    for g in circuit.gates:
        args = ",".join(f"q[{q}]" for q in g.operands)
        lines.append(f"{g.kind.value} {args};")
    return "\n".join(lines) + "\n"


_QREG = re.compile(r"qreg\s+(\w+)\s*\[\s*(\d+)\s*\]\s*;")
_GATE = re.compile(r"^(x|cx|ccx|swap)\s+(.+);$")
_ARG = re.compile(r"(\w+)\s*\[\s*(\d+)\s*\]")


def from_qasm(text: str) -> Circuit:
    """Read back the subset written by :func:`to_qasm` (single register, x/cx/ccx/swap)."""
    width = None
    gates = []
    for raw in text.splitlines():
        line = raw.split("//", 1)[0].strip()
        if not line or line.startswith(("OPENQASM", "include")):
            continue
        m = _QREG.match(line)
        if m:
            if width is not None:
                raise CircuitError("only a single qreg is supported")
            width = int(m.group(2))
            continue
        m = _GATE.match(line)
        if not m:
            raise CircuitError(f"unsupported QASM statement: {line!r}")
        ops = [int(i) for _, i in _ARG.findall(m.group(2))]
        gates.append(Gate(GateKind(m.group(1)), tuple(ops)))
    if width is None:
        raise CircuitError("missing qreg declaration")
    return Circuit.on(width, gates)
