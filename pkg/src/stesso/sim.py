"""Classical basis-state simulation of X/CX/CCX/SWAP circuits.

Bit ``i`` of a state index is qubit ``i``. The text form of a basis state is
big-endian by qubit index, i.e. ``q0`` is the leftmost character.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .circuit import Circuit, GateKind

MAX_EXHAUSTIVE_QUBITS = 20
DEFAULT_SAMPLES = 100_000


class SimulationError(ValueError):
    pass


class LengthMismatch(SimulationError):
    pass


class TooManyQubits(SimulationError):
    pass


def bits_to_index(bits: Sequence[int]) -> int:
    return sum((int(b) & 1) << i for i, b in enumerate(bits))


def index_to_bits(index: int, width: int) -> list[int]:
    return [(index >> i) & 1 for i in range(width)]


def format_state(index: int, width: int) -> str:
    return "".join(str(b) for b in index_to_bits(index, width))


def parse_state(text: str) -> list[int]:
    return [int(ch) for ch in text.strip()]


def run_states(circuit: Circuit, states: np.ndarray) -> np.ndarray:
    """Push an integer array of basis states through the circuit (vectorised)."""
    s = np.array(states, dtype=np.uint64, copy=True)
    one = np.uint64(1)
    for g in circuit.gates:
        ops = [np.uint64(q) for q in g.operands]
        if g.kind is GateKind.X:
            s ^= one << ops[0]
        elif g.kind is GateKind.CX:
            s ^= ((s >> ops[0]) & one) << ops[1]
        elif g.kind is GateKind.CCX:
            s ^= ((s >> ops[0]) & (s >> ops[1]) & one) << ops[2]
        else:
            a, b = ops
            diff = ((s >> a) ^ (s >> b)) & one
            s ^= (diff << a) | (diff << b)
    return s


def apply(circuit: Circuit, state: Sequence[int]) -> list[int]:
    """Apply the circuit to one basis state given as a bit list (q0 first)."""
    width = circuit.width
    if len(state) != width:
        raise LengthMismatch(f"state has {len(state)} bits, circuit needs {width}")
    out = run_states(circuit, np.array([bits_to_index(state)], dtype=np.uint64))
    return index_to_bits(int(out[0]), width)


def permutation_table(circuit: Circuit) -> np.ndarray:
    """``table[i]`` is the image of basis state ``i``. Checked to be a bijection."""
    width = circuit.width
    if width > MAX_EXHAUSTIVE_QUBITS:
        raise TooManyQubits(f"{width} qubits exceeds the exhaustive cap of {MAX_EXHAUSTIVE_QUBITS}")
    table = run_states(circuit, np.arange(1 << width, dtype=np.uint64)).astype(np.int64)
    if np.unique(table).size != table.size:
        raise SimulationError("circuit table is not a permutation")
    return table


def mcx_table(width: int, controls: Sequence[int], target: int,
              negated: Sequence[int] = ()) -> np.ndarray:
    """Reference table of a (mixed-polarity) multi-controlled X built straight from the definition."""
    states = np.arange(1 << width, dtype=np.int64)
    fire = np.ones(states.shape, dtype=bool)
    neg = set(negated)
    for c in controls:
        bit = ((states >> c) & 1).astype(bool)
        fire &= ~bit if c in neg else bit
    return states ^ (fire.astype(np.int64) << target)


@dataclass
class MCXVerdict:
    mcx: bool
    restore: bool
    support_independent: bool
    checked_states: int = 0
    exhaustive: bool = True
    counterexample: int | None = None
    width: int = 0
    failures: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.mcx and self.restore and self.support_independent

    def as_tuple(self) -> tuple[bool, bool, bool]:
        return (self.mcx, self.restore, self.support_independent)

    def __str__(self) -> str:
        word = {True: "ok", False: "FAIL"}
        text = (f"mcx: {word[self.mcx]}, restore: {word[self.restore]}, "
                f"support-independent: {word[self.support_independent]}")
        if self.counterexample is not None:
            text += f"\ncounterexample: {format_state(self.counterexample, self.width)}"
        return text


def _polarity_list(mask, n: int) -> list[int]:
    if mask is None:
        return [0] * n
    bits = getattr(mask, "control_polarity", mask)
    if isinstance(bits, str):
        bits = [int(ch) for ch in bits]
    bits = list(bits)
    if len(bits) != n:
        raise LengthMismatch(f"mask has {len(bits)} entries for {n} controls")
    return bits


def verify_mcx(circuit: Circuit, controls: Sequence[int], target: int,
               supports: Sequence[int] = (), mask=None, *,
               samples: int = DEFAULT_SAMPLES, seed: int = 0) -> MCXVerdict:
    """Check that ``circuit`` is target ^= AND(literals) with every other wire restored.

    Exhaustive up to :data:`MAX_EXHAUSTIVE_QUBITS`; otherwise ``samples`` random
    states, each also re-run under a fresh random support initialisation.
    """
    width = circuit.width
    pol = _polarity_list(mask, len(controls))
    exhaustive = width <= MAX_EXHAUSTIVE_QUBITS
    if exhaustive:
        states = np.arange(1 << width, dtype=np.uint64)
    else:
        if width > 64:
            raise TooManyQubits("sampling mode supports at most 64 qubits")
        rng = np.random.default_rng(seed)
        states = rng.integers(0, 2**63, size=samples, dtype=np.uint64, endpoint=False)
        if width < 64:
            states &= np.uint64((1 << width) - 1)
    out = run_states(circuit, states)

    one = np.uint64(1)
    fire = np.ones(states.shape, dtype=bool)
    for c, p in zip(controls, pol):
        bit = ((states >> np.uint64(c)) & one).astype(bool)
        fire &= ~bit if p else bit
    tmask = one << np.uint64(target)
    expected_t = ((states >> np.uint64(target)) & one).astype(bool) ^ fire
    got_t = ((out >> np.uint64(target)) & one).astype(bool)
    mcx_bad = expected_t != got_t
    rest_bad = ((out ^ states) & ~tmask) != 0

    # target outcome must not depend on the support initial values
    supp_mask = np.uint64(sum(1 << s for s in supports))
    if supports:
        if exhaustive:
            key = (states & ~supp_mask).astype(np.int64)
            order = np.argsort(key, kind="stable")
            k_sorted, t_sorted = key[order], got_t[order]
            group = np.r_[True, k_sorted[1:] != k_sorted[:-1]]
            first = np.maximum.accumulate(np.where(group, np.arange(key.size), 0))
            indep_bad_sorted = t_sorted != t_sorted[first]
            indep_bad = np.empty_like(indep_bad_sorted)
            indep_bad[order] = indep_bad_sorted
        else:
            rng = np.random.default_rng(seed + 1)
            alt = rng.integers(0, 2**63, size=states.size, dtype=np.uint64) & supp_mask
            alt_states = (states & ~supp_mask) | alt
            alt_t = ((run_states(circuit, alt_states) >> np.uint64(target)) & one).astype(bool)
            indep_bad = alt_t != got_t
    else:
        indep_bad = np.zeros(states.shape, dtype=bool)

    any_bad = mcx_bad | rest_bad | indep_bad
    cex = int(states[np.argmax(any_bad)]) if any_bad.any() else None
    return MCXVerdict(
        mcx=not mcx_bad.any(),
        restore=not rest_bad.any(),
        support_independent=not indep_bad.any(),
        checked_states=int(states.size),
        exhaustive=exhaustive,
        counterexample=cex,
        width=width,
        failures={"mcx": int(mcx_bad.sum()), "restore": int(rest_bad.sum()),
                  "support": int(indep_bad.sum())},
    )


def equivalent(a: Circuit, b: Circuit) -> bool:
    """Permutation equality over the wider of the two registers."""
    width = max(a.width, b.width)
    states = np.arange(1 << width, dtype=np.uint64)
    return bool(np.array_equal(run_states(a, states), run_states(b, states)))
