"""Composed shaped structures and the three concrete sequence generators.

A :class:`CompositionSequence` is an ordered list of elements, each a shape
kind repeated ``count`` times with one tetrad per repetition. Generated
sequences carry a ``split`` index: elements before it form the first composed
structure ``M``, the rest form the step-decreasing structure ``M'``.

The wave (``seq2``) and ladder (``seq3``) generators share one plan:

1. accumulate the product of a leading block of controls onto the last
   support with a target->control backslash;
2. land small sub-products (pairs for the wave, a growing ladder of chunks for
   the ladder) on negated, already-consumed control wires with downstairs
   shapes -- a wire holding ``~c_i ^ P`` contributes ``c_i P`` once multiplied
   by the block that already contains ``c_i``;
3. toggle the target with a V-shape pair over the block wire and the landing
   wires, using every idle wire as a borrowed support;
4. undo 2 and 1 with the mirrored upstairs and slash shapes.

``M'`` repeats 2-4 with the first Toffoli of the block (the one reading
``c1`` and ``c2``) removed, which cancels the support-dependent residue left
on the target by ``M``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .circuit import CCX, Circuit, QubitId, concat, make_register
from .shapes import (ASCENDING, DESCENDING, ArityMismatch, QubitClash, ShapeError,
                     ShapeRule, ShapeTetrad, build_i_shape, build_stair, build_vshape,
                     step_decreasing)

SHAPES = ("backslash", "downstairs", "V", "I", "upstairs", "slash")
_ORDER = {s: i for i, s in enumerate(SHAPES)}
VARIANTS = ("seq1", "seq2", "seq3")

T2C = ShapeRule.TARGET_TO_CONTROL
C2T = ShapeRule.CONTROL_TO_TARGET


class EmptySequence(ShapeError):
    pass


class BadSupportCount(ShapeError):
    pass


class BadVariant(ShapeError):
    pass


class TooFewControls(ShapeError):
    pass


@dataclass(frozen=True)
class SequenceElement:
    count: int
    shape: str
    tetrads: tuple[ShapeTetrad, ...] = ()
    transition: bool = False

    def __post_init__(self):
        object.__setattr__(self, "tetrads", tuple(self.tetrads))
        if self.shape not in _ORDER:
            raise ShapeError(f"unknown shape {self.shape!r}")
        if self.count < 0:
            raise ShapeError("count must be non-negative")
        if self.transition and self.count > 1:
            raise ShapeError("transition counts are 0 or 1")
        if len(self.tetrads) != self.count:
            raise ShapeError(f"{self.count} repetitions but {len(self.tetrads)} tetrads")

    def tetrad(self, i: int) -> ShapeTetrad:
        return self.tetrads[i]


@dataclass(frozen=True)
class CompositionSequence:
    elements: tuple[SequenceElement, ...]
    total_controls: int
    support_count: int
    variant: str = "custom"
    split: int | None = None
    register: tuple[QubitId, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for half in self.halves():
            ranks = [_ORDER[e.shape] for e in half]
            if ranks != sorted(ranks):
                raise ShapeError("shapes must follow backslash, downstairs, V, I, upstairs, slash")

    def halves(self) -> tuple[tuple[SequenceElement, ...], ...]:
        if self.split is None:
            return (self.elements,)
        return self.elements[:self.split], self.elements[self.split:]

    @property
    def total_count(self) -> int:
        return sum(e.count for e in self.elements)

    @property
    def target(self) -> int:
        return self.total_controls + self.support_count


@dataclass(frozen=True)
class LadderDecomposition:
    k: int
    m: int

    @property
    def n(self) -> int:
        return self.k * (self.k + 1) // 2 + self.m


def ladder_split(n: int) -> LadderDecomposition:
    """Canonical ``n = k(k+1)/2 + m`` with ``k`` maximal, hence ``0 <= m <= k``."""
    if n < 3:
        raise TooFewControls(f"need n >= 3, got {n}")
    k = (math.isqrt(8 * n + 1) - 1) // 2
    return LadderDecomposition(k, n - k * (k + 1) // 2)


def _build_one(shape: str, t: ShapeTetrad, register) -> Circuit:
    if shape in ("backslash", "downstairs"):
        return build_stair(t, DESCENDING, register)
    if shape in ("upstairs", "slash"):
        return build_stair(t, ASCENDING, register)
    if shape == "V":
        if t.n == 2 and not t.supports:
            # degenerate two-control V: the single Toffoli of its backslash half
            return Circuit(register, (CCX(t.controls[0], t.controls[1], t.target),))
        return build_vshape(t.controls, t.supports, t.target, register)
    return build_i_shape(t.controls, t.supports, t.target, register)


def compose(seq: CompositionSequence, qubit_pool: Sequence[QubitId] | None = None) -> Circuit:
    if seq.total_count < 1:
        raise EmptySequence("a composed structure needs at least one repetition or transition")
    register = tuple(qubit_pool) if qubit_pool is not None else seq.register
    if not register:
        width = 1 + max(q for e in seq.elements for t in e.tetrads for q in t.qubits)
        register = tuple(QubitId(i) for i in range(width))
    pool = {q.index for q in register}
    parts = []
    for e in seq.elements:
        for t in e.tetrads:
            missing = set(t.qubits) - pool
            if missing:
                raise QubitClash(f"tetrad uses qubits {sorted(missing)} outside the pool")
            parts.append(_build_one(e.shape, t, register))
    return concat(parts, register)


def compose_halves(seq: CompositionSequence, qubit_pool=None) -> tuple[Circuit, Circuit]:
    """Build ``M`` and ``M'`` separately (``M'`` empty for unsplit sequences)."""
    register = tuple(qubit_pool) if qubit_pool is not None else seq.register
    first, second = seq.halves() if seq.split is not None else (seq.elements, ())
    m = compose(CompositionSequence(first, seq.total_controls, seq.support_count,
                                    register=seq.register), register)
    if not second:
        return m, Circuit(m.qubits, ())
    m2 = compose(CompositionSequence(second, seq.total_controls, seq.support_count,
                                     register=seq.register), register)
    return m, m2


def _el(shape: str, tetrads: Iterable[ShapeTetrad]) -> list[SequenceElement]:
    tetrads = tuple(tetrads)
    return [SequenceElement(len(tetrads), shape, tetrads)] if tetrads else []


def _core(core: list[int], idle: list[int], target: int) -> list[SequenceElement]:
    """V-shape pair toggling ``target`` by the product of the ``core`` wires."""
    m = len(core)
    if m == 2:
        return _el("V", [ShapeTetrad(core, (), target, None)])
    if len(idle) < m - 2:
        raise ArityMismatch(f"core of {m} wires needs {m - 2} idle wires, have {len(idle)}")
    supports = idle[:m - 2]
    sc, ss = step_decreasing(core, supports)
    return _el("V", [ShapeTetrad(core, supports, target, None), ShapeTetrad(sc, ss, target, None)])


def _half(block: ShapeTetrad | None, landings: list[ShapeTetrad], landing_rule: ShapeRule,
          core: list[SequenceElement]) -> list[SequenceElement]:
    down = _el("downstairs", landings)
    # upstairs(rule R) is the gate reversal of downstairs(opposite R)
    up = _el("upstairs", [ShapeTetrad(t.controls, t.supports, t.target, landing_rule.opposite,
                                      t.negation_marks) for t in reversed(landings)])
    out = []
    if block is not None:
        out += _el("backslash", [block])
    out += down + core + up
    if block is not None:
        out += _el("slash", [ShapeTetrad(block.controls, block.supports, block.target, C2T)])
    return out


def _seq1(n: int) -> tuple[list[SequenceElement], int]:
    c = list(range(n))
    s = list(range(n, 2 * n - 2))
    t = 2 * n - 2
    sc, ss = step_decreasing(c, s)
    first = _el("V", [ShapeTetrad(c, s, t, None)])
    return first + _el("V", [ShapeTetrad(sc, ss, t, None)]), 1


def _seq2(n: int, n_s: int) -> tuple[list[SequenceElement], int]:
    c = list(range(n))
    s = list(range(n, n + n_s))
    t = n + n_s
    r = n - n_s - 1
    k, j = divmod(r, 2)
    block = ShapeTetrad(c[:n_s + 1], s[:-1], s[-1], T2C)
    block_sd = None
    if n_s >= 2:
        bc, bs = step_decreasing(block.controls, block.supports)
        block_sd = ShapeTetrad(bc, bs, s[-1], T2C)
    landings = [ShapeTetrad((c[n_s + 1 + 2 * i], c[n_s + 2 + 2 * i]), (), c[i], C2T, {0})
                for i in range(k)]
    core = [c[i] for i in range(k)] + ([c[n - 1]] if j else []) + [s[-1]]
    idle = [q for q in c + s[:-1] if q not in core]
    core_els = _core(core, idle, t)
    first = _half(block, landings, C2T, core_els)
    second = _half(block_sd, landings, C2T, core_els)
    return first + second, len(first)


def _seq3(n: int) -> tuple[list[SequenceElement], int]:
    lad = ladder_split(n)
    k, m = lad.k, lad.m
    c = list(range(n))
    s1, t = n, n + 1
    block = ShapeTetrad((c[0], c[1]), (), s1, T2C)
    lengths = list(range(3, k + 1)) + ([m + 1] if m >= 1 else [])
    landings, core = [], [s1]
    start, wire = 2, 0
    for length in lengths:
        ctrls = c[start:start + length]
        wires = c[wire:wire + length - 1]
        landings.append(ShapeTetrad(ctrls, wires[:-1], wires[-1], T2C, range(length - 1)))
        core.append(wires[-1])
        start += length
        wire += length - 1
    if m == 0:
        core.append(c[n - 1])
    idle = [q for q in c if q not in core]
    core_els = _core(core, idle, t)
    first = _half(block, landings, T2C, core_els)
    second = _half(None, landings, T2C, core_els)
    return first + second, len(first)


def support_count(variant: str, n: int, n_s: int | None = None) -> int:
    if variant == "seq1":
        expected = n - 2
    elif variant == "seq3":
        expected = 1
    elif variant == "seq2":
        if n_s is None or not 1 <= n_s <= n - 2:
            raise BadSupportCount(f"seq2 needs 1 <= n_s <= {n - 2}, got {n_s}")
        return n_s
    else:
        raise BadVariant(variant)
    if n_s is not None and n_s != expected:
        raise BadSupportCount(f"{variant} uses exactly {expected} supports, got {n_s}")
    return expected


def make_sequence(variant: str, n: int, n_s: int | None = None) -> CompositionSequence:
    if variant not in VARIANTS:
        raise BadVariant(variant)
    if n < 3:
        raise TooFewControls(f"need n >= 3, got {n}")
    n_s = support_count(variant, n, n_s)
    if variant == "seq1":
        elements, split = _seq1(n)
    elif variant == "seq2":
        elements, split = _seq2(n, n_s)
    else:
        elements, split = _seq3(n)
    return CompositionSequence(tuple(elements), n, n_s, variant, split, make_register(n, n_s))


# -- text form ---------------------------------------------------------------

def _names(register: Sequence[QubitId]) -> dict[int, str]:
    return {q.index: q.label for q in register}


def sequence_to_text(seq: CompositionSequence) -> str:
    """One line per repetition: ``(count, shape, rule, controls, supports, target, marks)``."""
    name = _names(seq.register) if seq.register else {}
    fmt = lambda qs: "[" + ",".join(name.get(q, f"q{q}") for q in qs) + "]"
    lines = [f"# variant={seq.variant} n={seq.total_controls} n_s={seq.support_count}"]
    for i, e in enumerate(seq.elements):
        if seq.split is not None and i == seq.split:
            lines.append("---")
        for t in e.tetrads:
            rule = t.rule.value if t.rule is not None else "-"
            marks = "[" + ",".join(str(x) for x in sorted(t.negation_marks)) + "]"
            lines.append(f"({e.count}, {e.shape}, {rule}, {fmt(t.controls)}, "
                         f"{fmt(t.supports)}, {name.get(t.target, f'q{t.target}')}, {marks})")
    return "\n".join(lines) + "\n"


_LINE = re.compile(r"\((\d+), (\w+), (\S+), \[([^\]]*)\], \[([^\]]*)\], (\w+), \[([^\]]*)\]\)")


def sequence_from_text(text: str, register: Sequence[QubitId]) -> CompositionSequence:
    index = {q.label: q.index for q in register}
    header = re.search(r"variant=(\w+) n=(\d+) n_s=(\d+)", text)
    elements: list[SequenceElement] = []
    split = None
    pending: list[tuple[str, int, ShapeTetrad]] = []

    def flush():
        while pending:
            shape, count = pending[0][0], pending[0][1]
            group = [p[2] for p in pending[:count]]
            del pending[:count]
            elements.append(SequenceElement(count, shape, group))

    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line == "---":
            flush()
            split = len(elements)
            continue
        m = _LINE.fullmatch(line)
        if not m:
            raise ValueError(f"bad sequence line: {line!r}")
        count, shape, rule, ctrl, supp, tgt, marks = m.groups()
        qs = lambda field_: tuple(index[x] for x in field_.split(",") if x)
        tetrad = ShapeTetrad(qs(ctrl), qs(supp), index[tgt], None if rule == "-" else rule,
                             {int(x) for x in marks.split(",") if x})
        pending.append((shape, int(count), tetrad))
    flush()
    variant, n, n_s = (header.group(1), int(header.group(2)), int(header.group(3))) if header \
        else ("custom", 0, 0)
    return CompositionSequence(tuple(elements), n, n_s, variant, split, tuple(register))
