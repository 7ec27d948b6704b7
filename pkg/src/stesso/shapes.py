"""Builders for the basic shaped structures.

Stair shapes (backslash, downstairs, slash, upstairs) are chains of CCX gates
over ``n`` controls whose results land on ``supports + [target]``. The
V-shape and the I-shape (Cyrillic mirrored N) are compositions of stairs.

Wiring conventions:

* target->control chain: ``CCX(c1, c2, w1), CCX(w1, c3, w2), ..., CCX(w_{n-2}, c_n, t)``;
  the chained wire always sits in control slot 1.
* control->target chain: the same gates in reverse order, so a control of
  gate ``i`` is the target of gate ``i + 1``.
* Term ``i`` is the CCX whose target is ``(supports + [target])[i]``; a marked
  term gets an X on that wire adjacent to the CCX, on the side that keeps the
  chain sequential (after it for target->control, before it for
  control->target). X on a Toffoli target commutes with the Toffoli, so the
  side only affects layering.
* Ascending orientation is the gate reversal of the descending circuit built
  with the opposite control/target rule.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .circuit import CCX, Circuit, CircuitError, Gate, QubitId, X, concat


class ShapeError(CircuitError):
    pass


class BadRule(ShapeError):
    pass


class ArityMismatch(ShapeError):
    pass


class QubitClash(ShapeError):
    pass


class ShapeRule(str, Enum):
    CONTROL_TO_CONTROL = "c->c"
    TARGET_TO_TARGET = "t->t"
    CONTROL_TO_TARGET = "c->t"
    TARGET_TO_CONTROL = "t->c"

    @property
    def opposite(self) -> "ShapeRule":
        return _OPPOSITE.get(self, self)


_OPPOSITE = {ShapeRule.CONTROL_TO_TARGET: ShapeRule.TARGET_TO_CONTROL,
             ShapeRule.TARGET_TO_CONTROL: ShapeRule.CONTROL_TO_TARGET}
_MARKABLE = (ShapeRule.CONTROL_TO_TARGET, ShapeRule.TARGET_TO_CONTROL)

DESCENDING = "descending"
ASCENDING = "ascending"


@dataclass(frozen=True)
class ShapeTetrad:
    controls: tuple[int, ...]
    supports: tuple[int, ...]
    target: int
    rule: ShapeRule | None = ShapeRule.TARGET_TO_CONTROL
    negation_marks: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))
        object.__setattr__(self, "supports", tuple(self.supports))
        object.__setattr__(self, "negation_marks", frozenset(self.negation_marks))
        if self.rule is not None:
            object.__setattr__(self, "rule", ShapeRule(self.rule))
        wires = self.controls + self.supports + (self.target,)
        if len(set(wires)) != len(wires):
            raise QubitClash(f"controls, supports and target overlap: {wires}")

    @property
    def n(self) -> int:
        return len(self.controls)

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + self.supports + (self.target,)


def _register(tetrad: ShapeTetrad, register: Sequence[QubitId] | None) -> tuple[QubitId, ...]:
    if register is not None:
        return tuple(register)
    roles = {q: ("control", f"c{i + 1}") for i, q in enumerate(tetrad.controls)}
    roles.update({q: ("support", f"s{i + 1}") for i, q in enumerate(tetrad.supports)})
    roles[tetrad.target] = ("target", "t")
    width = max(tetrad.qubits) + 1
    return tuple(QubitId(i, *roles.get(i, ("auxiliary", f"q{i}"))) for i in range(width))


def _descending_gates(tetrad: ShapeTetrad) -> list[Gate]:
    c, n = tetrad.controls, tetrad.n
    wires = tetrad.supports + (tetrad.target,)
    rule, marks = tetrad.rule, tetrad.negation_marks
    if n < 2:
        raise ArityMismatch("a stair needs at least 2 controls")
    if marks and rule not in _MARKABLE:
        raise BadRule(f"negation marks need a control/target rule, got {rule}")
    if rule in _MARKABLE and len(wires) != n - 1:
        raise ArityMismatch(f"{n} controls need {n - 2} supports, got {len(tetrad.supports)}")
    if marks and not all(0 <= m < n - 1 for m in marks):
        raise ArityMismatch(f"marks {sorted(marks)} out of range for {n - 1} terms")

    if rule is ShapeRule.TARGET_TO_TARGET:
        return [CCX(c[i], c[i + 1], tetrad.target) for i in range(n - 1)]
    if rule is ShapeRule.CONTROL_TO_CONTROL:
        if len(wires) < n - 1:
            raise ArityMismatch(f"{n} controls need {n - 2} supports for control->control")
        return [CCX(c[i], c[i + 1], wires[i]) for i in range(n - 1)]

    terms = [CCX(c[0] if i == 0 else wires[i - 1], c[i + 1], wires[i]) for i in range(n - 1)]
    gates: list[Gate] = []
    if rule is ShapeRule.TARGET_TO_CONTROL:
        for i, g in enumerate(terms):
            gates.append(g)
            if i in marks:
                gates.append(X(wires[i]))
    else:
        for i in reversed(range(n - 1)):
            if i in marks:
                gates.append(X(wires[i]))
            gates.append(terms[i])
    return gates


def build_stair(tetrad: ShapeTetrad, orientation: str = DESCENDING,
                register: Sequence[QubitId] | None = None) -> Circuit:
    """Backslash / downstairs (descending) or slash / upstairs (ascending) chain."""
    if tetrad.rule is None:
        raise BadRule("stair shapes need a rule")
    if orientation == DESCENDING:
        gates = _descending_gates(tetrad)
    elif orientation == ASCENDING:
        flipped = ShapeTetrad(tetrad.controls, tetrad.supports, tetrad.target,
                              tetrad.rule.opposite, tetrad.negation_marks)
        gates = list(reversed(_descending_gates(flipped)))
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    return Circuit(_register(tetrad, register), tuple(gates))


def backslash(controls, supports, target, rule=ShapeRule.TARGET_TO_CONTROL, register=None):
    return build_stair(ShapeTetrad(controls, supports, target, rule), DESCENDING, register)


def slash(controls, supports, target, rule=ShapeRule.CONTROL_TO_TARGET, register=None):
    return build_stair(ShapeTetrad(controls, supports, target, rule), ASCENDING, register)


def downstairs(controls, supports, target, rule, marks, register=None):
    return build_stair(ShapeTetrad(controls, supports, target, rule, marks), DESCENDING, register)


def upstairs(controls, supports, target, rule, marks, register=None):
    return build_stair(ShapeTetrad(controls, supports, target, rule, marks), ASCENDING, register)


def _check_composite(controls, supports, target) -> ShapeTetrad:
    tetrad = ShapeTetrad(controls, supports, target)
    if tetrad.n < 3:
        raise ArityMismatch("V- and I-shapes need at least 3 controls")
    if len(tetrad.supports) != tetrad.n - 2:
        raise ArityMismatch(f"{tetrad.n} controls need {tetrad.n - 2} supports")
    return tetrad


def build_vshape(controls: Sequence[int], supports: Sequence[int], target: int,
                 register: Sequence[QubitId] | None = None) -> Circuit:
    """Backslash over n controls (t->c) then slash over n-1 controls (c->t).

    Target gains ``(..((c1 c2 ^ s1) c3 ^ s2) .. ) c_n``; controls and supports restored.
    """
    t = _check_composite(controls, supports, target)
    c, s = t.controls, t.supports
    reg = _register(t, register)
    down = backslash(c, s, target, register=reg)
    up = slash(c[:-1], s[:-1], s[-1], register=reg)
    return concat([down, up], reg)


def build_i_shape(controls: Sequence[int], supports: Sequence[int], target: int,
                  register: Sequence[QubitId] | None = None) -> Circuit:
    """V-shape followed by the step-decreasing backslash over ``(s1, c3, .., c_n)``."""
    t = _check_composite(controls, supports, target)
    c, s = t.controls, t.supports
    reg = _register(t, register)
    v = build_vshape(c, s, target, register=reg)
    tail = backslash((s[0],) + c[2:], s[1:], target, register=reg)
    return concat([v, tail], reg)


def step_decreasing(controls: Sequence[int], supports: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Drop the first two controls and promote the first support to control."""
    controls, supports = tuple(controls), tuple(supports)
    return (supports[0],) + controls[2:], supports[1:]
