"""PP-, MP- and G-Stesso synthesizers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .circuit import Circuit, GateKind, QubitId, X, cancel_adjacent, concat, inverse
from .composer import compose_halves, make_sequence
from .shapes import ShapeError


class MaskLengthMismatch(ShapeError):
    pass


class FootprintViolation(ShapeError):
    pass


class GateKindViolation(ShapeError):
    pass


ALLOWED_KINDS = frozenset({GateKind.X, GateKind.CX, GateKind.CCX})


@dataclass(frozen=True)
class PolarityMask:
    control_polarity: tuple[int, ...]
    term_polarity: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        bits = self.control_polarity
        if isinstance(bits, str):
            bits = [int(ch) for ch in bits]
        bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("polarity bits must be 0 or 1")
        object.__setattr__(self, "control_polarity", bits)
        object.__setattr__(self, "term_polarity", frozenset(self.term_polarity))

    @classmethod
    def parse(cls, text: str) -> "PolarityMask":
        """Bitstring ordered c1..cn, leftmost = c1, '1' = negated."""
        return cls(tuple(int(ch) for ch in text.strip()))

    def __len__(self) -> int:
        return len(self.control_polarity)

    @property
    def negated(self) -> list[int]:
        return [i for i, b in enumerate(self.control_polarity) if b]

    @property
    def n_neg(self) -> int:
        return sum(self.control_polarity)

    def __str__(self) -> str:
        return "".join(map(str, self.control_polarity))


@dataclass(frozen=True)
class Stesso:
    """A synthesized operator with its two step-decreasing halves kept apart."""

    circuit: Circuit
    first: Circuit
    second: Circuit
    variant: str
    n: int
    n_s: int

    @property
    def split(self) -> int:
        return len(self.first)

    @property
    def controls(self) -> list[int]:
        return list(range(self.n))

    @property
    def supports(self) -> list[int]:
        return list(range(self.n, self.n + self.n_s))

    @property
    def target(self) -> int:
        return self.n + self.n_s


def build_pp(n: int, variant: str = "seq1", n_s: int | None = None) -> Stesso:
    seq = make_sequence(variant, n, n_s)
    m, m2 = compose_halves(seq)
    circuit = concat([m, m2], seq.register)
    return Stesso(circuit, m, m2, variant, n, seq.support_count)


def synth_pp(n: int, variant: str = "seq1", n_s: int | None = None) -> Circuit:
    """Register layout: controls 0..n-1, supports n..n+n_s-1, target last."""
    return build_pp(n, variant, n_s).circuit


def _conjugate(circuit: Circuit, wires: Sequence[int]) -> Circuit:
    layer = tuple(X(q) for q in wires)
    return Circuit(circuit.qubits, layer + circuit.gates + layer)


def build_mp(n: int, mask: PolarityMask | str, variant: str = "seq1",
             n_s: int | None = None) -> Stesso:
    mask = mask if isinstance(mask, PolarityMask) else PolarityMask.parse(mask)
    if len(mask) != n:
        raise MaskLengthMismatch(f"mask has {len(mask)} bits for {n} controls")
    pp = build_pp(n, variant, n_s)
    neg = mask.negated
    # the halves are conjugated separately so the split survives; the joint
    # circuit is conjugated once around the whole operator
    first = _conjugate(pp.first, neg)
    second = _conjugate(pp.second, neg)
    circuit = cancel_adjacent(_conjugate(pp.circuit, neg))
    return Stesso(circuit, first, second, variant, n, pp.n_s)


def synth_mp(n: int, mask: PolarityMask | str, variant: str = "seq1",
             n_s: int | None = None) -> Circuit:
    return build_mp(n, mask, variant, n_s).circuit


def polarity_size_report(n: int, mask: PolarityMask | str, variant: str = "seq1",
                         n_s: int | None = None) -> dict:
    """Measured MP size against the ``PP size + n_neg`` estimate (reported, never enforced)."""
    mask = mask if isinstance(mask, PolarityMask) else PolarityMask.parse(mask)
    pp = synth_pp(n, variant, n_s).size()
    mp = synth_mp(n, mask, variant, n_s).size()
    return {"pp_size": pp, "mp_size": mp, "n_neg": mask.n_neg,
            "claimed": pp + mask.n_neg, "excess": mp - pp - mask.n_neg}


@dataclass(frozen=True)
class ConstrainedUnitary:
    circuit: Circuit
    footprint: frozenset[int] = field(default=None)

    def __post_init__(self):
        touched = frozenset(q for g in self.circuit.gates for q in g.operands)
        fp = touched if self.footprint is None else frozenset(self.footprint)
        object.__setattr__(self, "footprint", fp | touched)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_constrained(u: ConstrainedUnitary, allowed: Iterable[int]) -> Verdict:
    allowed = frozenset(allowed)
    bad_kinds = sorted({g.kind.name for g in u.circuit.gates if g.kind not in ALLOWED_KINDS})
    if bad_kinds:
        return Verdict(False, f"gate kinds {bad_kinds} not in X/CX/CCX")
    outside = sorted(u.footprint - allowed)
    if outside:
        return Verdict(False, f"touches qubits {outside} outside {sorted(allowed)}")
    return Verdict(True)


def g_stesso_footprints(controls: Sequence[int], supports: Sequence[int],
                        target: int) -> tuple[frozenset[int], frozenset[int]]:
    """Allowed wires for U1 (first two controls + supports) and U2 (other controls + supports + target)."""
    u1 = frozenset(controls[:2]) | frozenset(supports)
    u2 = frozenset(controls[2:]) | frozenset(supports) | {target}
    return u1, u2


def _check(u: ConstrainedUnitary, allowed: frozenset[int], name: str) -> None:
    verdict = validate_constrained(u, allowed)
    if verdict:
        return
    if "kinds" in verdict.reason:
        raise GateKindViolation(f"{name}: {verdict.reason}")
    raise FootprintViolation(f"{name}: {verdict.reason}")


def synth_g(mp_halves: tuple[Circuit, Circuit], u1: ConstrainedUnitary, u2: ConstrainedUnitary,
            controls: Sequence[int] | None = None, supports: Sequence[int] | None = None,
            target: int | None = None, register: Sequence[QubitId] | None = None) -> Circuit:
    """Execution order ``U1, U2, M, U1^-1, M', U2^-1``.

    Roles default to the ``control``/``support``/``target`` qubits declared on ``M``.
    """
    m, m2 = mp_halves
    if controls is None:
        controls = m.indices("control")
    if supports is None:
        supports = m.indices("support")
    if target is None:
        (target,) = m.indices("target")
    allow1, allow2 = g_stesso_footprints(controls, supports, target)
    _check(u1, allow1, "U1")
    _check(u2, allow2, "U2")
    register = tuple(register) if register is not None else m.qubits
    parts = [u1.circuit, u2.circuit, m, inverse(u1.circuit), m2, inverse(u2.circuit)]
    return concat(parts, register)
