import itertools

import pytest

from stesso.circuit import CCX, CX, SWAP, X, Circuit, make_register
from stesso.composer import make_sequence
from stesso.shapes import build_vshape
from stesso.sim import mcx_table, permutation_table, verify_mcx
from stesso.synth import (FootprintViolation, GateKindViolation, MaskLengthMismatch,
                          ConstrainedUnitary, PolarityMask, build_mp, build_pp,
                          g_stesso_footprints, polarity_size_report, synth_g, synth_mp, synth_pp,
                          validate_constrained)


@pytest.mark.parametrize("variant,n,n_s", [("seq1", 4, None), ("seq2", 6, 1), ("seq2", 7, 3),
                                           ("seq3", 7, None)])
def test_pp_is_mcx(variant, n, n_s):
    s = build_pp(n, variant, n_s)
    assert verify_mcx(s.circuit, s.controls, s.target, s.supports).ok
    assert s.circuit.gates == s.first.gates + s.second.gates


def test_pp_emits_no_swaps():
    for variant in ("seq1", "seq2", "seq3"):
        assert synth_pp(7, variant, 2 if variant == "seq2" else None).count("swap") == 0


@pytest.mark.parametrize("n", [3, 4])
def test_mp_all_masks(n):
    for bits in itertools.product((0, 1), repeat=n):
        mask = PolarityMask(bits)
        c = synth_mp(n, mask, "seq1")
        want = mcx_table(c.width, range(n), c.width - 1, mask.negated)
        assert (permutation_table(c) == want).all()


def test_mask_parsing():
    m = PolarityMask.parse("0110")
    assert m.negated == [1, 2] and m.n_neg == 2 and str(m) == "0110"
    with pytest.raises(ValueError):
        PolarityMask.parse("012")
    with pytest.raises(MaskLengthMismatch):
        build_mp(4, "011")


def test_positive_mask_matches_pp():
    assert synth_mp(5, "00000").gates == synth_pp(5).gates


def test_polarity_report_is_report_only():
    r = polarity_size_report(5, "10100")
    assert r["mp_size"] >= r["pp_size"]
    assert r["excess"] == r["mp_size"] - r["claimed"]


def test_footprints():
    u1, u2 = g_stesso_footprints([0, 1, 2, 3], [4, 5], 6)
    assert u1 == {0, 1, 4, 5}
    assert u2 == {2, 3, 4, 5, 6}


def test_constrained_validation():
    reg = make_register(4, 2)
    assert validate_constrained(ConstrainedUnitary(Circuit(reg, (CX(0, 4),))), {0, 1, 4, 5})
    bad = validate_constrained(ConstrainedUnitary(Circuit(reg, (CX(0, 6),))), {0, 1, 4, 5})
    assert not bad and "outside" in bad.reason


def test_g_stesso_rejects_violations():
    s = build_pp(4)
    reg = s.circuit.qubits
    ok = ConstrainedUnitary(Circuit(reg, ()))
    with pytest.raises(FootprintViolation):
        synth_g((s.first, s.second), ConstrainedUnitary(Circuit(reg, (X(3),))), ok)
    with pytest.raises(GateKindViolation):
        synth_g((s.first, s.second), ok, ConstrainedUnitary(Circuit(reg, (SWAP(2, 3),))))


def test_g_stesso_with_identity_wrappers_is_pp():
    s = build_pp(5)
    empty = ConstrainedUnitary(Circuit(s.circuit.qubits, ()))
    assert synth_g((s.first, s.second), empty, empty).gates == s.circuit.gates


def test_g_stesso_word_order():
    s = build_pp(4)
    reg = s.circuit.qubits
    u1 = Circuit(reg, (X(0),))
    u2 = Circuit(reg, (CX(2, 3),))
    g = synth_g((s.first, s.second), ConstrainedUnitary(u1), ConstrainedUnitary(u2))
    want = u1.gates + u2.gates + s.first.gates + u1.gates + s.second.gates + u2.gates
    assert g.gates == want


def test_g_stesso_u1_relabels_first_controls():
    # U1 = X on c1 turns the positive MCX into one with c1 negated
    s = build_pp(4)
    reg = s.circuit.qubits
    g = synth_g((s.first, s.second), ConstrainedUnitary(Circuit(reg, (X(0),))),
                ConstrainedUnitary(Circuit(reg, ())))
    assert verify_mcx(g, s.controls, s.target, s.supports, "1000").ok
