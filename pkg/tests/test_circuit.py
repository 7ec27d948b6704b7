import pytest
from hypothesis import given, settings

from stesso.circuit import (CCX, CX, SWAP, X, Circuit, CircuitError, DuplicateOperand, Gate,
                            GateKind, UnknownQubit, cancel_adjacent, concat, depth, from_qasm,
                            inverse, layers, make_register, relabel, to_qasm)
from stesso.sim import equivalent, permutation_table

from conftest import circuits


def test_gate_validation():
    with pytest.raises(DuplicateOperand):
        CCX(0, 0, 1)
    with pytest.raises(CircuitError):
        Gate("cx", (0,))
    with pytest.raises(ValueError):
        Gate("h", (0,))
    g = CCX(2, 0, 1)
    assert g.target == 1 and g.controls == (2, 0)
    assert SWAP(0, 1).controls == ()


def test_undeclared_qubit_rejected():
    c = Circuit.on(2)
    with pytest.raises(UnknownQubit):
        c.append(CX(0, 2))
    with pytest.raises(UnknownQubit):
        Circuit.on(2, [X(5)])


def test_register_roles():
    reg = make_register(3, 1)
    c = Circuit(reg)
    assert c.indices("control") == [0, 1, 2]
    assert c.indices("support") == [3]
    assert c.indices("target") == [4]
    assert [q.label for q in reg] == ["c1", "c2", "c3", "s1", "t"]


def test_depth_asap():
    c = Circuit.on(4, [CCX(0, 1, 2), X(3), CX(3, 0), X(1)])
    # X(3) and X(1) fit beside earlier gates
    assert depth(c) == 2
    assert [len(layer) for layer in layers(c)] == [2, 2]
    assert depth(Circuit.on(3)) == 0


def test_cancel_nested_pairs():
    c = Circuit.on(3, [X(0), CX(0, 1), CX(0, 1), X(0), CCX(0, 1, 2)])
    assert cancel_adjacent(c).gates == (CCX(0, 1, 2),)


def test_concat_and_relabel():
    a = Circuit.on(3, [CX(0, 1)])
    b = Circuit.on(3, [CCX(0, 1, 2)])
    assert concat([a, b]).gates == (CX(0, 1), CCX(0, 1, 2))
    r = relabel(b, {0: 2, 1: 0, 2: 1})
    assert r.gates == (CCX(2, 0, 1),)


def test_qasm_round_trip_text():
    c = Circuit.on(4, [X(0), CX(1, 2), CCX(0, 1, 3), SWAP(2, 3)])
    text = to_qasm(c)
    assert text.splitlines()[:3] == ["OPENQASM 2.0;", 'include "qelib1.inc";', "qreg q[4];"]
    assert "ccx q[0],q[1],q[3];" in text
    assert from_qasm(text).gates == c.gates


def test_qasm_rejects_unknown_statement():
    with pytest.raises(CircuitError):
        from_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[0];\n")


@settings(max_examples=60, deadline=None)
@given(circuits())
def test_inverse_is_identity(c):
    assert equivalent(c + inverse(c), Circuit.on(c.num_qubits))


@settings(max_examples=60, deadline=None)
@given(circuits(max_width=4, kinds=("x", "cx")))
def test_cancel_preserves_permutation(c):
    doubled = Circuit.on(c.num_qubits, [g for g in c.gates for _ in range(2)] + list(c.gates))
    slim = cancel_adjacent(doubled)
    assert (permutation_table(slim) == permutation_table(doubled)).all()
    assert slim.size() <= c.size()


@settings(max_examples=40, deadline=None)
@given(circuits(max_width=5))
def test_qasm_round_trip(c):
    assert from_qasm(to_qasm(c)).gates == c.gates


def test_count_by_kind():
    c = Circuit.on(3, [X(0), CCX(0, 1, 2), CCX(0, 1, 2)])
    assert c.count(GateKind.CCX) == 2 and c.count("x") == 1 and c.size() == 3
