import random

import pytest
from hypothesis import given, settings, strategies as st

from stesso.circuit import CCX, CX, X, Circuit
from stesso.layout import (BadDims, NotEnoughQubits, Placement, check_adjacency, shared_requirement_circuits,
                           make_coupling, path_coupling, place_and_route, requirement_graph,
                           routed_equivalent)

from conftest import circuits


def test_single_ccx_is_triangle():
    g = requirement_graph(Circuit.on(3, [CCX(0, 1, 2)]))
    assert g.sorted_edges() == [(0, 1), (0, 2), (1, 2)]


def test_empty_circuit():
    g = requirement_graph(Circuit.on(3))
    assert not g.edges and not g.vertices


def test_backslash_and_v_share_requirement():
    a, b = shared_requirement_circuits()
    assert requirement_graph(a) == requirement_graph(b)
    assert len(requirement_graph(a).edges) == 6


@settings(max_examples=50, deadline=None)
@given(circuits(min_width=3, max_width=6), st.randoms(use_true_random=False))
def test_requirement_invariant_to_order_and_repeats(c, rnd):
    gates = list(c.gates) + [g for g in c.gates if rnd.random() < 0.3]
    rnd.shuffle(gates)
    assert requirement_graph(Circuit.on(c.num_qubits, gates)) == requirement_graph(c)


def test_coupling_shapes():
    grid = make_coupling("square_grid", (3, 3))
    assert (grid.num_vertices, grid.num_edges, grid.max_degree()) == (9, 12, 4)
    chain = make_coupling("triangle_chain", (2,))
    assert (chain.num_vertices, chain.num_edges) == (5, 6)
    lattice = make_coupling("square_lattice", (2, 2))
    assert (lattice.num_vertices, lattice.num_edges) == (9, 12)
    for dims in [(1, 1), (2, 2), (2, 3)]:
        hh = make_coupling("heavy_hex", dims)
        assert hh.max_degree() <= 3
    assert make_coupling("heavy_hex", (1, 1)).num_vertices == 12


@pytest.mark.parametrize("kind,dims", [("square_grid", (3,)), ("square_grid", (0, 3)),
                                       ("triangle_chain", (-1,)), ("octagon", (2,))])
def test_bad_dims(kind, dims):
    with pytest.raises(BadDims):
        make_coupling(kind, dims)


def test_not_enough_qubits():
    with pytest.raises(NotEnoughQubits):
        place_and_route(Circuit.on(6, [CCX(0, 1, 5)]), make_coupling("triangle_chain", (2,)))


def test_shared_pair_on_triangle_chain_needs_no_swaps():
    for c in shared_requirement_circuits():
        p = place_and_route(c, make_coupling("triangle_chain", (2,)))
        assert p.swap_count == 0 and p.method == "exhaustive"
        assert routed_equivalent(c, p)


def test_ccx_on_path_needs_swap():
    c = Circuit.on(3, [CCX(0, 1, 2)])
    p = place_and_route(c, path_coupling(3))
    assert p.swap_count >= 1
    assert check_adjacency(p, c, path_coupling(3))
    assert routed_equivalent(c, p)


@pytest.mark.parametrize("kind,dims", [("square_grid", (3, 3)), ("heavy_hex", (1, 1)),
                                       ("square_lattice", (1, 2))])
def test_exhaustive_beats_greedy(kind, dims):
    coupling = make_coupling(kind, dims)
    c = shared_requirement_circuits()[1]
    best = place_and_route(c, coupling, "exhaustive")
    quick = place_and_route(c, coupling, "greedy")
    assert best.method == "exhaustive"
    assert best.swap_count <= quick.swap_count
    for p in (best, quick):
        assert check_adjacency(p, c, coupling)
        assert routed_equivalent(c, p)


def test_assignment_is_injective():
    c = Circuit.on(4, [CCX(0, 1, 2), CX(2, 3), X(0)])
    p = place_and_route(c, make_coupling("square_grid", (2, 3)))
    assert len(set(p.assignment.values())) == len(p.assignment) == 4
    assert len(set(p.final_assignment.values())) == 4


def test_equivalence_catches_tampering():
    c = shared_requirement_circuits()[1]
    coupling = make_coupling("square_grid", (3, 3))
    p = place_and_route(c, coupling)
    broken = Placement(p.assignment, p.swap_count, p.swap_schedule, p.final_assignment,
                       Circuit(p.routed.qubits, p.routed.gates[:-1]), p.method, p.swap_steps)
    assert not routed_equivalent(c, broken)


@settings(max_examples=15, deadline=None)
@given(circuits(min_width=3, max_width=5, max_gates=6, kinds=("x", "cx", "ccx")))
def test_random_circuits_route_equivalently(c):
    coupling = make_coupling("square_grid", (2, 3))
    best = place_and_route(c, coupling, "exhaustive")
    quick = place_and_route(c, coupling, "greedy")
    assert best.swap_count <= quick.swap_count
    for p in (best, quick):
        assert check_adjacency(p, c, coupling)
        assert routed_equivalent(c, p)
