"""Connectivity requirements and SWAP routing onto symmetric coupling graphs.

A CCX is routed through the pair sequence of its standard 6-CX template:
``(c2,t), (c1,t), (c2,t), (c1,t), (c1,c2), (c1,c2)``; each pair must sit on a
coupling edge when its turn comes. On a triangle all pairs are adjacent at
once; on triangle-free lattices SWAPs are needed in between. The routed
circuit keeps the CCX whole and emits it after the SWAPs of its template, on
the current physical positions, so it stays permutation-equivalent to the
input up to the final relabeling.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx
import numpy as np

from .circuit import CCX, Circuit, Gate, GateKind, QubitId, SWAP, CircuitError
from .sim import run_states


class LayoutError(CircuitError):
    pass


class BadDims(LayoutError):
    pass


class NotEnoughQubits(LayoutError):
    pass


class SearchBudgetExceeded(LayoutError):
    pass


COUPLING_KINDS = ("triangle_chain", "square_lattice", "square_grid", "heavy_hex")
EXHAUSTIVE_MAX_LOGICAL = 8
DEFAULT_STATE_BUDGET = 2_000_000
TEMPLATE_CX = 6


@dataclass(frozen=True)
class RequirementGraph:
    vertices: frozenset[int]
    edges: frozenset[frozenset[int]]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(tuple(e) for e in self.edges)
        return g

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)


def requirement_graph(circuit: Circuit) -> RequirementGraph:
    edges, verts = set(), set()
    for g in circuit.gates:
        if g.kind is GateKind.X:
            continue
        verts.update(g.operands)
        # a repeated gate on the same wires adds the same clique, counted once
        edges.update(frozenset(p) for p in itertools.combinations(g.operands, 2))
    return RequirementGraph(frozenset(verts), frozenset(edges))


@dataclass(frozen=True)
class CouplingGraph:
    kind: str
    dims: tuple[int, ...]
    graph: nx.Graph = field(compare=False, repr=False)

    @property
    def adjacency(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.graph.edges)

    @property
    def num_vertices(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def num_edges(self) -> int:
        return self.graph.number_of_edges()

    def max_degree(self) -> int:
        return max((d for _, d in self.graph.degree), default=0)


def _triangle_chain(k: int) -> nx.Graph:
    g = nx.Graph()
    for i in range(k):
        a, b, c = 2 * i, 2 * i + 1, 2 * i + 2
        g.add_edges_from([(a, b), (b, c), (a, c)])
    return g


def _heavy_hex(rows: int, cols: int) -> nx.Graph:
    hexes = nx.hexagonal_lattice_graph(rows, cols)
    g = nx.Graph()
    g.add_nodes_from(("site", u) for u in hexes.nodes)
    for u, v in hexes.edges:
        mid = ("bridge",) + tuple(sorted((u, v)))
        g.add_edges_from([(("site", u), mid), (mid, ("site", v))])
    return g


def make_coupling(kind: str, dims: Sequence[int]) -> CouplingGraph:
    """Deterministic generators, vertices relabeled ``0..V-1`` in sorted order.

    ``triangle_chain(k)``: k triangles, consecutive ones sharing a vertex.
    ``square_grid(r, c)``: r x c vertices. ``square_lattice(r, c)``: r x c unit
    squares. ``heavy_hex(r, c)``: r x c hexagons with a bridge qubit on every edge.
    """
    dims = tuple(int(d) for d in dims)
    want = {"triangle_chain": 1, "square_lattice": 2, "square_grid": 2, "heavy_hex": 2}
    if kind not in want:
        raise BadDims(f"unknown coupling kind {kind!r}; choose from {COUPLING_KINDS}")
    if len(dims) != want[kind] or any(d < 1 for d in dims):
        raise BadDims(f"{kind} needs {want[kind]} positive dims, got {dims}")
    if kind == "triangle_chain":
        g = _triangle_chain(dims[0])
    elif kind == "square_grid":
        g = nx.grid_2d_graph(*dims)
    elif kind == "square_lattice":
        g = nx.grid_2d_graph(dims[0] + 1, dims[1] + 1)
    else:
        g = _heavy_hex(*dims)
    g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    return CouplingGraph(kind, dims, g)


def path_coupling(n: int) -> CouplingGraph:
    return CouplingGraph("path", (n,), nx.path_graph(n))


@dataclass
class Placement:
    assignment: dict[int, int]
    swap_count: int
    swap_schedule: list[tuple[int, Gate]]
    final_assignment: dict[int, int]
    routed: Circuit
    method: str
    swap_steps: list[tuple[int, int, int]] = field(default_factory=list)
    ccx_count: int = 0
    cx_count: int = 0

    @property
    def native_cx_estimate(self) -> int:
        """CX count if every CCX used the 6-CX template and every SWAP 3 CX."""
        return TEMPLATE_CX * self.ccx_count + self.cx_count + 3 * self.swap_count

    def table(self) -> str:
        lines = ["logical\tinitial\tfinal"]
        for q in sorted(self.assignment):
            lines.append(f"{q}\t{self.assignment[q]}\t{self.final_assignment[q]}")
        return "\n".join(lines) + "\n"


def _pair_steps(circuit: Circuit) -> list[tuple[int, tuple[int, int]]]:
    steps = []
    for gi, g in enumerate(circuit.gates):
        if g.kind is GateKind.CCX:
            c1, c2, t = g.operands
            for p in ((c2, t), (c1, t), (c2, t), (c1, t), (c1, c2), (c1, c2)):
                steps.append((gi, p))
        elif g.kind in (GateKind.CX, GateKind.SWAP):
            steps.append((gi, tuple(g.operands)))
    return steps


class _Router:
    def __init__(self, circuit: Circuit, coupling: CouplingGraph):
        if circuit.num_qubits > coupling.num_vertices:
            raise NotEnoughQubits(f"{circuit.num_qubits} logical qubits, "
                                  f"{coupling.num_vertices} physical")
        self.circuit = circuit
        self.coupling = coupling
        self.active = sorted({q for g in circuit.gates for q in g.operands})
        self.slot = {q: i for i, q in enumerate(self.active)}
        self.steps = [(gi, (self.slot[a], self.slot[b])) for gi, (a, b) in _pair_steps(circuit)]
        nv = coupling.num_vertices
        self.adj = np.zeros((nv, nv), dtype=bool)
        for u, v in coupling.graph.edges:
            self.adj[u, v] = self.adj[v, u] = True
        self.edges = [tuple(e) for e in coupling.graph.edges]
        self.dist = dict(nx.all_pairs_shortest_path_length(coupling.graph))

    def advance(self, step: int, pos: tuple[int, ...]) -> int:
        # executing an adjacent pair right away never hurts, so saturate
        adj = self.adj
        while step < len(self.steps):
            a, b = self.steps[step][1]
            if not adj[pos[a], pos[b]]:
                break
            step += 1
        return step

    @staticmethod
    def swap_pos(pos: tuple[int, ...], u: int, v: int) -> tuple[int, ...] | None:
        moved, out = False, list(pos)
        for i, p in enumerate(pos):
            if p == u:
                out[i], moved = v, True
            elif p == v:
                out[i], moved = u, True
        return tuple(out) if moved else None

    def exhaustive(self, budget: int) -> tuple[tuple[int, ...], list]:
        """Breadth-first over (step, positions); the first finished state has minimal SWAPs."""
        nv, na, end = self.coupling.num_vertices, len(self.active), len(self.steps)
        seen, frontier = {}, []
        for pos in itertools.permutations(range(nv), na):
            state = (self.advance(0, pos), pos)
            if state in seen:
                continue
            seen[state] = (None, None)
            if state[0] == end:
                return self._unwind(state, seen)
            frontier.append(state)
            if len(seen) > budget:
                raise SearchBudgetExceeded(f"more than {budget} states")
        while frontier:
            nxt = []
            for state in frontier:
                step, pos = state
                for u, v in self.edges:
                    moved = self.swap_pos(pos, u, v)
                    if moved is None:
                        continue
                    child = (self.advance(step, moved), moved)
                    if child in seen:
                        continue
                    seen[child] = (state, (step, u, v))
                    if child[0] == end:
                        return self._unwind(child, seen)
                    nxt.append(child)
                if len(seen) > budget:
                    raise SearchBudgetExceeded(f"more than {budget} states")
            frontier = nxt
        raise LayoutError("coupling graph is disconnected for this circuit")

    @staticmethod
    def _unwind(state, seen):
        swaps = []
        while seen[state][0] is not None:
            parent, move = seen[state]
            swaps.append(move)
            state = parent
        return state[1], swaps[::-1]

    def greedy(self) -> tuple[tuple[int, ...], list]:
        """Fixed start; walk pairs together along shortest paths. Two step policies, keep the cheaper."""
        runs = [self._walk(lookahead) for lookahead in (False, True)]
        return min(runs, key=lambda run: len(run[1]))

    def _walk(self, lookahead: bool) -> tuple[tuple[int, ...], list]:
        start = self._greedy_assignment()
        pos, swaps, step = tuple(start), [], 0
        graph = self.coupling.graph
        while True:
            step = self.advance(step, pos)
            if step == len(self.steps):
                return start, swaps
            a, b = self.steps[step][1]
            moves = [tuple(nx.shortest_path(graph, pos[a], pos[b])[:2])]
            if lookahead:
                # also try stepping the other endpoint; keep whichever leaves
                # the next few pairs closest
                moves.append(tuple(nx.shortest_path(graph, pos[b], pos[a])[:2]))
            u, v = min(moves, key=lambda mv: (self._lookahead(step, self.swap_pos(pos, *mv)), mv))
            swaps.append((step, u, v))
            pos = self.swap_pos(pos, u, v)

    def _lookahead(self, step: int, pos: tuple[int, ...], window: int = 6) -> int:
        return sum(self.dist[pos[a]][pos[b]] for _, (a, b) in self.steps[step:step + window])

    def _greedy_assignment(self) -> tuple[int, ...]:
        req = requirement_graph(self.circuit).to_networkx()
        graph = self.coupling.graph
        centre = min(graph.nodes, key=lambda v: (sum(self.dist[v].values()), v))
        order = [centre] + [v for _, v in nx.bfs_edges(graph, centre)]
        logical = []
        if req.number_of_nodes():
            root = max(req.nodes, key=lambda q: (req.degree[q], -q))
            logical = [root] + [v for _, v in nx.bfs_edges(req, root)]
        logical += sorted(set(self.active) - set(logical))
        pos = [0] * len(self.active)
        for q, v in zip(logical, order):
            pos[self.slot[q]] = v
        return tuple(pos)


def place_and_route(circuit: Circuit, coupling: CouplingGraph, method: str = "auto",
                    budget: int = DEFAULT_STATE_BUDGET) -> Placement:
    """Injective placement plus SWAP schedule; exact minimum for small circuits."""
    router = _Router(circuit, coupling)
    if method == "auto":
        method = "exhaustive" if circuit.num_qubits <= EXHAUSTIVE_MAX_LOGICAL else "greedy"
    if method == "exhaustive":
        try:
            start, swaps = router.exhaustive(budget)
        except SearchBudgetExceeded:
            method = "greedy"
            start, swaps = router.greedy()
    elif method == "greedy":
        start, swaps = router.greedy()
    else:
        raise ValueError(f"unknown routing method {method!r}")
    return _build_placement(router, start, swaps, method)


def _build_placement(router: _Router, start, swaps, method: str) -> Placement:
    circuit, coupling = router.circuit, router.coupling
    nv = coupling.num_vertices
    assignment = {q: start[router.slot[q]] for q in router.active}
    free = [v for v in range(nv) if v not in assignment.values()]
    for q in range(circuit.num_qubits):
        if q not in assignment:
            assignment[q] = free.pop(0)
    # phys[v] = logical qubit currently on vertex v (or None)
    phys = {v: None for v in range(nv)}
    for q, v in assignment.items():
        phys[v] = q
    where = dict(assignment)
    last_step = {}
    for i, (gi, _) in enumerate(router.steps):
        last_step[gi] = i
    pending = deque(swaps)
    gates, schedule = [], []

    def do_swap(u, v):
        gates.append(SWAP(u, v))
        schedule.append((len(gates) - 1, SWAP(u, v)))
        phys[u], phys[v] = phys[v], phys[u]
        for w in (u, v):
            if phys[w] is not None:
                where[phys[w]] = w

    for gi, g in enumerate(circuit.gates):
        if gi in last_step:
            while pending and pending[0][0] <= last_step[gi]:
                _, u, v = pending.popleft()
                do_swap(u, v)
        gates.append(Gate(g.kind, tuple(where[q] for q in g.operands)))
    while pending:
        _, u, v = pending.popleft()
        do_swap(u, v)
    reg = tuple(QubitId(v, "auxiliary", f"p{v}") for v in range(nv))
    return Placement(
        assignment={q: assignment[q] for q in range(circuit.num_qubits)},
        swap_count=len(schedule),
        swap_schedule=schedule,
        final_assignment={q: where[q] for q in range(circuit.num_qubits)},
        routed=Circuit(reg, tuple(gates)),
        method=method,
        swap_steps=list(swaps),
        ccx_count=circuit.count(GateKind.CCX),
        cx_count=circuit.count(GateKind.CX),
    )


def check_adjacency(placement: Placement, circuit: Circuit, coupling: CouplingGraph) -> bool:
    """Replay the schedule: every SWAP and every template pair must sit on a coupling edge."""
    adj = coupling.adjacency
    where = dict(placement.assignment)
    phys = {v: q for q, v in where.items()}
    pending = deque(placement.swap_steps)
    steps = _pair_steps(circuit)
    for i in range(len(steps) + 1):
        while pending and pending[0][0] <= i:
            _, u, v = pending.popleft()
            if frozenset((u, v)) not in adj:
                return False
            a, b = phys.get(u), phys.get(v)
            phys[u], phys[v] = b, a
            for q, w in ((a, v), (b, u)):
                if q is not None:
                    where[q] = w
        if i < len(steps):
            x, y = steps[i][1]
            if frozenset((where[x], where[y])) not in adj:
                return False
    return where == placement.final_assignment


def routed_equivalent(circuit: Circuit, placement: Placement, max_qubits: int = 20) -> bool:
    """``routed == relabel_final . original . relabel_initial^-1`` on every physical basis state."""
    routed = placement.routed
    nv = routed.num_qubits
    if nv > max_qubits:
        raise LayoutError(f"{nv} physical qubits is too many for exhaustive equivalence")
    states = np.arange(2**nv, dtype=np.uint64)
    got = run_states(routed, states)
    # the SWAP-only skeleton carries idle vertices along
    skeleton = Circuit(routed.qubits, tuple(g for g in routed.gates if g.kind is GateKind.SWAP))
    moved = run_states(skeleton, states)
    logical = np.zeros_like(states)
    for q, v in placement.assignment.items():
        logical |= ((states >> np.uint64(v)) & np.uint64(1)) << np.uint64(q)
    after = run_states(circuit, logical)
    expect = moved.copy()
    for q, v in placement.final_assignment.items():
        bit = (after >> np.uint64(q)) & np.uint64(1)
        expect = (expect & ~np.uint64(1 << v)) | (bit << np.uint64(v))
    return bool(np.array_equal(got, expect))


def shared_requirement_circuits() -> tuple[Circuit, Circuit]:
    """The two five-qubit circuits (a, b, c, d, e = 0..4) sharing one connectivity requirement.

    First: backslash ``CCX(a,b,c) CCX(c,d,e)``; second: V-shape, the same plus ``CCX(a,b,c)``.
    """
    reg = tuple(QubitId(i, "auxiliary", name) for i, name in enumerate("abcde"))
    back = Circuit(reg, (CCX(0, 1, 2), CCX(2, 3, 4)))
    vee = Circuit(reg, (CCX(0, 1, 2), CCX(2, 3, 4), CCX(0, 1, 2)))
    return back, vee
