import random

from hypothesis import strategies as st

from stesso.circuit import CCX, CX, SWAP, X, Circuit, Gate


def naive_apply(circuit, bits):
    """Gate-by-gate bit-list interpreter, kept free of the numpy simulator."""
    bits = list(bits)
    for g in circuit.gates:
        ops = g.operands
        if g.kind.value == "x":
            bits[ops[0]] ^= 1
        elif g.kind.value == "cx":
            bits[ops[1]] ^= bits[ops[0]]
        elif g.kind.value == "ccx":
            bits[ops[2]] ^= bits[ops[0]] & bits[ops[1]]
        else:
            bits[ops[0]], bits[ops[1]] = bits[ops[1]], bits[ops[0]]
    return bits


@st.composite
def gates(draw, width, kinds=("x", "cx", "ccx", "swap")):
    kind = draw(st.sampled_from(kinds))
    arity = {"x": 1, "cx": 2, "ccx": 3, "swap": 2}[kind]
    if arity > width:
        kind, arity = "x", 1
    ops = draw(st.permutations(range(width)))[:arity]
    return Gate(kind, tuple(ops))


@st.composite
def circuits(draw, min_width=1, max_width=6, max_gates=25, kinds=("x", "cx", "ccx", "swap")):
    width = draw(st.integers(min_width, max_width))
    gs = draw(st.lists(gates(width, kinds), max_size=max_gates))
    return Circuit.on(width, gs)


def random_circuit(width, n_gates, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(n_gates):
        ops = rng.sample(range(width), min(3, width))
        out.append(rng.choice([X(ops[0])] + ([CX(*ops[:2]), SWAP(*ops[:2])] if width > 1 else [])
                              + ([CCX(*ops)] if width > 2 else [])))
    return Circuit.on(width, out)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
