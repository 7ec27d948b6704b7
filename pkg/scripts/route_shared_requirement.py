"""Route the two five-qubit shaped circuits onto each coupling kind.

    python3 scripts/route_shared_requirement.py
"""
import time

from stesso.layout import (check_adjacency, shared_requirement_circuits, make_coupling, place_and_route,
                           requirement_graph, routed_equivalent)

COUPLINGS = [("triangle_chain", (2,)), ("square_lattice", (1, 2)), ("square_grid", (3, 3)),
             ("heavy_hex", (1, 1))]


def main():
    back, vee = shared_requirement_circuits()
    print("requirement edges:", requirement_graph(vee).sorted_edges())
    print("identical requirement:", requirement_graph(back) == requirement_graph(vee))
    print("coupling\tcircuit\tmethod\tswaps\tnative_cx\tequivalent\tseconds")
    for kind, dims in COUPLINGS:
        coupling = make_coupling(kind, dims)
        for name, circ in (("backslash", back), ("V", vee)):
            for method in ("exhaustive", "greedy"):
                t0 = time.time()
                p = place_and_route(circ, coupling, method)
                ok = check_adjacency(p, circ, coupling) and routed_equivalent(circ, p)
                print(f"{kind}{dims}\t{name}\t{p.method}\t{p.swap_count}\t"
                      f"{p.native_cx_estimate}\t{ok}\t{time.time() - t0:.2f}")


if __name__ == "__main__":
    main()
