"""Meet-in-the-middle search: is there a 6-gate C^4X on 6 wires with one dirty support?

Gates are all mixed-polarity CCX (240 of them on 6 wires). A dirty-support MCX must
equal the exact permutation ``T: t ^= c1 c2 c3 c4`` with every other wire restored.
X gates anywhere in the circuit can be pushed to the end (they flip control
polarities on the way), so any CCX+X circuit is a mixed-polarity CCX word
followed by one X layer. Normalizing every permutation by the image of the
all-zero state removes that layer, and we look for words ``B . A`` with
``A, B`` drawn from the 3-gate products and ``norm(B) = norm(T . A^-1)``.

Run: python3 scripts/c4x_six_gate_search.py
"""
import itertools
import time

import numpy as np

Q = 6
IDX = np.arange(1 << Q)


def ccx(a, b, c, pa, pb):
    va = ((IDX >> a) & 1) ^ pa
    vb = ((IDX >> b) & 1) ^ pb
    return (IDX ^ ((va & vb) << c)).astype(np.uint8)


def all_gates():
    out = []
    for c in range(Q):
        for a, b in itertools.combinations([q for q in range(Q) if q != c], 2):
            for pa, pb in itertools.product((0, 1), repeat=2):
                out.append(ccx(a, b, c, pa, pb))
    return out


def extend(level, gates):
    out = {}
    for p in level.values():
        for g in gates:
            q = g[p]
            out.setdefault(q.tobytes(), q)
    return out


def norm(p):
    return p ^ p[0]


def main():
    t0 = time.time()
    gates = all_gates()
    fire = ((IDX & 0b1111) == 0b1111).astype(int)
    target = (IDX ^ (fire << 5)).astype(np.uint8)
    l1 = {g.tobytes(): g for g in gates}
    l2 = extend(l1, gates)
    l3 = extend(l2, gates)
    print(f"gates={len(gates)} words2={len(l2)} words3={len(l3)}")
    right = {norm(p).tobytes() for p in l3.values()}
    for p in l3.values():
        inv = np.empty_like(p)
        inv[p] = np.arange(p.size, dtype=np.uint8)
        if norm(target[inv]).tobytes() in right:
            print("found a 6-CCX realization")
            return 1
    print(f"no 6-CCX realization exists, with or without X gates ({time.time() - t0:.1f}s)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
