"""Which solution families make entangling two-qubit gates?

A unitary braided solution is a two-qubit gate.  It is non-entangling
exactly when it maps every product state to a product state, which
happens exactly when it is a product of local gates, possibly composed
with the swap.  Scalars (F5), the swap itself, and anything locally
equivalent to them are inert; the Hadamard-like family is entangling,
with an explicit witness state.
"""

from __future__ import annotations

import numpy as np

from ybe4 import classify, family_member, is_entangling_gate, random_family_spec, swap_matrix

HADA = np.array(
    [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1, -1, 0],
        [-1, 0, 0, 1],
    ],
    dtype=complex,
) / np.sqrt(2)


def show(name, G):
    result = classify(G)
    gate = is_entangling_gate(G)
    verdict = "entangling" if gate.entangling else "non-entangling"
    print(f"{name:22s} family {result.family}  {verdict}")
    if gate.witness is not None:
        state = gate.witness.state.vec
        out = G @ state
        det = abs(out[0] * out[3] - out[1] * out[2])
        amps = ", ".join(f"{z:.3f}" for z in state)
        print(f"{'':22s} witness ({amps}) -> output pair determinant {det:.3f}")


def main():
    swap = swap_matrix(2).astype(complex)
    show("identity", np.eye(4, dtype=complex))
    show("swap", swap)
    show("hadamard-like * swap", HADA @ swap)

    rng = np.random.default_rng(5)
    show("random scalar member", family_member(random_family_spec("F5", rng)))
    show("random diagonal member", family_member(random_family_spec("F1", rng)))

    # the verdict is a local invariant: conjugating by U (x) V changes nothing
    A = np.linalg.qr((rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))))[0]
    B = np.linalg.qr((rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))))[0]
    L = np.kron(A, B)
    G = L @ (HADA @ swap) @ np.conj(L.T)
    print(f"\nlocally conjugated hadamard-like member still entangling: "
          f"{is_entangling_gate(G, witness=False).entangling}")


if __name__ == "__main__":
    main()
