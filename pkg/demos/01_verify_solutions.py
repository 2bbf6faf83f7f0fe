"""Verify candidate matrices against both forms of the equation.

A matrix R acting on C^2 (x) C^2 is a braided solution when

    (R x I)(I x R)(R x I) = (I x R)(R x I)(I x R)

and an algebraic solution when R12 R13 R23 = R23 R13 R12.  The two forms
are exchanged by composing with the swap.  Residuals come from two
independent evaluation routes: dense 64x64 embeddings, and a direct sum
over tensor indices.
"""

from __future__ import annotations

import numpy as np

from ybe4 import (
    algebraic_residual,
    braided_residual,
    compose_with_swap,
    contraction_residual,
    swap_matrix,
)

HADA = np.array(
    [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1, -1, 0],
        [-1, 0, 0, 1],
    ],
    dtype=complex,
) / np.sqrt(2)


def report(name, M):
    rows = []
    for form, residual in (
        ("braided", braided_residual(M)),
        ("algebraic", algebraic_residual(M)),
    ):
        index_route = contraction_residual(M, form=form)
        rows.append(f"  {form:9s}  embedding {residual:9.2e}  contraction {index_route:9.2e}")
    print(f"{name}:")
    print("\n".join(rows))


def main():
    swap = swap_matrix(2)
    report("identity", np.eye(4, dtype=complex))
    report("swap", swap.astype(complex))

    # the scaled Hadamard-like matrix solves the algebraic form;
    # composing with the swap moves it to the braided form
    report("hadamard-like", HADA)
    report("hadamard-like * swap", compose_with_swap(HADA))

    rng = np.random.default_rng(0)
    noise = (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))) / 2
    report("random matrix", noise)
    print("\nrandom matrices fail both forms; structured ones pass exactly one,")
    print("or both when they also commute with the swap.")


if __name__ == "__main__":
    main()
