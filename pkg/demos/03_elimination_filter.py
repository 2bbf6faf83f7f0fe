"""Eigenvalue-modulus filter over an inventory of algebraic solutions.

A unit multiple of a unitary matrix has all eigenvalue moduli equal, so
any candidate whose spectrum has two distinct moduli can never be scaled
and conjugated into a unitary solution.  Running the filter over random
parameter draws of eleven known 4x4 algebraic solutions eliminates
exactly one of them.
"""

from __future__ import annotations

import numpy as np

from ybe4 import eigenvalues, hietarinta_candidates, run_elimination


def main():
    table = run_elimination(samples=300, seed=1)
    eliminated = table.pop("eliminated")
    print(f"{'candidate':10s} {'attempts':>8s} {'passes':>7s} {'rate':>6s}")
    for name in sorted(table):
        row = table[name]
        print(
            f"{name:10s} {row['attempts']:8d} {row['passes']:7d} "
            f"{row['pass_rate']:6.0%}"
        )
    print(f"\neliminated: {eliminated}")

    # the one elimination, at a spot value: p = 1, q = 2
    rep = next(c for c in hietarinta_candidates() if c.name == "R11")
    M = rep.build(p=1.0, q=2.0)
    moduli = sorted(np.abs(eigenvalues(M)))
    print(
        f"R11(p=1, q=2) eigenvalue moduli: {moduli[0]:.0f} and {moduli[-1]:.0f} "
        f"(ratio {moduli[-1]/moduli[0]:.0f}) -- no rescaling can flatten that"
    )


if __name__ == "__main__":
    main()
