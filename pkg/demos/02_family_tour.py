"""One member of each of the five unitary solution families.

Every unitary braided solution is k (Q x Q) R (Q x Q)^-1 T for a unit
scalar k, an invertible 2x2 conjugator Q, and a base pattern R drawn from
a short list: a diagonal of unit phases, an anti-diagonal pattern (with
either a free or a Gram-diagonal Q), a fixed Hadamard-like matrix, or the
identity.  The conjugate is unitary exactly when the Gram data of Q fits
the pattern, so sampling specs inside those constraints yields unitary
solutions by construction.
"""

from __future__ import annotations

import numpy as np

from ybe4 import (
    FAMILY_NAMES,
    braided_residual,
    family_member,
    gram,
    is_unitary,
    random_family_spec,
)

BLURB = {
    "F1": "diagonal phases (1, p, q, r), Gram-diagonal Q",
    "F2": "anti-diagonal corners, free Q (corners forced by the Gram data)",
    "F3": "anti-diagonal corners, Gram-diagonal Q (free phases, forced moduli)",
    "F4": "Hadamard-like pattern, Gram-diagonal Q with |a| = |d|",
    "F5": "unit multiples of the identity",
}


def main():
    rng = np.random.default_rng(7)
    print(f"{'family':6s}  {'unitarity':>10s}  {'residual':>10s}  |Gram z|")
    for family in FAMILY_NAMES:
        spec = random_family_spec(family, rng)
        M = family_member(spec)
        _, defect = is_unitary(M)
        residual = braided_residual(M)
        z = abs(gram(spec.Q).z)
        print(f"{family:6s}  {defect:10.2e}  {residual:10.2e}  {z:8.2e}")
        print(f"        {BLURB[family]}")
    print()
    print("members of the scalar family are literally k I:")
    spec = random_family_spec("F5", rng)
    M = family_member(spec)
    print(f"  k = {M[0, 0]:.6f}, off-diagonal mass {np.abs(M - M[0,0]*np.eye(4)).max():.2e}")


if __name__ == "__main__":
    main()
