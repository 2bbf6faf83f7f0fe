"""Yang-Baxter residuals, the swap correspondence, and braid group images.

Two forms of the equation appear for an operator on a two-fold tensor
product.  With R acting on C^d (x) C^d and I the identity on one factor:

  braided    (R (x) I)(I (x) R)(R (x) I) = (I (x) R)(R (x) I)(I (x) R)
  algebraic  R12 R13 R23 = R23 R13 R12

where Rab acts as R on tensor slots a,b of a three-fold product and as the
identity on the remaining slot.  The two forms are exchanged by composing
with the swap operator: M satisfies the algebraic form exactly when M P
satisfies the braided form, with P the swap.

Matrix convention: entry R[d*a+b, d*i+j] is the coefficient of basis vector
e_a (x) e_b in the image of e_i (x) e_j, i.e. upper indices label rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrix, SizeExceeded
from .linalg import as_square, frobenius, inverse, kron

__all__ = [
    "swap_matrix",
    "braided_residual",
    "algebraic_residual",
    "is_braided_solution",
    "is_algebraic_solution",
    "contraction_residual",
    "compose_with_swap",
    "BraidWord",
    "braid_rep",
]


def swap_matrix(d: int = 2) -> np.ndarray:
    """The operator P(u (x) v) = v (x) u on C^d (x) C^d."""
    P = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            P[j * d + i, i * d + j] = 1.0
    return P


def _split_dim(R: np.ndarray) -> int:
    n = R.shape[0]
    d = round(n ** 0.5)
    if d * d != n:
        raise ValueError(f"matrix of size {n} is not an operator on a tensor square")
    return d


def braided_residual(R: np.ndarray) -> float:
    """Frobenius norm of (R(x)I)(I(x)R)(R(x)I) - (I(x)R)(R(x)I)(I(x)R)."""
    R = as_square(R)
    d = _split_dim(R)
    eye = np.eye(d, dtype=complex)
    L = kron(R, eye)
    M = kron(eye, R)
    return frobenius(L @ M @ L - M @ L @ M)


def _algebraic_embeddings(R: np.ndarray, d: int):
    eye = np.eye(d, dtype=complex)
    P = swap_matrix(d)
    R12 = kron(R, eye)
    R23 = kron(eye, R)
    mid = kron(eye, P)
    R13 = mid @ R12 @ mid
    return R12, R13, R23


def algebraic_residual(R: np.ndarray) -> float:
    """Frobenius norm of R12 R13 R23 - R23 R13 R12."""
    R = as_square(R)
    d = _split_dim(R)
    R12, R13, R23 = _algebraic_embeddings(R, d)
    return frobenius(R12 @ R13 @ R23 - R23 @ R13 @ R12)


def is_braided_solution(R: np.ndarray, tol: float = 1e-9) -> bool:
    return braided_residual(R) <= tol


def is_algebraic_solution(R: np.ndarray, tol: float = 1e-9) -> bool:
    return algebraic_residual(R) <= tol


def contraction_residual(R: np.ndarray, form: str = "braided") -> float:
    """The same residuals computed from explicit index contractions.

    Written out in components without building the d^3 x d^3 embeddings,
    as an independent cross-check of the matrix route.  With the tensor
    accessor T[a,b,i,j] = R[d*a+b, d*i+j]:

    braided, coefficient of output (x,y,z) given input (i,j,k):
      lhs = sum_{a,b,c} T[a,b,i,j] T[c,z,b,k] T[x,y,a,c]
      rhs = sum_{m,n,p} T[n,p,j,k] T[x,m,i,n] T[y,z,m,p]

    algebraic:
      lhs = sum_{b,c,u} T[b,c,j,k] T[u,z,i,c] T[x,y,u,b]
      rhs = sum_{m,n,w} T[m,n,i,j] T[x,w,m,k] T[y,z,n,w]
    """
    R = as_square(R)
    d = _split_dim(R)
    T = R.reshape(d, d, d, d)
    rng = range(d)
    total = 0.0
    if form == "braided":
        for i in rng:
            for j in rng:
                for k in rng:
                    for x in rng:
                        for y in rng:
                            for z in rng:
                                lhs = sum(
                                    T[a, b, i, j] * T[c, z, b, k] * T[x, y, a, c]
                                    for a in rng
                                    for b in rng
                                    for c in rng
                                )
                                rhs = sum(
                                    T[n, p, j, k] * T[x, m, i, n] * T[y, z, m, p]
                                    for m in rng
                                    for n in rng
                                    for p in rng
                                )
                                total += abs(lhs - rhs) ** 2
    elif form == "algebraic":
        for i in rng:
            for j in rng:
                for k in rng:
                    for x in rng:
                        for y in rng:
                            for z in rng:
                                lhs = sum(
                                    T[b, c, j, k] * T[u, z, i, c] * T[x, y, u, b]
                                    for b in rng
                                    for c in rng
                                    for u in rng
                                )
                                rhs = sum(
                                    T[m, n, i, j] * T[x, w, m, k] * T[y, z, n, w]
                                    for m in rng
                                    for n in rng
                                    for w in rng
                                )
                                total += abs(lhs - rhs) ** 2
    else:
        raise ValueError(f"unknown form {form!r}, expected 'braided' or 'algebraic'")
    return float(np.sqrt(total))


def compose_with_swap(R: np.ndarray) -> np.ndarray:
    """R P, the bridge between the algebraic and braided forms."""
    R = as_square(R)
    d = _split_dim(R)
    return R @ swap_matrix(d)


@dataclass(frozen=True)
class BraidWord:
    """A word in braid group generators.

    letters holds (generator index, exponent) pairs; generator i acts on
    strands i, i+1 (1-based) and the exponent must be +1 or -1.  The empty
    word is the identity braid.
    """

    n_strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n_strands < 2:
            raise ValueError("a braid needs at least 2 strands")
        for idx, exp in self.letters:
            if not 1 <= idx <= self.n_strands - 1:
                raise ValueError(
                    f"generator index {idx} out of range for {self.n_strands} strands"
                )
            if exp not in (-1, 1):
                raise ValueError(f"exponent must be +1 or -1, got {exp}")


def braid_rep(R: np.ndarray, word: BraidWord, max_strands: int = 6) -> np.ndarray:
    """Image of a braid word when generator i maps to I^(i-1) (x) R (x) I^(n-1-i).

    The matrix acts on (C^d)^(x)n which grows as d^n, so n is capped at
    ``max_strands``.  Inverse letters require R to be invertible.
    """
    R = as_square(R)
    d = _split_dim(R)
    n = word.n_strands
    if n > max_strands:
        raise SizeExceeded(
            f"{n} strands needs a {d ** n} dimensional space (cap: {max_strands} strands)"
        )
    dim = d ** n
    out = np.eye(dim, dtype=complex)
    Rinv: np.ndarray | None = None
    for idx, exp in word.letters:
        if exp == 1:
            block = R
        else:
            if Rinv is None:
                try:
                    Rinv = inverse(R)
                except SingularMatrix as err:
                    raise SingularMatrix(
                        "braid word uses an inverse letter but R is singular"
                    ) from err
            block = Rinv
        gen = kron(
            np.eye(d ** (idx - 1), dtype=complex),
            kron(block, np.eye(d ** (n - 1 - idx), dtype=complex)),
        )
        out = out @ gen
    return out
