"""Dense complex matrix kernel used throughout the package.

Everything here operates on small (dim <= 8) complex matrices stored as
``numpy.ndarray`` with dtype complex128.  Matrix products, Kronecker
products and norms defer to numpy; inversion, characteristic polynomials
and eigenvalues are computed by explicit small-scale algorithms so their
failure modes (singular pivots, stalled iterations) surface as typed
errors instead of silent garbage.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence, SingularMatrix

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "as_square",
    "kron",
    "dagger",
    "frobenius",
    "inverse",
    "char_poly",
    "eigenvalues",
    "is_unitary",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds used by checks in this package.

    eq_tol        entrywise equality comparisons
    residual_tol  Frobenius-norm residual checks (unitarity, YBE)
    singular_tol  relative pivot threshold for declaring a matrix singular
    """

    eq_tol: float = 1e-9
    residual_tol: float = 1e-9
    singular_tol: float = 1e-6


DEFAULT_TOL = Tolerance()


def as_square(obj) -> np.ndarray:
    """Coerce to a square complex128 array, rejecting non-finite entries."""
    A = np.asarray(obj, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix contains non-finite entries")
    return A


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product A (x) B with the row-major block convention.

    Entry ((i,k),(j,l)) equals A[i,j] * B[k,l], rows and columns indexed
    by the composite index i*dim(B)+k.
    """
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def dagger(A: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(A, dtype=complex).conj().T


def frobenius(A: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(np.asarray(A)))


def inverse(A: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Matrix inverse by Gauss-Jordan elimination with partial pivoting.

    Raises SingularMatrix when the best available pivot falls below
    ``tol.singular_tol`` relative to the magnitude of the input.
    """
    A = as_square(A)
    n = A.shape[0]
    scale = np.abs(A).max()
    if scale == 0.0:
        raise SingularMatrix("zero matrix has no inverse")
    aug = np.hstack([A.copy(), np.eye(n, dtype=complex)])
    for col in range(n):
        piv_row = col + int(np.argmax(np.abs(aug[col:, col])))
        piv = aug[piv_row, col]
        if abs(piv) <= tol.singular_tol * scale:
            raise SingularMatrix(
                f"pivot {abs(piv):.3e} below threshold {tol.singular_tol * scale:.3e} "
                f"in column {col}"
            )
        if piv_row != col:
            aug[[col, piv_row]] = aug[[piv_row, col]]
        aug[col] /= aug[col, col]
        for row in range(n):
            if row != col and aug[row, col] != 0:
                aug[row] -= aug[row, col] * aug[col]
    return np.ascontiguousarray(aug[:, n:])


def char_poly(A: np.ndarray) -> tuple[complex, ...]:
    """Characteristic polynomial det(lambda*I - A) by the Faddeev-LeVerrier recursion.

    Returns monic coefficients in descending powers, so a dim-4 input
    yields five numbers (1, c3, c2, c1, c0).
    """
    A = as_square(A)
    n = A.shape[0]
    eye = np.eye(n, dtype=complex)
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    M = np.zeros((n, n), dtype=complex)
    for k in range(1, n + 1):
        M = A @ M + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(A @ M) / k
    return tuple(coeffs)


def _poly_eval(coeffs: np.ndarray, z: complex) -> tuple[complex, complex]:
    """Horner evaluation of p(z) and p'(z) for descending coefficients."""
    p = coeffs[0]
    dp = 0.0 + 0.0j
    for c in coeffs[1:]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _roots_quadratic(b: complex, c: complex) -> tuple[complex, complex]:
    """Roots of z^2 + b z + c, computed with the cancellation-safe product form."""
    disc = np.sqrt(b * b - 4.0 * c + 0j)
    # pick the sign that avoids subtracting nearly equal quantities
    if (np.conj(b) * disc).real > 0:
        disc = -disc
    r1 = (-b + disc) / 2.0
    if r1 == 0:
        return r1, -b - r1
    return r1, c / r1


def _qr_sweep(B: np.ndarray, mu: complex) -> np.ndarray:
    """One explicit shifted QR step on a Hessenberg block: B - mu*I = QR, return RQ + mu*I."""
    m = B.shape[0]
    W = B - mu * np.eye(m)
    rot: list[tuple[complex, complex]] = []
    for j in range(m - 1):
        x, y = W[j, j], W[j + 1, j]
        nrm = np.hypot(abs(x), abs(y))
        if nrm == 0.0:
            cs, sn = 1.0 + 0j, 0.0 + 0j
        else:
            cs, sn = x / nrm, y / nrm
        rot.append((cs, sn))
        top = np.conj(cs) * W[j, j:] + np.conj(sn) * W[j + 1, j:]
        bot = -sn * W[j, j:] + cs * W[j + 1, j:]
        W[j, j:], W[j + 1, j:] = top, bot
    for j, (cs, sn) in enumerate(rot):
        left = W[:, j] * cs + W[:, j + 1] * sn
        right = -W[:, j] * np.conj(sn) + W[:, j + 1] * np.conj(cs)
        W[:, j], W[:, j + 1] = left, right
    return W + mu * np.eye(m)


def _qr_eigenvalues(H: np.ndarray, max_sweeps: int) -> list[complex]:
    """Eigenvalues of an upper Hessenberg matrix by shifted complex QR iteration.

    Uses the Wilkinson shift (eigenvalue of the trailing 2x2 block closest
    to the corner entry), an occasional exceptional shift to break cycles,
    and deflates converged 1x1 and 2x2 blocks.
    """
    H = H.astype(complex).copy()
    n = H.shape[0]
    eigs: list[complex] = []
    hi = n
    sweeps = 0
    stuck = 0
    while hi > 0:
        if hi == 1:
            eigs.append(H[0, 0])
            break
        lo = hi - 1
        while lo > 0:
            if abs(H[lo, lo - 1]) <= 1e-14 * (
                abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            ):
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi - 1:
            eigs.append(H[hi - 1, hi - 1])
            hi -= 1
            stuck = 0
            continue
        if lo == hi - 2:
            a, b = H[hi - 2, hi - 2], H[hi - 2, hi - 1]
            c, d = H[hi - 1, hi - 2], H[hi - 1, hi - 1]
            r1, r2 = _roots_quadratic(-(a + d), a * d - b * c)
            eigs.extend([r1, r2])
            hi -= 2
            stuck = 0
            continue
        if sweeps >= max_sweeps:
            raise NonConvergence(
                f"QR iteration did not deflate within {max_sweeps} sweeps"
            )
        sweeps += 1
        stuck += 1
        if stuck % 12 == 0:
            # exceptional shift: eigenvalue symmetry can trap the Wilkinson shift
            mu = H[hi - 1, hi - 1] + 0.75 * abs(H[hi - 1, hi - 2]) * (1 + 0.3j)
        else:
            a, b = H[hi - 2, hi - 2], H[hi - 2, hi - 1]
            c, d = H[hi - 1, hi - 2], H[hi - 1, hi - 1]
            r1, r2 = _roots_quadratic(-(a + d), a * d - b * c)
            mu = r1 if abs(r1 - d) <= abs(r2 - d) else r2
        H[lo:hi, lo:hi] = _qr_sweep(H[lo:hi, lo:hi], mu)
    return eigs


# Computed roots of an m-fold eigenvalue scatter in a ring of radius about
# eps**(1/m); the per-multiplicity radii below bound that scatter while
# staying far smaller than any genuine eigenvalue separation we care about.
_CLUSTER_RADIUS = {2: 5e-6, 3: 5e-4, 4: 8e-3}


def _cluster_allowance(m: int) -> float:
    return _CLUSTER_RADIUS.get(m, 2e-2)


def _poly_derivative(coeffs: np.ndarray, order: int) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    for _ in range(order):
        deg = len(c) - 1
        c = c[:-1] * np.arange(deg, 0, -1)
    return c


def _merge_root_clusters(roots: list[complex], coeffs: np.ndarray) -> list[complex]:
    """Replace scattered multiple-root clusters by one refined value.

    Individual computed roots of an m-fold eigenvalue are only accurate to
    eps**(1/m).  An m-fold root of p is a simple root of the (m-1)-th
    derivative, so Newton iteration on that derivative starting from the
    cluster mean recovers it to near machine precision.
    """
    from itertools import combinations

    n = len(roots)
    used = [False] * n
    out: list[complex] = []
    for m in range(n, 1, -1):
        free = [i for i in range(n) if not used[i]]
        for combo in combinations(free, m):
            if any(used[i] for i in combo):
                continue
            vals = [roots[i] for i in combo]
            mu = sum(vals) / m
            diam = max(abs(u - v) for u in vals for v in vals)
            allow = _cluster_allowance(m) * (1.0 + abs(mu))
            if diam > allow:
                continue
            q = _poly_derivative(coeffs, m - 1)
            z = mu
            for _ in range(50):
                val, dval = _poly_eval(q, z)
                if dval == 0:
                    break
                step = val / dval
                z = z - step
                if abs(step) <= 1e-16 * (1.0 + abs(z)):
                    break
            if abs(z - mu) > allow:
                z = mu
            for i in combo:
                used[i] = True
            out.extend([z] * m)
    out.extend(roots[i] for i in range(n) if not used[i])
    return out


def eigenvalues(A: np.ndarray, max_sweeps: int = 500) -> np.ndarray:
    """Eigenvalues of a small complex matrix.

    The characteristic polynomial (Faddeev-LeVerrier) is rooted through its
    companion matrix with a shifted QR iteration; dim 2 falls back to the
    closed-form quadratic.  Roots get a short Newton polish, near-coincident
    clusters are averaged (see _merge_root_clusters), and every root must
    satisfy |p(root)| <= 1e-8 relative to the polynomial's term magnitudes.
    """
    A = as_square(A)
    n = A.shape[0]
    if n == 1:
        return A.reshape(1).copy()
    coeffs = np.asarray(char_poly(A))
    if n == 2:
        roots = list(_roots_quadratic(coeffs[1], coeffs[2]))
    else:
        companion = np.zeros((n, n), dtype=complex)
        companion[1:, :-1] = np.eye(n - 1)
        companion[:, -1] = -coeffs[1:][::-1]
        roots = _qr_eigenvalues(companion, max_sweeps)
    polished = []
    for z in roots:
        for _ in range(2):
            p, dp = _poly_eval(coeffs, z)
            if dp != 0:
                step = p / dp
                if abs(step) < 1.0 + abs(z):
                    znew = z - step
                    pnew, _ = _poly_eval(coeffs, znew)
                    if abs(pnew) < abs(p):
                        z = znew
        polished.append(z)
    merged = _merge_root_clusters(polished, coeffs)
    for z in merged:
        p, _ = _poly_eval(coeffs, z)
        scale = sum(abs(c) * max(1.0, abs(z)) ** (n - i) for i, c in enumerate(coeffs))
        if abs(p) > 1e-8 * scale:
            raise NonConvergence(
                f"root residual {abs(p):.3e} exceeds 1e-8 * {scale:.3e}"
            )
    return np.asarray(merged)


def is_unitary(A: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Whether A†A = I within tol; returns (verdict, Frobenius defect)."""
    A = as_square(A)
    n = A.shape[0]
    defect = frobenius(dagger(A) @ A - np.eye(n))
    return defect <= tol.residual_tol * n, defect
