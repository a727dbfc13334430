"""Small fixed-shape linear algebra: E^4 vectors and the dense 3/5/6 systems.

Vectors and matrices are plain float64 ndarrays.  Nothing here is general
purpose on purpose: only the shapes the pipeline needs, with tight contracts.
"""

import numpy as np

from .errors import SingularMatrix

MAX_DIM = 6


def ternary_product(x, y, z):
    """Alternating trilinear product of three E^4 vectors.

    Cofactor expansion of the 4x4 determinant whose symbolic first row is the
    standard basis e1..e4 and whose remaining rows are x, y, z.  The result is
    orthogonal to all three arguments; degenerate inputs give the zero vector.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    out = np.empty(4)
    cols = (1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)
    sign = 1.0
    for j in range(4):
        a, b, c = cols[j]
        minor = (
            x[a] * (y[b] * z[c] - y[c] * z[b])
            - x[b] * (y[a] * z[c] - y[c] * z[a])
            + x[c] * (y[a] * z[b] - y[b] * z[a])
        )
        out[j] = sign * minor
        sign = -sign
    return out


def solve_linear(a, b, pivot_tol=1e-13):
    """Solve a @ x = b by Gaussian elimination with partial pivoting, n <= 6.

    Raises SingularMatrix when the best available pivot falls below
    pivot_tol times the largest entry of the original matrix.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or b.shape != (n,):
        raise ValueError(f"expected square system, got A{a.shape}, b{b.shape}")
    if n > MAX_DIM:
        raise ValueError(f"dimension {n} exceeds supported maximum {MAX_DIM}")
    scale = np.abs(a).max()
    if scale == 0.0:
        raise SingularMatrix("zero matrix")
    for k in range(n):
        p = k + np.argmax(np.abs(a[k:, k]))
        if abs(a[p, k]) < pivot_tol * scale:
            raise SingularMatrix(f"pivot {a[p, k]:.3e} below threshold at column {k}")
        if p != k:
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]
        inv = 1.0 / a[k, k]
        for i in range(k + 1, n):
            f = a[i, k] * inv
            if f != 0.0:
                a[i, k + 1 :] -= f * a[k, k + 1 :]
                b[i] -= f * b[k]
    x = np.empty(n)
    for i in range(n - 1, -1, -1):
        x[i] = (b[i] - a[i, i + 1 :] @ x[i + 1 :]) / a[i, i]
    return x


def sym_eigenvalues(a, sweep_tol=1e-14, max_sweeps=60):
    """Eigenvalues of a symmetric n x n matrix (n <= 6) by cyclic Jacobi.

    Returns the eigenvalues in ascending order.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n > MAX_DIM:
        raise ValueError(f"dimension {n} exceeds supported maximum {MAX_DIM}")
    scale = np.abs(a).max()
    if scale == 0.0:
        return np.zeros(n)
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off = max(off, abs(a[p, q]))
        if off <= sweep_tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                t = np.sign(theta) / (abs(theta) + np.hypot(1.0, theta))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                a = 0.5 * (a + a.T)
    return np.sort(np.diag(a))


def rank_with_tolerance(a, tol=1e-8, scale=None):
    """Numerical rank of a symmetric 3x3 matrix from its singular values.

    rank = number of singular values above tol * (largest singular value),
    with rank 0 when the largest singular value itself falls below tol * scale
    (scale defaults to the largest singular value, so a nonzero matrix always
    has rank >= 1 unless the caller supplies the problem scale).
    """
    sv = np.abs(sym_eigenvalues(a))
    smax = sv.max()
    if scale is None:
        scale = smax
    if smax <= tol * scale or smax == 0.0:
        return 0
    return int(np.sum(sv > tol * smax))
