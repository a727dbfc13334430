"""Principal curvatures and directions: the cubic det(h - k g) = 0, its
degeneracy classification, and the unit direction field.

The cubic's coefficients come from the exact multilinear expansion of the
determinant in its columns, normalized monic; the printed closed forms they
correspond to are never transcribed.  Roots use the trigonometric three-real-
root resolution with a Newton polish, which stays stable near repeated roots.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import ComplexRoots, DegenerateDirection
from .linalg import rank_with_tolerance

SEPARATION_TOL = 1e-6  # relative root separation below which a branch is degenerate
RANK_TOL = 1e-8

SIMPLE = "simple"
PARTIALLY_UMBILIC = "partially_umbilic"
UMBILIC = "umbilic"
GENERIC = "generic"

_RANK_CLASS = {0: UMBILIC, 1: PARTIALLY_UMBILIC, 2: SIMPLE, 3: SIMPLE}


@dataclass
class CubicCoefficients:
    """Invariants of k^3 + 3 K2 k^2 + 3 K3 k + K1 = 0."""

    K1: float
    K2: float
    K3: float


@dataclass
class PointClassification:
    point_class: str  # generic | partially_umbilic | umbilic
    branch_classes: tuple
    ranks: tuple


@dataclass
class PrincipalBranch:
    k_n: float
    branch_class: str
    direction: np.ndarray = None  # unit (u1', u2', u3'), only for simple branches


def _det3(c0, c1, c2):
    return (
        c0[0] * (c1[1] * c2[2] - c1[2] * c2[1])
        - c0[1] * (c1[0] * c2[2] - c1[2] * c2[0])
        + c0[2] * (c1[0] * c2[1] - c1[1] * c2[0])
    )


def pencil_coefficients(g, h):
    """Coefficients d with det(h - k g) = d[0] + d[1] k + d[2] k^2 + d[3] k^3.

    Multilinearity over columns: the k^m coefficient is (-1)^m times the sum
    of determinants with m columns taken from g and the rest from h.
    """
    gc = [g[:, j] for j in range(3)]
    hc = [h[:, j] for j in range(3)]
    d = np.zeros(4)
    for m in range(4):
        total = 0.0
        for subset in combinations(range(3), m):
            cols = [gc[j] if j in subset else hc[j] for j in range(3)]
            total += _det3(*cols)
        d[m] = total if m % 2 == 0 else -total
    return d


def characteristic_coefficients(f):
    """K1, K2, K3 from the monic normalization of det(h - k g) = 0."""
    d = pencil_coefficients(f.g, f.h)
    return CubicCoefficients(K1=d[0] / d[3], K2=d[2] / (3.0 * d[3]), K3=d[1] / (3.0 * d[3]))


def cubic_roots(c2, c1, c0, disc_tol=1e-6):
    """Three real roots of k^3 + c2 k^2 + c1 k + c0, ascending.

    Trigonometric resolution of the depressed cubic, then two Newton steps
    per root on the original polynomial.
    """
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2**3 / 27.0 - c2 * c1 / 3.0 + c0
    s = max(np.sqrt(abs(p)), np.cbrt(abs(q)))
    if s == 0.0:
        roots = np.full(3, -c2 / 3.0)
    else:
        if p > 0.0:
            if p > disc_tol * s * s:
                raise ComplexRoots(f"discriminant positive: p={p:.3e}, q={q:.3e}")
            p = 0.0
        m = 2.0 * np.sqrt(-p / 3.0)
        if m <= 1e-150 * s:
            roots = np.full(3, np.cbrt(-q) - c2 / 3.0)
        else:
            a = 3.0 * q / (p * m)
            if abs(a) > 1.0:
                if abs(a) - 1.0 > disc_tol:
                    raise ComplexRoots(f"discriminant positive: cos argument {a:.6f}")
                a = np.clip(a, -1.0, 1.0)
            theta = np.arccos(a)
            ks = np.arange(3)
            roots = m * np.cos(theta / 3.0 - 2.0 * np.pi * ks / 3.0) - c2 / 3.0
    for _ in range(2):
        pv = ((roots + c2) * roots + c1) * roots + c0
        dv = (3.0 * roots + 2.0 * c2) * roots + c1
        step = np.where(np.abs(dv) > 1e-300, pv / np.where(dv == 0.0, 1.0, dv), 0.0)
        roots = roots - step
    return np.sort(roots)


def solve_principal_curvatures(coeffs):
    """Ascending real roots of the principal-curvature cubic."""
    return cubic_roots(3.0 * coeffs.K2, 3.0 * coeffs.K3, coeffs.K1)


def classify_point(f, roots, separation_tol=SEPARATION_TOL, rank_tol=RANK_TOL):
    """Rank-based degeneracy classification of the point and of each branch."""
    gscale = np.abs(f.g).max()
    hscale = np.abs(f.h).max()
    ranks = []
    for k in roots:
        a = f.h - k * f.g
        scale = max(hscale, abs(k) * gscale)
        ranks.append(rank_with_tolerance(a, rank_tol, scale=scale or None))
    ranks = tuple(ranks)
    branch_classes = tuple(_RANK_CLASS[r] for r in ranks)
    if 0 in ranks:
        point_class = UMBILIC
    else:
        sep_scale = max(1.0, np.abs(roots).max())
        separated = all(
            abs(roots[i] - roots[j]) > separation_tol * sep_scale
            for i, j in combinations(range(3), 2)
        )
        if separated and all(c == SIMPLE for c in branch_classes):
            point_class = GENERIC
        else:
            point_class = PARTIALLY_UMBILIC
    return PointClassification(point_class, branch_classes, ranks)


def principal_direction(f, k_n):
    """Unit principal direction (u1', u2', u3') for a simple root.

    The three cofactor cross products of A's row pairs are proportional when
    rank A = 2; the largest is normalized against the metric so the direction
    is unit speed, with the first nonzero component made positive.
    """
    a_mat = f.h - k_n * f.g
    best = None
    best_norm = 0.0
    for i, j in ((0, 1), (0, 2), (1, 2)):
        t = np.cross(a_mat[i], a_mat[j])
        n = np.linalg.norm(t)
        if n > best_norm:
            best, best_norm = t, n
    fro = np.linalg.norm(a_mat)
    if best is None or best_norm <= 1e-14 * (fro * fro + 1e-300):
        raise DegenerateDirection(
            f"all cofactor triples of A vanish at k_n={k_n!r} (rank < 2)"
        )
    eta = 1.0 / np.sqrt(best @ f.g @ best)
    d = best * eta
    for c in d:
        if abs(c) > 1e-12 * np.abs(d).max():
            if c < 0.0:
                d = -d
            break
    return d


def principal_branches(f, separation_tol=SEPARATION_TOL, rank_tol=RANK_TOL):
    """Full point analysis: coefficients, roots, classification, branches."""
    coeffs = characteristic_coefficients(f)
    roots = solve_principal_curvatures(coeffs)
    cls = classify_point(f, roots, separation_tol, rank_tol)
    branches = []
    for k, bc in zip(roots, cls.branch_classes):
        direction = principal_direction(f, k) if bc == SIMPLE else None
        branches.append(PrincipalBranch(k_n=float(k), branch_class=bc, direction=direction))
    return coeffs, roots, cls, branches
