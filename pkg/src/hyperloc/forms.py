"""Unit normal, first/second fundamental forms, and their parameter- and
arc-length derivatives.

The normal's u-derivatives come from exact differentiation of the normalized
ternary product over the jet (quotient rule in closed form), so the second
derivatives of h carry no finite-difference error into the higher-order
curvature systems.
"""

from dataclasses import dataclass

import numpy as np

from .errors import RegularityError
from .linalg import ternary_product
from .surface import IDX2, IDX3, IDX4


@dataclass
class FormState:
    """g_ij, h_ij, N and their u-partials at one parameter point.

    dg[k] and dh[k] are the full symmetric 3x3 matrices d(g)/du_k, d(h)/du_k;
    d2g[k, l], d2h[k, l] the second partials.  Derivative blocks are None when
    the jet order did not cover them.
    """

    jet: object
    g: np.ndarray
    h: np.ndarray
    N: np.ndarray
    dg: np.ndarray = None
    dh: np.ndarray = None
    d2g: np.ndarray = None
    d2h: np.ndarray = None


@dataclass
class CurveFormDerivatives:
    """Arc-length derivatives of the form coefficients along a curve u(s)."""

    gp: np.ndarray
    hp: np.ndarray
    gpp: np.ndarray = None
    hpp: np.ndarray = None


def unit_normal(jet):
    """N = R1 x R2 x R3 (ternary product), normalized."""
    w = ternary_product(jet.d1[0], jet.d1[1], jet.d1[2])
    nw = np.linalg.norm(w)
    scale = np.prod([np.linalg.norm(v) for v in jet.d1])
    if nw <= 1e-12 * scale:
        raise RegularityError("R1 x R2 x R3 vanishes: rank deficient Jacobian")
    return w / nw


def _normal_derivatives(jet, order):
    """N and its u-partials (first order, and second when order >= 3)."""
    r1 = jet.d1
    D2 = jet.d2[IDX2]  # D2[i, j] = R_ij
    w = ternary_product(r1[0], r1[1], r1[2])
    s = w @ w
    if s <= 0.0:
        raise RegularityError("R1 x R2 x R3 vanishes: rank deficient Jacobian")
    rs = 1.0 / np.sqrt(s)
    N = w * rs

    wk = np.empty((3, 4))
    for k in range(3):
        wk[k] = (
            ternary_product(D2[0, k], r1[1], r1[2])
            + ternary_product(r1[0], D2[1, k], r1[2])
            + ternary_product(r1[0], r1[1], D2[2, k])
        )
    wwk = wk @ w
    dN = wk * rs - np.outer(wwk, w) * rs**3

    if order < 3:
        return N, dN, None

    D3 = jet.d3[IDX3]  # D3[i, j, k] = R_ijk
    d2N = np.empty((3, 3, 4))
    for k in range(3):
        for l in range(k, 3):
            wkl = (
                ternary_product(D3[0, k, l], r1[1], r1[2])
                + ternary_product(D2[0, k], D2[1, l], r1[2])
                + ternary_product(D2[0, k], r1[1], D2[2, l])
                + ternary_product(D2[0, l], D2[1, k], r1[2])
                + ternary_product(r1[0], D3[1, k, l], r1[2])
                + ternary_product(r1[0], D2[1, k], D2[2, l])
                + ternary_product(D2[0, l], r1[1], D2[2, k])
                + ternary_product(r1[0], D2[1, l], D2[2, k])
                + ternary_product(r1[0], r1[1], D3[2, k, l])
            )
            val = (
                wkl * rs
                - (
                    wk[k] * (w @ wk[l])
                    + wk[l] * (w @ wk[k])
                    + w * (wk[k] @ wk[l] + w @ wkl)
                )
                * rs**3
                + 3.0 * w * (w @ wk[k]) * (w @ wk[l]) * rs**5
            )
            d2N[k, l] = val
            d2N[l, k] = val
    return N, dN, d2N


def fundamental_forms(jet):
    """Assemble the FormState from a jet (order >= 2; derivative blocks need
    order 3 for dg/dh and order 4 for d2g/d2h)."""
    if jet.order < 2:
        raise ValueError("fundamental forms need a jet of order >= 2")
    r1 = jet.d1
    D2 = jet.d2[IDX2]
    N, dN, d2N = _normal_derivatives(jet, jet.order)
    g = r1 @ r1.T
    h = D2 @ N

    dg = dh = d2g = d2h = None
    if jet.order >= 3:
        D3 = jet.d3[IDX3]
        dg = np.empty((3, 3, 3))
        dh = np.empty((3, 3, 3))
        for k in range(3):
            b = D2[:, k] @ r1.T  # b[i, j] = <R_ik, R_j>
            dg[k] = b + b.T
            dh[k] = D3[:, :, k] @ N + D2 @ dN[k]
    if jet.order >= 4:
        D3 = jet.d3[IDX3]
        D4 = jet.d4[IDX4]
        d2g = np.empty((3, 3, 3, 3))
        d2h = np.empty((3, 3, 3, 3))
        for k in range(3):
            for l in range(k, 3):
                c = np.einsum("iv,jv->ij", D3[:, k, l], r1)
                p = np.einsum("iv,jv->ij", D2[:, k], D2[:, l])
                d2g[k, l] = c + c.T + p + p.T
                d2g[l, k] = d2g[k, l]
                d2h[k, l] = (
                    D4[:, :, k, l] @ N
                    + D3[:, :, k] @ dN[l]
                    + D3[:, :, l] @ dN[k]
                    + D2 @ d2N[k, l]
                )
                d2h[l, k] = d2h[k, l]
    return FormState(jet=jet, g=g, h=h, N=N, dg=dg, dh=dh, d2g=d2g, d2h=d2h)


def normal_curvature(f, lam, mu):
    """II/I for the tangent direction (du1, du2, du3) = (1, lam, mu)."""
    du = np.array([1.0, lam, mu])
    return (du @ f.h @ du) / (du @ f.g @ du)


def curve_form_derivatives(f, du, ddu=None):
    """Chain-rule arc-length derivatives of g and h along u(s).

    g'_ij = sum_k dg[k]_ij u_k'; the second derivative additionally needs u''
    (from the second-order frame solve) and the second u-partials.
    """
    if f.dg is None:
        raise ValueError("FormState lacks first derivatives (jet order < 3)")
    du = np.asarray(du, dtype=float)
    gp = np.einsum("kij,k->ij", f.dg, du)
    hp = np.einsum("kij,k->ij", f.dh, du)
    gpp = hpp = None
    if ddu is not None:
        if f.d2g is None:
            raise ValueError("FormState lacks second derivatives (jet order < 4)")
        ddu = np.asarray(ddu, dtype=float)
        gpp = np.einsum("kij,k->ij", f.dg, ddu) + np.einsum(
            "klij,k,l->ij", f.d2g, du, du
        )
        hpp = np.einsum("kij,k->ij", f.dh, ddu) + np.einsum(
            "klij,k,l->ij", f.d2h, du, du
        )
    return CurveFormDerivatives(gp=gp, hp=hp, gpp=gpp, hpp=hpp)
