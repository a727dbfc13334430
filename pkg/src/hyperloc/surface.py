"""Hypersurface patches R(u1,u2,u3) in E^4 and their derivative jets.

A jet holds the position and every partial derivative vector up to total
order 4 (35 multi-indices), which is exactly what the fourth-derivative
expansion of a traced curve consumes.  Only sorted multi-indices are stored;
Clairaut symmetry is structural.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from . import _kernel
from .errors import DomainError, OutsideDomain, RegularityError
from .expr import ERROR_MESSAGES, compile_programs, differentiate
from .linalg import ternary_product

# Sorted multi-indices in order blocks: (), order 1, 2, 3, 4.
MULTI_INDICES = tuple(
    m for k in range(5) for m in combinations_with_replacement((0, 1, 2), k)
)
ROW = {m: r for r, m in enumerate(MULTI_INDICES)}
ROWS_BY_ORDER = (1, 4, 10, 20, 35)  # cumulative row counts per max order

# Fast lookups from unsorted index tuples into the per-order blocks.
ROW2 = {m: ROW[m] - 4 for m in combinations_with_replacement((0, 1, 2), 2)}
ROW3 = {m: ROW[m] - 10 for m in combinations_with_replacement((0, 1, 2), 3)}
ROW4 = {m: ROW[m] - 20 for m in combinations_with_replacement((0, 1, 2), 4)}

IDX2 = np.array([[ROW2[tuple(sorted((i, j)))] for j in range(3)] for i in range(3)])
IDX3 = np.array(
    [
        [[ROW3[tuple(sorted((i, j, k)))] for k in range(3)] for j in range(3)]
        for i in range(3)
    ]
)
IDX4 = np.array(
    [
        [
            [
                [ROW4[tuple(sorted((i, j, k, l)))] for l in range(3)]
                for k in range(3)
            ]
            for j in range(3)
        ]
        for i in range(3)
    ]
)

BOUNDARY_REL_TOL = 1e-12


@dataclass
class Jet4:
    """Position and derivative vectors of R at one parameter point.

    d1[i] = R_i, d2[ROW2[(i,j)]] = R_ij, etc.; d3/d4 are None when the jet
    was evaluated below order 3/4.
    """

    u: np.ndarray
    order: int
    value: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray = None
    d4: np.ndarray = None

    def d(self, *index):
        """Derivative vector for an index tuple in any order (0-based axes)."""
        m = tuple(sorted(index))
        k = len(m)
        if k == 0:
            return self.value
        block = (None, self.d1, self.d2, self.d3, self.d4)[k]
        if block is None:
            raise ValueError(f"jet was evaluated to order {self.order} only")
        return block[ROW[m] - ROWS_BY_ORDER[k - 1]]


class HypersurfaceDef:
    """Parsed surface: four component expressions plus a box domain.

    Immutable and shareable; jet programs are compiled once on first use
    (idempotent, so concurrent first calls are harmless).
    """

    def __init__(self, components, domain):
        self.components = tuple(components)
        self.domain = np.asarray(domain, dtype=float).reshape(3, 2)
        if len(self.components) != 4:
            raise ValueError("a hypersurface needs exactly 4 components")
        if np.any(self.domain[:, 0] >= self.domain[:, 1]):
            raise ValueError("domain bounds must satisfy lo < hi")
        self._program = None

    @property
    def widths(self):
        return self.domain[:, 1] - self.domain[:, 0]

    def contains(self, u, slack=0.0):
        u = np.asarray(u, dtype=float)
        lo = self.domain[:, 0] - slack * self.widths
        hi = self.domain[:, 1] + slack * self.widths
        return bool(np.all(u >= lo) and np.all(u <= hi))

    def check_inside(self, u):
        u = np.asarray(u, dtype=float)
        tol = BOUNDARY_REL_TOL * self.widths
        for i in range(3):
            lo, hi = self.domain[i]
            if u[i] < lo - tol[i] or u[i] > hi + tol[i]:
                raise OutsideDomain(
                    f"u{i + 1} = {u[i]:.17g} outside domain [{lo:.17g}, {hi:.17g}]"
                )

    def _compiled(self):
        if self._program is None:
            exprs = {(): list(self.components)}
            flat = list(self.components)
            for m in MULTI_INDICES[1:]:
                parent = exprs[m[:-1]]
                derived = [differentiate(e, m[-1]) for e in parent]
                exprs[m] = derived
                flat.extend(derived)
            self._program = compile_programs(flat)
        return self._program

    def jet(self, u, order=4):
        """Evaluate the derivative jet at u up to the requested order."""
        if not 0 <= order <= 4:
            raise ValueError("order must be in 0..4")
        u = np.asarray(u, dtype=float)
        self.check_inside(u)
        prog = self._compiled()
        n_rows = ROWS_BY_ORDER[order]
        sub = prog.prefix(4 * n_rows)
        out = np.empty(4 * n_rows)
        stack = np.empty(prog.max_stack)
        status = _kernel.eval_programs(
            sub.ops, sub.args, sub.starts, u[0], u[1], u[2], out, stack
        )
        if status:
            code, pidx = divmod(int(status), 1_000_000)
            row, comp = divmod(pidx, 4)
            m = MULTI_INDICES[row]
            what = f"x{comp + 1}" + (f" derivative {m}" if m else "")
            raise DomainError(
                f"{ERROR_MESSAGES.get(code, 'evaluation error')} in {what} at u={tuple(u)}"
            )
        rows = out.reshape(n_rows, 4)
        value = rows[0]
        d1 = rows[1:4] if order >= 1 else None
        if order >= 1:
            w = ternary_product(d1[0], d1[1], d1[2])
            scale = (
                np.linalg.norm(d1[0]) * np.linalg.norm(d1[1]) * np.linalg.norm(d1[2])
            )
            if np.linalg.norm(w) <= 1e-12 * scale:
                raise RegularityError(f"rank{{R_1,R_2,R_3}} < 3 at u={tuple(u)}")
        return Jet4(
            u=u.copy(),
            order=order,
            value=value,
            d1=d1,
            d2=rows[4:10] if order >= 2 else None,
            d3=rows[10:20] if order >= 3 else None,
            d4=rows[20:35] if order >= 4 else None,
        )

    def position(self, u):
        """Just R(u) (order-0 prefix of the jet programs)."""
        u = np.asarray(u, dtype=float)
        self.check_inside(u)
        prog = self._compiled()
        sub = prog.prefix(4)
        out = np.empty(4)
        stack = np.empty(prog.max_stack)
        status = _kernel.eval_programs(
            sub.ops, sub.args, sub.starts, u[0], u[1], u[2], out, stack
        )
        if status:
            code = int(status) // 1_000_000
            raise DomainError(
                f"{ERROR_MESSAGES.get(code, 'evaluation error')} at u={tuple(u)}"
            )
        return out


def evaluate_jet(surface, u, order=4):
    """Module-level convenience for HypersurfaceDef.jet."""
    return surface.jet(u, order=order)
