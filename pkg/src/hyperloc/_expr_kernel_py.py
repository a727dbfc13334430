"""Pure-Python twin of the compiled stack-program evaluator.

Semantics must match hyperloc._expr_kernel bit for bit (both delegate the
transcendentals to the platform libm).  Status encoding: 0 on success, else
error_code * 1_000_000 + program_index, error codes per expr.ERROR_MESSAGES.
"""

import math

from .expr import (
    OP_ADD,
    OP_CONST,
    OP_COS,
    OP_DIV,
    OP_EXP,
    OP_LOG,
    OP_MUL,
    OP_NEG,
    OP_POW,
    OP_SIN,
    OP_SQRT,
    OP_SUB,
    OP_TAN,
    OP_VAR,
)

COMPILED = False


def eval_programs(ops, args, starts, u1, u2, u3, out, stack):
    uvals = (u1, u2, u3)
    n = len(starts) - 1
    for p in range(n):
        sp = 0
        for k in range(starts[p], starts[p + 1]):
            op = ops[k]
            if op == OP_CONST:
                stack[sp] = args[k]
                sp += 1
            elif op == OP_VAR:
                stack[sp] = uvals[int(args[k])]
                sp += 1
            elif op == OP_ADD:
                sp -= 1
                stack[sp - 1] = stack[sp - 1] + stack[sp]
            elif op == OP_SUB:
                sp -= 1
                stack[sp - 1] = stack[sp - 1] - stack[sp]
            elif op == OP_MUL:
                sp -= 1
                stack[sp - 1] = stack[sp - 1] * stack[sp]
            elif op == OP_DIV:
                sp -= 1
                if stack[sp] == 0.0:
                    return 1_000_000 + p
                stack[sp - 1] = stack[sp - 1] / stack[sp]
            elif op == OP_NEG:
                stack[sp - 1] = -stack[sp - 1]
            elif op == OP_SIN:
                stack[sp - 1] = math.sin(stack[sp - 1])
            elif op == OP_COS:
                stack[sp - 1] = math.cos(stack[sp - 1])
            elif op == OP_TAN:
                stack[sp - 1] = math.tan(stack[sp - 1])
            elif op == OP_EXP:
                try:
                    stack[sp - 1] = math.exp(stack[sp - 1])
                except OverflowError:  # C exp returns inf here
                    stack[sp - 1] = math.inf
            elif op == OP_LOG:
                if stack[sp - 1] <= 0.0:
                    return 2_000_000 + p
                stack[sp - 1] = math.log(stack[sp - 1])
            elif op == OP_SQRT:
                if stack[sp - 1] < 0.0:
                    return 3_000_000 + p
                stack[sp - 1] = math.sqrt(stack[sp - 1])
            else:  # OP_POW
                x = stack[sp - 1]
                e = args[k]
                if x < 0.0 and e != math.floor(e):
                    return 4_000_000 + p
                if x == 0.0 and e < 0.0:
                    return 1_000_000 + p
                try:
                    stack[sp - 1] = x**e
                except OverflowError:  # C pow returns inf here
                    stack[sp - 1] = math.inf
        v = stack[0]
        if not math.isfinite(v):
            return 5_000_000 + p
        out[p] = v
    return 0


def eval_programs_grid(ops, args, starts, points, out, stack):
    """Evaluate the batch at many points; returns (status, point_index)."""
    for m in range(points.shape[0]):
        status = eval_programs(
            ops, args, starts, points[m, 0], points[m, 1], points[m, 2], out[m], stack
        )
        if status:
            return status, m
    return 0, -1
