# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled stack-program evaluator for surface expressions (the hot kernel).

Opcode values and the status encoding mirror hyperloc.expr /
hyperloc._expr_kernel_py exactly; test_backends checks the two evaluators
against each other.
"""

from libc.math cimport cos, exp, floor, isfinite, log, pow, sin, sqrt, tan

COMPILED = True

cdef enum:
    OP_CONST = 0
    OP_VAR = 1
    OP_ADD = 2
    OP_SUB = 3
    OP_MUL = 4
    OP_DIV = 5
    OP_NEG = 6
    OP_SIN = 7
    OP_COS = 8
    OP_TAN = 9
    OP_EXP = 10
    OP_LOG = 11
    OP_SQRT = 12
    OP_POW = 13


cdef long _run(const int[:] ops, const double[:] args, const int[:] starts,
               double u1, double u2, double u3,
               double[:] out, double[:] stack) noexcept nogil:
    cdef Py_ssize_t n = starts.shape[0] - 1
    cdef Py_ssize_t p, k, sp
    cdef int op
    cdef double x, e, v
    for p in range(n):
        sp = 0
        for k in range(starts[p], starts[p + 1]):
            op = ops[k]
            if op == OP_CONST:
                stack[sp] = args[k]
                sp += 1
            elif op == OP_VAR:
                if args[k] == 0.0:
                    stack[sp] = u1
                elif args[k] == 1.0:
                    stack[sp] = u2
                else:
                    stack[sp] = u3
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
                    return 1000000 + p
                stack[sp - 1] = stack[sp - 1] / stack[sp]
            elif op == OP_NEG:
                stack[sp - 1] = -stack[sp - 1]
            elif op == OP_SIN:
                stack[sp - 1] = sin(stack[sp - 1])
            elif op == OP_COS:
                stack[sp - 1] = cos(stack[sp - 1])
            elif op == OP_TAN:
                stack[sp - 1] = tan(stack[sp - 1])
            elif op == OP_EXP:
                stack[sp - 1] = exp(stack[sp - 1])
            elif op == OP_LOG:
                if stack[sp - 1] <= 0.0:
                    return 2000000 + p
                stack[sp - 1] = log(stack[sp - 1])
            elif op == OP_SQRT:
                if stack[sp - 1] < 0.0:
                    return 3000000 + p
                stack[sp - 1] = sqrt(stack[sp - 1])
            else:  # OP_POW
                x = stack[sp - 1]
                e = args[k]
                if x < 0.0 and e != floor(e):
                    return 4000000 + p
                if x == 0.0 and e < 0.0:
                    return 1000000 + p
                stack[sp - 1] = pow(x, e)
        v = stack[0]
        if not isfinite(v):
            return 5000000 + p
        out[p] = v
    return 0


def eval_programs(const int[:] ops, const double[:] args, const int[:] starts,
                  double u1, double u2, double u3,
                  double[:] out, double[:] stack):
    cdef long status
    with nogil:
        status = _run(ops, args, starts, u1, u2, u3, out, stack)
    return status


def eval_programs_grid(const int[:] ops, const double[:] args, const int[:] starts,
                       const double[:, :] points, double[:, :] out, double[:] stack):
    cdef long status = 0
    cdef Py_ssize_t m = -1, i
    with nogil:
        for i in range(points.shape[0]):
            status = _run(ops, args, starts,
                          points[i, 0], points[i, 1], points[i, 2],
                          out[i], stack)
            if status != 0:
                m = i
                break
    if status:
        return status, m
    return 0, -1
