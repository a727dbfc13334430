"""Expression trees for the surface components R(u1, u2, u3).

Nodes are immutable, hash-consed structurally (hashes cached at construction)
so repeated subtrees dedupe in the differentiation cache, which is what keeps
fourth-order mixed partials affordable.  Trees are compiled to flat stack
programs executed by the compiled kernel or its pure-Python twin.
"""

import math

import numpy as np

from .errors import DomainError

VAR_NAMES = ("u1", "u2", "u3")

UNARY_FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "log": math.log,
    "sqrt": math.sqrt,
}

# Stack-program opcodes, shared verbatim with both evaluator backends.
OP_CONST = 0   # push args[k]
OP_VAR = 1     # push u[int(args[k])]
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
OP_POW = 13    # exponent in args[k]

_UNARY_OPCODE = {
    "sin": OP_SIN,
    "cos": OP_COS,
    "tan": OP_TAN,
    "exp": OP_EXP,
    "log": OP_LOG,
    "sqrt": OP_SQRT,
}
_BINARY_OPCODE = {"+": OP_ADD, "-": OP_SUB, "*": OP_MUL, "/": OP_DIV}

ERROR_MESSAGES = {
    1: "division by zero",
    2: "log of a non-positive value",
    3: "square root of a negative value",
    4: "negative base raised to a non-integer power",
    5: "non-finite result",
}


class Expression:
    __slots__ = ("_hash",)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"


class Const(Expression):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = float(value)
        self._hash = hash(("c", self.value))

    def __eq__(self, other):
        return type(other) is Const and other.value == self.value

    def __str__(self):
        return repr(self.value)


class Var(Expression):
    __slots__ = ("index",)

    def __init__(self, index):
        self.index = index
        self._hash = hash(("v", index))

    def __eq__(self, other):
        return type(other) is Var and other.index == self.index

    def __str__(self):
        return VAR_NAMES[self.index]


class Unary(Expression):
    __slots__ = ("op", "arg")

    def __init__(self, op, arg):
        self.op = op
        self.arg = arg
        self._hash = hash(("u", op, arg._hash))

    def __eq__(self, other):
        return type(other) is Unary and other.op == self.op and other.arg == self.arg

    def __str__(self):
        if self.op == "neg":
            return f"(-{self.arg})"
        return f"{self.op}({self.arg})"


class Binary(Expression):
    __slots__ = ("op", "lhs", "rhs")

    def __init__(self, op, lhs, rhs):
        self.op = op
        self.lhs = lhs
        self.rhs = rhs
        self._hash = hash(("b", op, lhs._hash, rhs._hash))

    def __eq__(self, other):
        return (
            type(other) is Binary
            and other.op == self.op
            and other.lhs == self.lhs
            and other.rhs == self.rhs
        )

    def __str__(self):
        return f"({self.lhs} {self.op} {self.rhs})"


class Power(Expression):
    """base ** exponent with a constant exponent (keeps derivatives closed-form)."""

    __slots__ = ("base", "exponent")

    def __init__(self, base, exponent):
        self.base = base
        self.exponent = float(exponent)
        self._hash = hash(("p", base._hash, self.exponent))

    def __eq__(self, other):
        return (
            type(other) is Power
            and other.exponent == self.exponent
            and other.base == self.base
        )

    def __str__(self):
        return f"({self.base} ^ {self.exponent!r})"


ZERO = Const(0.0)
ONE = Const(1.0)


def _is_const(e, value=None):
    if type(e) is not Const:
        return False
    return value is None or e.value == value


def add(a, b):
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return Binary("+", a, b)


def sub(a, b):
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return neg(b)
    if a == b:
        return ZERO
    return Binary("-", a, b)


def mul(a, b):
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return ZERO
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    if _is_const(a, -1.0):
        return neg(b)
    if _is_const(b, -1.0):
        return neg(a)
    return Binary("*", a, b)


def div(a, b):
    if _is_const(b) and b.value != 0.0 and _is_const(a):
        return Const(a.value / b.value)
    if _is_const(a, 0.0):
        return ZERO
    if _is_const(b, 1.0):
        return a
    return Binary("/", a, b)


def neg(a):
    if _is_const(a):
        return Const(-a.value)
    if type(a) is Unary and a.op == "neg":
        return a.arg
    return Unary("neg", a)


def unary(op, a):
    if op == "neg":
        return neg(a)
    if _is_const(a):
        try:
            v = UNARY_FUNCTIONS[op](a.value)
        except ValueError:
            pass  # fold would lose the location; leave for runtime DomainError
        else:
            if math.isfinite(v):
                return Const(v)
    return Unary(op, a)


def power(base, exponent):
    exponent = float(exponent)
    if exponent == 0.0:
        return ONE
    if exponent == 1.0:
        return base
    if _is_const(base):
        try:
            v = base.value**exponent
        except (ValueError, OverflowError, ZeroDivisionError):
            pass
        else:
            if isinstance(v, float) and math.isfinite(v):
                return Const(v)
    return Power(base, exponent)


_DIFF_CACHE = {}


def differentiate(e, i):
    """Exact partial derivative of e with respect to u_{i+1} (i in 0..2).

    Results are simplified as they are built and cached structurally, so the
    repeated subtrees of high-order jets are differentiated once.
    """
    key = (e, i)
    cached = _DIFF_CACHE.get(key)
    if cached is not None:
        return cached
    t = type(e)
    if t is Const:
        d = ZERO
    elif t is Var:
        d = ONE if e.index == i else ZERO
    elif t is Binary:
        la, ra = e.lhs, e.rhs
        dl, dr = differentiate(la, i), differentiate(ra, i)
        if e.op == "+":
            d = add(dl, dr)
        elif e.op == "-":
            d = sub(dl, dr)
        elif e.op == "*":
            d = add(mul(dl, ra), mul(la, dr))
        else:  # "/"
            d = div(sub(mul(dl, ra), mul(la, dr)), power(ra, 2.0))
    elif t is Power:
        db = differentiate(e.base, i)
        d = mul(mul(Const(e.exponent), power(e.base, e.exponent - 1.0)), db)
    else:  # Unary
        da = differentiate(e.arg, i)
        a = e.arg
        if e.op == "neg":
            d = neg(da)
        elif e.op == "sin":
            d = mul(unary("cos", a), da)
        elif e.op == "cos":
            d = neg(mul(unary("sin", a), da))
        elif e.op == "tan":
            d = div(da, power(unary("cos", a), 2.0))
        elif e.op == "exp":
            d = mul(unary("exp", a), da)
        elif e.op == "log":
            d = div(da, a)
        else:  # sqrt
            d = div(da, mul(Const(2.0), unary("sqrt", a)))
    _DIFF_CACHE[key] = d
    return d


def evaluate(e, u):
    """Tree-walking evaluation (reference path; the jet pipeline uses compiled
    programs instead).  Raises DomainError outside a function's real domain or
    on a non-finite result."""
    v = _eval(e, u)
    if not math.isfinite(v):
        raise DomainError(f"non-finite result evaluating {e}")
    return v


def _eval(e, u):
    t = type(e)
    if t is Const:
        return e.value
    if t is Var:
        return float(u[e.index])
    if t is Binary:
        a = _eval(e.lhs, u)
        b = _eval(e.rhs, u)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if b == 0.0:
            raise DomainError("division by zero")
        return a / b
    if t is Power:
        a = _eval(e.base, u)
        if a < 0.0 and e.exponent != math.floor(e.exponent):
            raise DomainError("negative base raised to a non-integer power")
        try:
            return a**e.exponent
        except (OverflowError, ZeroDivisionError) as exc:
            raise DomainError(str(exc)) from None
    a = _eval(e.arg, u)
    if e.op == "neg":
        return -a
    if e.op == "log" and a <= 0.0:
        raise DomainError("log of a non-positive value")
    if e.op == "sqrt" and a < 0.0:
        raise DomainError("square root of a negative value")
    try:
        return UNARY_FUNCTIONS[e.op](a)
    except (ValueError, OverflowError) as exc:
        raise DomainError(str(exc)) from None


class Program:
    """Flat postfix encoding of one or more expressions.

    ops/args are parallel arrays; starts[k]..starts[k+1] delimit program k.
    One shared scratch stack of max_stack slots suffices for every program.
    """

    __slots__ = ("ops", "args", "starts", "max_stack")

    def __init__(self, ops, args, starts, max_stack):
        self.ops = ops
        self.args = args
        self.starts = starts
        self.max_stack = max_stack

    @property
    def n_programs(self):
        return len(self.starts) - 1

    def prefix(self, n):
        """View of the first n programs (they share the same arrays)."""
        return Program(self.ops, self.args, self.starts[: n + 1], self.max_stack)


def compile_programs(exprs):
    """Compile a sequence of expressions into one Program batch."""
    ops, args, starts = [], [], [0]
    max_stack = 1
    for e in exprs:
        depth = _emit(e, ops, args)
        max_stack = max(max_stack, depth)
        starts.append(len(ops))
    return Program(
        np.asarray(ops, dtype=np.int32),
        np.asarray(args, dtype=np.float64),
        np.asarray(starts, dtype=np.int32),
        max_stack,
    )


def _emit(e, ops, args):
    t = type(e)
    if t is Const:
        ops.append(OP_CONST)
        args.append(e.value)
        return 1
    if t is Var:
        ops.append(OP_VAR)
        args.append(float(e.index))
        return 1
    if t is Binary:
        dl = _emit(e.lhs, ops, args)
        dr = _emit(e.rhs, ops, args)
        ops.append(_BINARY_OPCODE[e.op])
        args.append(0.0)
        return max(dl, dr + 1)
    if t is Power:
        d = _emit(e.base, ops, args)
        ops.append(OP_POW)
        args.append(e.exponent)
        return d
    d = _emit(e.arg, ops, args)
    ops.append(_UNARY_OPCODE[e.op])
    args.append(0.0)
    return d
