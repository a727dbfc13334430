"""Recursive-descent parser for the surface-definition text format.

Grammar (whitespace-insensitive, '#' comments to end of line):

    surface    := assignment+ "domain" range ("," range)* [";"]
    assignment := ("x1"|"x2"|"x3"|"x4") "=" expr ";"
    range      := ("u1"|"u2"|"u3") "in" "[" const-expr "," const-expr "]"
    expr       := term (("+"|"-") term)*
    term       := factor (("*"|"/") factor)*
    factor     := ("+"|"-") factor | power
    power      := atom ["^" factor]          -- exponent must fold to a constant
    atom       := NUMBER | "pi" | "e" | "u1".."u3" | func "(" expr ")" | "(" expr ")"
    func       := sin | cos | tan | exp | log | sqrt
"""

import math

from .errors import SurfaceSyntaxError, UnknownIdentifier
from .expr import (
    Const,
    Var,
    add,
    div,
    mul,
    neg,
    power,
    sub,
    unary,
)
from .surface import HypersurfaceDef

_PUNCT = set("=;,[]()+-*/^")
CONSTANTS = {"pi": math.pi, "e": math.e}
FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt")
TARGETS = ("x1", "x2", "x3", "x4")
VARIABLES = ("u1", "u2", "u3")
KEYWORDS = ("domain", "in")


class _Token:
    __slots__ = ("kind", "text", "value", "line", "column")

    def __init__(self, kind, text, value, line, column):
        self.kind = kind  # "num", "ident", "punct", "eof"
        self.text = text
        self.value = value
        self.line = line
        self.column = column


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            lit = text[i:j]
            try:
                value = float(lit)
            except ValueError:
                raise SurfaceSyntaxError(f"bad number literal '{lit}'", line, start_col)
            tokens.append(_Token("num", lit, value, line, start_col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], None, line, start_col))
            col += j - i
            i = j
            continue
        if c in _PUNCT:
            tokens.append(_Token("punct", c, None, line, start_col))
            i += 1
            col += 1
            continue
        raise SurfaceSyntaxError(f"unexpected character {c!r}", line, start_col)
    tokens.append(_Token("eof", "", None, line, col))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, text):
        t = self.next()
        if t.text != text:
            raise SurfaceSyntaxError(
                f"expected {text!r}, found {t.text!r}" if t.kind != "eof" else f"expected {text!r}, found end of input",
                t.line,
                t.column,
            )
        return t

    # expression grammar -------------------------------------------------

    def expr(self):
        e = self.term()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            rhs = self.term()
            e = add(e, rhs) if op == "+" else sub(e, rhs)
        return e

    def term(self):
        e = self.factor()
        while self.peek().text in ("*", "/"):
            op = self.next().text
            rhs = self.factor()
            e = mul(e, rhs) if op == "*" else div(e, rhs)
        return e

    def factor(self):
        t = self.peek()
        if t.text == "-":
            self.next()
            return neg(self.factor())
        if t.text == "+":
            self.next()
            return self.factor()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().text == "^":
            caret = self.next()
            exponent = self.factor()
            if not isinstance(exponent, Const):
                raise SurfaceSyntaxError(
                    "exponent must be a constant expression", caret.line, caret.column
                )
            return power(base, exponent.value)
        return base

    def atom(self):
        t = self.next()
        if t.kind == "num":
            return Const(t.value)
        if t.text == "(":
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "ident":
            name = t.text
            if name in VARIABLES:
                return Var(VARIABLES.index(name))
            if name in CONSTANTS:
                return Const(CONSTANTS[name])
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return unary(name, arg)
            raise UnknownIdentifier(f"unknown identifier '{name}'", t.line, t.column)
        raise SurfaceSyntaxError(
            f"expected an expression, found {t.text!r}" if t.kind != "eof" else "unexpected end of input",
            t.line,
            t.column,
        )

    # surface grammar ----------------------------------------------------

    def const_expr(self):
        t = self.peek()
        e = self.expr()
        if not isinstance(e, Const):
            raise SurfaceSyntaxError("domain bound must be constant", t.line, t.column)
        return e.value

    def surface(self):
        components = {}
        while True:
            t = self.peek()
            if t.kind == "ident" and t.text in TARGETS:
                self.next()
                if t.text in components:
                    raise SurfaceSyntaxError(
                        f"component {t.text} assigned twice", t.line, t.column
                    )
                self.expect("=")
                components[t.text] = self.expr()
                self.expect(";")
                continue
            break
        t = self.peek()
        missing = [x for x in TARGETS if x not in components]
        if missing:
            raise SurfaceSyntaxError(
                f"missing component assignment{'s' if len(missing) > 1 else ''}: "
                + ", ".join(missing),
                t.line,
                t.column,
            )
        self.expect("domain")
        bounds = {}
        while True:
            t = self.next()
            if t.kind != "ident" or t.text not in VARIABLES:
                raise SurfaceSyntaxError(
                    f"expected u1/u2/u3 in domain clause, found {t.text!r}",
                    t.line,
                    t.column,
                )
            if t.text in bounds:
                raise SurfaceSyntaxError(
                    f"domain for {t.text} given twice", t.line, t.column
                )
            self.expect("in")
            self.expect("[")
            lo = self.const_expr()
            self.expect(",")
            hi = self.const_expr()
            self.expect("]")
            if not lo < hi:
                raise SurfaceSyntaxError(
                    f"empty domain interval for {t.text}", t.line, t.column
                )
            bounds[t.text] = (lo, hi)
            if self.peek().text == ",":
                self.next()
                continue
            break
        if self.peek().text == ";":
            self.next()
        t = self.peek()
        if t.kind != "eof":
            raise SurfaceSyntaxError(f"unexpected trailing input {t.text!r}", t.line, t.column)
        missing = [v for v in VARIABLES if v not in bounds]
        if missing:
            raise SurfaceSyntaxError("missing domain for: " + ", ".join(missing), t.line, t.column)
        return HypersurfaceDef(
            [components[x] for x in TARGETS], [bounds[v] for v in VARIABLES]
        )


def parse_surface(text):
    """Parse surface-definition source into a HypersurfaceDef."""
    return _Parser(text).surface()


def parse_expression(text):
    """Parse a bare expression (used by tests and the parser itself)."""
    p = _Parser(text)
    e = p.expr()
    t = p.peek()
    if t.kind != "eof":
        raise SurfaceSyntaxError(f"unexpected trailing input {t.text!r}", t.line, t.column)
    return e
