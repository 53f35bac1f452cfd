"""Expression grammar for metric files and CLI arguments.

Infix ``+ - * / ^`` with the usual precedence, integer and rational literals,
declared coordinate/constant identifiers, declared function applications such
as ``H(u,x,y)`` (argument lists must match the declaration), builtin
``sin cos exp log sqrt``, ``diff(expr, coord, ...)`` for derivative nodes, and
parentheses.  Whitespace is insignificant.
"""

from __future__ import annotations

from .errors import ParseError
from . import expr as E

_BUILTINS = {"sin": E.sin, "cos": E.cos, "exp": E.exp, "log": E.log, "sqrt": E.sqrt}


class SymbolTable:
    """Declared symbols available to the expression grammar."""

    def __init__(self):
        self.coords: dict = {}      # name -> Expr
        self.funcs: dict = {}       # name -> (Expr, arg name tuple)
        self.constants: dict = {}   # name -> Expr

    def declare_coordinates(self, names):
        exprs = E.coordinates(names)
        for n, e in zip(names, exprs):
            self.coords[n] = e
        return exprs

    def declare_function(self, name, arg_names):
        for a in arg_names:
            if a not in self.coords:
                raise ParseError(f"function {name!r} argument {a!r} is not a "
                                 "declared coordinate")
        if name in self.coords or name in self.constants or name in self.funcs:
            raise ParseError(f"symbol {name!r} already declared")
        f = E.function_symbol(name, tuple(self.coords[a] for a in arg_names))
        self.funcs[name] = (f, tuple(arg_names))
        return f

    def declare_constant(self, name):
        if name in self.coords or name in self.constants or name in self.funcs:
            raise ParseError(f"symbol {name!r} already declared")
        c = E.constant(name)
        self.constants[name] = c
        return c


class _Tokens:
    def __init__(self, text, line=None):
        self.text = text
        self.line = line
        self.pos = 0

    def error(self, msg):
        raise ParseError(msg, line=self.line, column=self.pos + 1)

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return ""
        return self.text[self.pos]

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch):
        if not self.take(ch):
            self.error(f"expected {ch!r}")

    def ident(self):
        self._skip_ws()
        start = self.pos
        t = self.text
        if self.pos < len(t) and (t[self.pos].isalpha() or t[self.pos] == "_"):
            self.pos += 1
            while self.pos < len(t) and (t[self.pos].isalnum() or t[self.pos] == "_"):
                self.pos += 1
            return t[start:self.pos]
        return None

    def integer(self):
        self._skip_ws()
        start = self.pos
        t = self.text
        while self.pos < len(t) and t[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            return None
        return int(t[start:self.pos])


def parse_expression(text, symbols: SymbolTable, line=None) -> E.Expr:
    tk = _Tokens(text, line)
    value = _parse_sum(tk, symbols)
    tk._skip_ws()
    if tk.pos != len(tk.text):
        tk.error(f"unexpected trailing input {tk.text[tk.pos:]!r}")
    return value


def _parse_sum(tk, sym):
    if tk.take("-"):
        value = -_parse_term(tk, sym)
    else:
        value = _parse_term(tk, sym)
    while True:
        if tk.take("+"):
            value = value + _parse_term(tk, sym)
        elif tk.take("-"):
            value = value - _parse_term(tk, sym)
        else:
            return value


def _parse_term(tk, sym):
    value = _parse_unary(tk, sym)
    while True:
        if tk.take("*"):
            value = value * _parse_unary(tk, sym)
        elif tk.take("/"):
            denom = _parse_unary(tk, sym)
            if denom.is_zero_struct:
                tk.error("division by zero")
            value = value / denom
        else:
            return value


def _parse_unary(tk, sym):
    if tk.take("-"):
        return -_parse_unary(tk, sym)
    return _parse_power(tk, sym)


def _parse_power(tk, sym):
    base = _parse_primary(tk, sym)
    if tk.take("^"):
        neg = False
        if tk.take("("):
            neg = tk.take("-")
            n = tk.integer()
            if n is None:
                tk.error("expected integer exponent")
            tk.expect(")")
        else:
            neg = tk.take("-")
            n = tk.integer()
            if n is None:
                tk.error("expected integer exponent")
        if neg:
            if base.is_zero_struct:
                tk.error("zero to a negative power")
            return base ** (-n)
        return base ** n
    return base


def _parse_primary(tk, sym):
    ch = tk.peek()
    if ch == "(":
        tk.take("(")
        value = _parse_sum(tk, sym)
        tk.expect(")")
        return value
    if ch.isdigit():
        return E.integer(tk.integer())
    name = tk.ident()
    if name is None:
        tk.error("expected a number, symbol, or '('")
    if tk.peek() == "(":
        return _parse_call(tk, sym, name)
    if name in sym.coords:
        return sym.coords[name]
    if name in sym.constants:
        return sym.constants[name]
    if name in sym.funcs:
        tk.error(f"function {name!r} must be applied to its declared arguments")
    tk.error(f"undeclared symbol {name!r}")


def _parse_call(tk, sym, name):
    tk.expect("(")
    if name == "diff":
        inner = _parse_sum(tk, sym)
        coords = []
        while tk.take(","):
            cn = tk.ident()
            if cn is None or cn not in sym.coords:
                tk.error("diff expects declared coordinate names after the expression")
            coords.append(sym.coords[cn])
        tk.expect(")")
        if not coords:
            tk.error("diff needs at least one coordinate")
        for c in coords:
            inner = E.differentiate(inner, c)
        return inner
    if name in _BUILTINS:
        arg = _parse_sum(tk, sym)
        tk.expect(")")
        return _BUILTINS[name](arg)
    if name in sym.funcs:
        f, argnames = sym.funcs[name]
        got = []
        got.append(tk.ident())
        while tk.take(","):
            got.append(tk.ident())
        tk.expect(")")
        if tuple(got) != argnames:
            tk.error(f"function {name!r} must be applied as "
                     f"{name}({','.join(argnames)})")
        return f
    tk.error(f"undeclared function {name!r}")
