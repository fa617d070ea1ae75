"""Exact expression parser for rational functions, phase functions and differential operators.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | NAME | "i" | "p[" INTEGER "]" | "d[" INTEGER "]" | "(" expr ")"

``p[k]`` is the k-th momentum (1-based) and makes the result a phase function;
``d[k]`` is the partial derivative in the k-th position and makes the result
a differential operator, with ``*`` meaning composition.  Momentum variable
names act as ``p[k]``.  Whitespace is insignificant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from ..algebra import I, RationalFunction, VariableRegistry
from ..diffop import DiffOperator, compose
from ..phase_space import PhaseFunction, PhaseSpace


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column


class UnknownIdentifier(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # int | name | op | end
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1):
            out.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3):
            out.append(_Tok("op", m.group(3), m.start(3)))
        else:
            break
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    start = text.rfind("\n", 0, pos) + 1
    return line, pos - start + 1


def _rank(v) -> int:
    if isinstance(v, DiffOperator):
        return 2
    if isinstance(v, PhaseFunction):
        return 1
    return 0


class _Parser:
    def __init__(self, text, registry, space, env):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.registry = registry
        self.space = space
        self.env = env

    # -- helpers
    def error(self, message, tok=None, cls=ParseError):
        tok = tok or self.toks[self.k]
        line, col = _line_col(self.text, tok.pos)
        raise cls(message, line, col)

    @property
    def tok(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, text):
        if self.tok.text != text:
            self.error(f"expected {text!r}")
        return self.take()

    def promote(self, v, rank, tok):
        if rank == 0:
            return v
        if self.space is None:
            self.error("momentum and derivative tokens need a phase space", tok)
        if rank == 1:
            if isinstance(v, PhaseFunction):
                return v
            return PhaseFunction.coerce(self.space, v)
        if isinstance(v, PhaseFunction):
            self.error("cannot combine a phase function with a differential operator", tok)
        return DiffOperator.coerce(self.space, v)

    def combine(self, a, b, tok):
        ra, rb = _rank(a), _rank(b)
        if {ra, rb} == {1, 2}:
            self.error("cannot combine a phase function with a differential operator", tok)
        r = max(ra, rb)
        return self.promote(a, r, tok), self.promote(b, r, tok)

    # -- grammar
    def parse(self):
        v = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.tok.text in ("+", "-"):
            op = self.take()
            w = self.term()
            a, b = self.combine(v, w, op)
            v = a + b if op.text == "+" else a - b
        return v

    def term(self):
        v = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.take()
            w = self.unary()
            if op.text == "*":
                a, b = self.combine(v, w, op)
                v = compose(a, b) if isinstance(a, DiffOperator) else a * b
            else:
                if _rank(w) != 0:
                    self.error("division only by rational functions", op)
                if not w:
                    self.error("division by zero", op)
                v = v / w
        return v

    def unary(self):
        if self.tok.text in ("+", "-"):
            op = self.take()
            v = self.unary()
            return v if op.text == "+" else -v
        return self.power()

    def power(self):
        v = self.atom()
        if self.tok.text == "^":
            op = self.take()
            if self.tok.kind != "int":
                self.error("exponent must be a non-negative integer literal")
            e = int(self.take().text)
            if isinstance(v, DiffOperator):
                out = DiffOperator.identity(v.space)
                for _ in range(e):
                    out = compose(out, v)
                return out
            if e == 0:
                return self.promote(RationalFunction.one(self.registry), _rank(v), op)
            v = v**e
        return v

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.take()
            return RationalFunction.constant(self.registry, int(t.text))
        if t.text == "(":
            self.take()
            v = self.expr()
            self.expect(")")
            return v
        if t.kind == "name":
            self.take()
            if t.text in ("p", "d") and self.tok.text == "[":
                return self.indexed(t)
            if t.text == "i":
                return RationalFunction.constant(self.registry, I)
            if t.text in self.env:
                return self.env[t.text]
            if self.space is not None and t.text in self.space.momenta:
                return self.space.momentum(self.space.momenta.index(t.text))
            if t.text in self.registry:
                return self.registry.var(t.text)
            self.error(f"unknown identifier {t.text!r}", t, UnknownIdentifier)
        if t.kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {t.text!r}")

    def indexed(self, head):
        self.expect("[")
        if self.tok.kind != "int":
            self.error("index must be an integer literal")
        idx_tok = self.take()
        k = int(idx_tok.text)
        self.expect("]")
        if self.space is None:
            self.error("momentum and derivative tokens need a phase space", head)
        if not 1 <= k <= self.space.dim:
            self.error(f"index {k} out of range 1..{self.space.dim}", idx_tok)
        if head.text == "p":
            return self.space.momentum(k - 1)
        return DiffOperator.partial(self.space, k - 1)


def parse_expression(text: str, where, env: Mapping[str, object] | None = None):
    """Parse ``text`` over a VariableRegistry or a PhaseSpace.

    ``env`` binds extra names (earlier scenario bindings, say) to values.
    Returns a RationalFunction, PhaseFunction or DiffOperator.
    """
    if isinstance(where, PhaseSpace):
        space, registry = where, where.registry
    elif isinstance(where, VariableRegistry):
        space, registry = None, where
    else:
        raise TypeError("parse_expression needs a VariableRegistry or PhaseSpace")
    return _Parser(text, registry, space, dict(env or {})).parse()
