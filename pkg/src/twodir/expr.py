"""Tiny arithmetic expression language for mask coefficients.

Grammar (whitespace between tokens is ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | atom
    atom   := NUMBER | 'sqrt' '(' expr ')' | '(' expr ')'

Numbers are decimal literals with an optional exponent (``12``, ``0.5``,
``1e-3``).  Evaluation is plain double precision.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

__all__ = [
    "ExprError",
    "ExprSyntaxError",
    "ExprEvalError",
    "Literal",
    "Neg",
    "BinOp",
    "Sqrt",
    "Expr",
    "parse_expr",
    "eval_expr",
    "evaluate",
]


class ExprError(ValueError):
    pass


class ExprSyntaxError(ExprError):
    """Raised by :func:`parse_expr`; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, text: str, offset: int):
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at offset {offset} in {text!r}")


class ExprEvalError(ExprError):
    pass


@dataclass(frozen=True)
class Literal:
    text: str

    @property
    def value(self) -> float:
        return float(self.text)


@dataclass(frozen=True)
class Neg:
    child: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sqrt:
    child: "Expr"


Expr = Union[Literal, Neg, BinOp, Sqrt]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_]\w*)
  | (?P<op>[-+*/()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", text, _byte_offset(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok):
        raise ExprSyntaxError(message, self.text, _byte_offset(self.text, tok[2]))

    def expect(self, value):
        tok = self.advance()
        if tok[1] != value or tok[0] == "end":
            self.fail(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)

    def parse(self) -> Expr:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self.fail(f"trailing input {tok[1]!r}", tok)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.advance()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.advance()
            return Neg(self.unary())
        if tok[0] == "op" and tok[1] == "+":
            self.advance()
            return self.unary()
        return self.atom()

    def atom(self) -> Expr:
        tok = self.advance()
        kind, value = tok[0], tok[1]
        if kind == "num":
            if not math.isfinite(float(value)):
                self.fail(f"literal {value!r} is not finite", tok)
            return Literal(value)
        if kind == "name":
            if value != "sqrt":
                self.fail(f"unknown name {value!r}", tok)
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return Sqrt(node)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect(")")
            return node
        self.fail(f"unexpected {value or 'end of input'!r}", tok)


def parse_expr(text: str) -> Expr:
    """Parse ``text`` into an expression tree.

    Raises :class:`ExprSyntaxError` (carrying the byte offset) for empty
    input, unbalanced parentheses, unknown tokens and trailing garbage.
    """
    if not isinstance(text, str):
        raise TypeError(f"expected str, got {type(text).__name__}")
    if not text.strip():
        raise ExprSyntaxError("empty expression", text, 0)
    return _Parser(text).parse()


def eval_expr(e: Expr) -> float:
    if isinstance(e, Literal):
        return e.value
    if isinstance(e, Neg):
        return -eval_expr(e.child)
    if isinstance(e, Sqrt):
        v = eval_expr(e.child)
        if v < 0:
            raise ExprEvalError(f"sqrt of negative value {v!r}")
        return math.sqrt(v)
    if isinstance(e, BinOp):
        left = eval_expr(e.left)
        right = eval_expr(e.right)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        if right == 0:
            raise ExprEvalError("division by zero")
        return left / right
    raise TypeError(f"not an expression node: {e!r}")


def evaluate(value: Union[str, int, float]) -> float:
    """Coefficient reader: numbers pass through, strings are parsed and evaluated."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, float)):
        v = float(value)
        if not math.isfinite(v):
            raise ExprEvalError(f"non-finite coefficient {value!r}")
        return v
    return eval_expr(parse_expr(value))
