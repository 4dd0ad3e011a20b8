"""
Expression trees for one smooth piece of a potential: tokenizer, recursive
descent parser, numpy evaluation, symbolic differentiation and printing.

Grammar (lowest to highest binding)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' literal)?
    literal := ['-' | '+'] NUMBER | '(' literal ')'
    atom    := NUMBER | 'x' | 'pi' | FUNC '(' expr ')' | '(' expr ')'
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Union

import numpy as np

from src.exceptions import PotentialSyntaxError

ArrayLike = Union[float, np.ndarray]

FUNCTIONS: Dict[str, Callable[[ArrayLike], ArrayLike]] = {
    "sin": np.sin,
    "cos": np.cos,
    "sqrt": np.sqrt,
    "exp": np.exp,
    "log": np.log,
}

# Binding power used by the printer; atoms bind tightest.
_PREC_ADD = 1
_PREC_MUL = 2
_PREC_NEG = 3
_PREC_POW = 4
_PREC_ATOM = 5


# ==================== Tree nodes ====================
class Expr:
    """Base class for expression nodes"""

    precedence = _PREC_ATOM

    def evaluate(self, x: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def differentiate(self) -> "Expr":
        raise NotImplementedError

    def has_variable(self) -> bool:
        raise NotImplementedError

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, eq=True)
class Num(Expr):
    value: float

    def evaluate(self, x: ArrayLike) -> ArrayLike:
        return self.value + np.zeros_like(x, dtype=float)

    def differentiate(self) -> Expr:
        return ZERO

    def has_variable(self) -> bool:
        return False


@dataclass(frozen=True, eq=True)
class Var(Expr):
    def evaluate(self, x: ArrayLike) -> ArrayLike:
        return np.asarray(x, dtype=float)

    def differentiate(self) -> Expr:
        return ONE

    def has_variable(self) -> bool:
        return True


@dataclass(frozen=True, eq=True)
class Pi(Expr):
    def evaluate(self, x: ArrayLike) -> ArrayLike:
        return math.pi + np.zeros_like(x, dtype=float)

    def differentiate(self) -> Expr:
        return ZERO

    def has_variable(self) -> bool:
        return False


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    operand: Expr
    precedence = _PREC_NEG

    def evaluate(self, x: ArrayLike) -> ArrayLike:
        return -self.operand.evaluate(x)

    def differentiate(self) -> Expr:
        return neg(self.operand.differentiate())

    def has_variable(self) -> bool:
        return self.operand.has_variable()


@dataclass(frozen=True, eq=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    @property
    def precedence(self) -> int:  # type: ignore[override]
        return _PREC_ADD if self.op in "+-" else _PREC_MUL

    def evaluate(self, x: ArrayLike) -> ArrayLike:
        a = self.left.evaluate(x)
        b = self.right.evaluate(x)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.divide(a, b)

    def differentiate(self) -> Expr:
        u, v = self.left, self.right
        du, dv = u.differentiate(), v.differentiate()
        if self.op == "+":
            return add(du, dv)
        if self.op == "-":
            return sub(du, dv)
        if self.op == "*":
            return add(mul(du, v), mul(u, dv))
        return div(sub(mul(du, v), mul(u, dv)), power(v, 2.0))

    def has_variable(self) -> bool:
        return self.left.has_variable() or self.right.has_variable()


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: float
    precedence = _PREC_POW

    def evaluate(self, x: ArrayLike) -> ArrayLike:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.power(self.base.evaluate(x), self.exponent)

    def differentiate(self) -> Expr:
        outer = mul(Num(self.exponent), power(self.base, self.exponent - 1.0))
        return mul(outer, self.base.differentiate())

    def has_variable(self) -> bool:
        return self.base.has_variable()


@dataclass(frozen=True, eq=True)
class Call(Expr):
    func: str
    arg: Expr

    def evaluate(self, x: ArrayLike) -> ArrayLike:
        with np.errstate(divide="ignore", invalid="ignore"):
            return FUNCTIONS[self.func](self.arg.evaluate(x))

    def differentiate(self) -> Expr:
        u = self.arg
        du = u.differentiate()
        if self.func == "sin":
            outer: Expr = Call("cos", u)
        elif self.func == "cos":
            outer = neg(Call("sin", u))
        elif self.func == "sqrt":
            return div(du, mul(Num(2.0), Call("sqrt", u)))
        elif self.func == "exp":
            outer = Call("exp", u)
        else:
            return div(du, u)
        return mul(outer, du)

    def has_variable(self) -> bool:
        return self.arg.has_variable()


ZERO = Num(0.0)
ONE = Num(1.0)


# ==================== Folding constructors ====================
def _is_num(e: Expr, value: Optional[float] = None) -> bool:
    return isinstance(e, Num) and (value is None or e.value == value)


def add(a: Expr, b: Expr) -> Expr:
    if _is_num(a, 0.0):
        return b
    if _is_num(b, 0.0):
        return a
    if _is_num(a) and _is_num(b):
        return Num(a.value + b.value)
    return BinOp("+", a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if _is_num(b, 0.0):
        return a
    if _is_num(a, 0.0):
        return neg(b)
    if _is_num(a) and _is_num(b):
        return Num(a.value - b.value)
    return BinOp("-", a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if _is_num(a, 0.0) or _is_num(b, 0.0):
        return ZERO
    if _is_num(a, 1.0):
        return b
    if _is_num(b, 1.0):
        return a
    if _is_num(a) and _is_num(b):
        return Num(a.value * b.value)
    return BinOp("*", a, b)


def div(a: Expr, b: Expr) -> Expr:
    if _is_num(a, 0.0):
        return ZERO
    if _is_num(b, 1.0):
        return a
    return BinOp("/", a, b)


def neg(a: Expr) -> Expr:
    if _is_num(a):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def power(base: Expr, exponent: float) -> Expr:
    if exponent == 0.0:
        return ONE
    if exponent == 1.0:
        return base
    return Pow(base, exponent)


# ==================== Tokenizer ====================
@dataclass(frozen=True)
class Token:
    kind: str  # NUM, IDENT, OP, EOF
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)"
    r"|(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()\[\],:=])"
)


def tokenize(text: str, line: int = 1, column_offset: int = 0) -> List[Token]:
    """
    Split one line of source into tokens

    Args:
        text: Source text (a single line, comments already stripped)
        line: 1-based line number used in error messages
        column_offset: Column of ``text[0]`` minus one

    Returns:
        Tokens terminated by an EOF token
    """
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise PotentialSyntaxError(
                f"unexpected character {text[pos]!r}", line, column_offset + pos + 1
            )
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(Token(kind.upper(), match.group(), line, column_offset + pos + 1))
        pos = match.end()
    tokens.append(Token("EOF", "", line, column_offset + len(text) + 1))
    return tokens


# ==================== Parser ====================
class TokenStream:
    """Cursor over a token list with error helpers"""

    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "EOF":
            self.pos += 1
        return token

    def accept(self, text: str) -> bool:
        if self.peek().text == text and self.peek().kind in ("OP", "IDENT"):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        token = self.peek()
        if token.text != text:
            self.error(f"expected {text!r}, found {token.text or 'end of line'!r}", token)
        return self.next()

    def error(self, message: str, token: Optional[Token] = None) -> None:
        token = token or self.peek()
        raise PotentialSyntaxError(message, token.line, token.column)


def parse_expression(stream: TokenStream) -> Expr:
    """Parse ``expr`` starting at the stream cursor"""
    node = _parse_term(stream)
    while stream.peek().text in ("+", "-") and stream.peek().kind == "OP":
        op = stream.next().text
        node = BinOp(op, node, _parse_term(stream))
    return node


def _parse_term(stream: TokenStream) -> Expr:
    node = _parse_unary(stream)
    while stream.peek().text in ("*", "/") and stream.peek().kind == "OP":
        op = stream.next().text
        node = BinOp(op, node, _parse_unary(stream))
    return node


def _parse_unary(stream: TokenStream) -> Expr:
    if stream.accept("-"):
        operand = _parse_unary(stream)
        return Num(-operand.value) if isinstance(operand, Num) else Neg(operand)
    if stream.accept("+"):
        return _parse_unary(stream)
    return _parse_power(stream)


def _parse_power(stream: TokenStream) -> Expr:
    base = _parse_atom(stream)
    if stream.accept("^"):
        exponent = _parse_literal(stream)
        if stream.peek().text == "^":
            stream.error("exponent must be a numeric literal")
        return Pow(base, exponent)
    return base


def _parse_literal(stream: TokenStream) -> float:
    if stream.accept("("):
        value = _parse_literal(stream)
        stream.expect(")")
        return value
    sign = 1.0
    if stream.accept("-"):
        sign = -1.0
    elif stream.accept("+"):
        pass
    token = stream.peek()
    if token.kind != "NUM":
        stream.error("exponent must be a numeric literal", token)
    stream.next()
    return sign * float(token.text)


def _parse_atom(stream: TokenStream) -> Expr:
    token = stream.peek()
    if token.kind == "NUM":
        stream.next()
        return Num(float(token.text))
    if token.kind == "IDENT":
        stream.next()
        if token.text == "x":
            return Var()
        if token.text == "pi":
            return Pi()
        if token.text in FUNCTIONS:
            stream.expect("(")
            arg = parse_expression(stream)
            stream.expect(")")
            return Call(token.text, arg)
        stream.error(f"unknown identifier {token.text!r}", token)
    if stream.accept("("):
        node = parse_expression(stream)
        stream.expect(")")
        return node
    stream.error(f"unexpected {token.text or 'end of line'!r}", token)
    raise AssertionError("unreachable")


def parse(text: str, line: int = 1, column_offset: int = 0) -> Expr:
    """
    Parse a complete expression

    Args:
        text: Expression source
        line: Line number for error messages
        column_offset: Column offset for error messages

    Returns:
        Expression tree
    """
    stream = TokenStream(tokenize(text, line, column_offset))
    node = parse_expression(stream)
    if stream.peek().kind != "EOF":
        stream.error(f"unexpected {stream.peek().text!r} after expression")
    return node


def evaluate_constant(expr: Expr) -> float:
    """Evaluate an expression that must not mention x"""
    if expr.has_variable():
        raise ValueError("constant expression must not depend on x")
    return float(expr.evaluate(0.0))


# ==================== Printer ====================
def _format_number(value: float) -> str:
    text = repr(float(value))
    return f"({text})" if value < 0 or text.startswith("-") else text


def _wrap(node: Expr, min_prec: int) -> str:
    text = to_text(node)
    return f"({text})" if node.precedence < min_prec else text


def to_text(node: Expr) -> str:
    """Print an expression so that parsing the result rebuilds the same tree"""
    if isinstance(node, Num):
        return _format_number(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Pi):
        return "pi"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _PREC_POW)
    if isinstance(node, BinOp):
        prec = node.precedence
        return f"{_wrap(node.left, prec)} {node.op} {_wrap(node.right, prec + 1)}"
    if isinstance(node, Pow):
        return f"{_wrap(node.base, _PREC_ATOM)}^{repr(float(node.exponent))}"
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    raise TypeError(f"unknown node {node!r}")
