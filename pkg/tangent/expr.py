"""A small arithmetic expression language evaluated over any Ring.

Grammar, loosest binding first: + and -, then * and /, then unary minus,
then ^ (right associative, non-negative integer exponent).
"""
import logging
import re
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from .errors import ExprSyntaxError, UnboundVariable
from .ring import RATIONAL, Ring

logger = logging.getLogger(__name__)

NAME_PATTERN = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*")
MAX_EXPONENT = 1024


# --- AST ---

class Expr:
    """Base class of the (immutable) expression nodes."""

    def __add__(self, other):
        return Add(self, _node(other))

    def __sub__(self, other):
        return Sub(self, _node(other))

    def __mul__(self, other):
        return Mul(self, _node(other))

    def __truediv__(self, other):
        return Div(self, _node(other))

    def __neg__(self):
        return Neg(self)

    def __pow__(self, exponent: int):
        return Pow(self, exponent)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, eq=True)
class Var(Expr):
    name: str

    def __post_init__(self):
        if not NAME_PATTERN.fullmatch(self.name):
            raise ValueError(f"'{self.name}' is not a valid variable name")


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True, eq=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if isinstance(self.exponent, bool) or not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {self.exponent!r}")


def _node(value) -> Expr:
    if isinstance(value, Expr):
        return value
    return Const(Fraction(value))


# --- Tokenizer ---

@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    column: int  # 1-based


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([a-zA-Z_][a-zA-Z0-9_]*)|([-+*/^()]))")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            column = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ExprSyntaxError(f"unexpected character '{text[column - 1]}'", column)
        number, name, op = match.groups()
        start = match.start(match.lastindex) + 1
        if number is not None:
            tokens.append(Token("num", number, start))
        elif name is not None:
            tokens.append(Token("name", name, start))
        else:
            tokens.append(Token("op", op, start))
        pos = match.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


# --- Parser (precedence climbing) ---

# Binary operators: (precedence, right associative)
_BINARY = {
    "+": (1, False),
    "-": (1, False),
    "*": (2, False),
    "/": (2, False),
}
_UNARY_PREC = 3
_POW_PREC = 4


class _Parser:
    def __init__(self, text: str, allow_decimals: bool):
        self.tokens = tokenize(text)
        self.index = 0
        self.allow_decimals = allow_decimals

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "end":
            self.index += 1
        return token

    def expect(self, text: str) -> Token:
        token = self.advance()
        if token.text != text or token.kind != "op":
            found = "end of input" if token.kind == "end" else f"'{token.text}'"
            raise ExprSyntaxError(f"expected '{text}', found {found}", token.column)
        return token

    def parse(self) -> Expr:
        node = self.binary(1)
        token = self.peek()
        if token.kind != "end":
            raise ExprSyntaxError(f"unexpected '{token.text}'", token.column)
        return node

    def binary(self, min_prec: int) -> Expr:
        lhs = self.unary()
        while True:
            token = self.peek()
            if token.kind != "op" or token.text not in _BINARY:
                return lhs
            prec, _ = _BINARY[token.text]
            if prec < min_prec:
                return lhs
            self.advance()
            rhs = self.binary(prec + 1)
            lhs = {"+": Add, "-": Sub, "*": Mul, "/": Div}[token.text](lhs, rhs)

    def unary(self) -> Expr:
        token = self.peek()
        if token.kind == "op" and token.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        token = self.peek()
        if token.kind == "op" and token.text == "^":
            self.advance()
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        # Right associative: 2^3^2 folds to 2^9 before it is used as an exponent.
        token = self.peek()
        if token.kind == "op" and token.text == "(":
            self.advance()
            value = self.exponent()
            self.expect(")")
        elif token.kind == "num" and token.text.isdigit():
            self.advance()
            value = int(token.text)
        else:
            found = "end of input" if token.kind == "end" else f"'{token.text}'"
            raise ExprSyntaxError(f"exponent must be a non-negative integer literal, found {found}", token.column)
        self._check_exponent(value, token)
        nxt = self.peek()
        if nxt.kind == "op" and nxt.text == "^":
            self.advance()
            # both operands are capped, so the power itself stays small
            value = value ** self.exponent()
            self._check_exponent(value, token)
        return value

    def _check_exponent(self, value: int, token: Token) -> None:
        if value > MAX_EXPONENT:
            raise ExprSyntaxError(f"exponent exceeds the limit of {MAX_EXPONENT}", token.column)

    def atom(self) -> Expr:
        token = self.advance()
        if token.kind == "num":
            if not token.text.isdigit():
                if not self.allow_decimals:
                    raise ExprSyntaxError(f"decimal literal '{token.text}' not allowed in rational mode", token.column)
                return Const(Fraction(token.text))
            return Const(Fraction(int(token.text)))
        if token.kind == "name":
            return Var(token.text)
        if token.kind == "op" and token.text == "(":
            node = self.binary(1)
            self.expect(")")
            return node
        if token.kind == "end":
            raise ExprSyntaxError("unexpected end of input", token.column)
        raise ExprSyntaxError(f"unexpected '{token.text}'", token.column)


def parse(text: str, allow_decimals: bool = False) -> Expr:
    """Parse expression text; ExprSyntaxError carries the 1-based column of the problem."""
    return _Parser(text, allow_decimals).parse()


# --- Printing ---

def _const_text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator) if value >= 0 else f"({value.numerator})"
    return f"({value.numerator}/{value.denominator})"


def to_text(node: Expr) -> str:
    """Canonical fully parenthesized form; parse(to_text(e)) == e for parsed e."""
    match node:
        case Var(name):
            return name
        case Const(value):
            return _const_text(value)
        case Add(left, right):
            return f"({to_text(left)} + {to_text(right)})"
        case Sub(left, right):
            return f"({to_text(left)} - {to_text(right)})"
        case Mul(left, right):
            return f"({to_text(left)} * {to_text(right)})"
        case Div(left, right):
            return f"({to_text(left)} / {to_text(right)})"
        case Neg(operand):
            return f"(-{to_text(operand)})"
        case Pow(base, exponent):
            return f"({to_text(base)} ^ {exponent})"
    raise TypeError(f"not an expression node: {node!r}")


# --- Evaluation ---

def _power(x, exponent: int, ring: Ring):
    result, base = ring.one(), x
    while exponent:
        if exponent & 1:
            result = ring.mul(result, base)
        exponent >>= 1
        if exponent:
            base = ring.mul(base, base)
    return result


def evaluate(node: Expr, env: Mapping, ring: Ring = RATIONAL):
    """Evaluate over `ring`; division raises NotInvertible when the divisor is not a unit."""
    match node:
        case Var(name):
            if name not in env:
                raise UnboundVariable(name)
            return ring.coerce(env[name])
        case Const(value):
            return ring.coerce(value)
        case Add(left, right):
            return ring.add(evaluate(left, env, ring), evaluate(right, env, ring))
        case Sub(left, right):
            return ring.sub(evaluate(left, env, ring), evaluate(right, env, ring))
        case Mul(left, right):
            return ring.mul(evaluate(left, env, ring), evaluate(right, env, ring))
        case Div(left, right):
            divisor = ring.try_invert(evaluate(right, env, ring))
            return ring.mul(evaluate(left, env, ring), divisor)
        case Neg(operand):
            return ring.neg(evaluate(operand, env, ring))
        case Pow(base, exponent):
            return _power(evaluate(base, env, ring), exponent, ring)
    raise TypeError(f"not an expression node: {node!r}")


def variables(node: Expr) -> list[str]:
    """Free variables, sorted."""
    found = set()

    def walk(n: Expr):
        match n:
            case Var(name):
                found.add(name)
            case Const():
                pass
            case Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b):
                walk(a)
                walk(b)
            case Neg(a) | Pow(a, _):
                walk(a)

    walk(node)
    return sorted(found)


def compose(node: Expr, substitution: Mapping[str, Expr]) -> Expr:
    """Replace variables by expressions; unmapped variables stay as they are."""
    match node:
        case Var(name):
            return substitution.get(name, node)
        case Const():
            return node
        case Add(a, b):
            return Add(compose(a, substitution), compose(b, substitution))
        case Sub(a, b):
            return Sub(compose(a, substitution), compose(b, substitution))
        case Mul(a, b):
            return Mul(compose(a, substitution), compose(b, substitution))
        case Div(a, b):
            return Div(compose(a, substitution), compose(b, substitution))
        case Neg(a):
            return Neg(compose(a, substitution))
        case Pow(a, k):
            return Pow(compose(a, substitution), k)
    raise TypeError(f"not an expression node: {node!r}")


# --- Symbolic differentiation ---

ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def _is_const(node: Expr, value=None) -> bool:
    return isinstance(node, Const) and (value is None or node.value == value)


def _add(a: Expr, b: Expr) -> Expr:
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return Add(a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return _neg(b)
    return Sub(a, b)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    if _is_const(a, 0) or _is_const(b, 0):
        return ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    return Mul(a, b)


def _neg(a: Expr) -> Expr:
    if _is_const(a):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def _pow(a: Expr, k: int) -> Expr:
    if k == 0:
        return ONE
    if k == 1:
        return a
    if _is_const(a):
        return Const(a.value ** k)
    return Pow(a, k)


def _div(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0):
        return ZERO
    if _is_const(b, 1):
        return a
    return Div(a, b)


def symbolic_derivative(node: Expr, var: str) -> Expr:
    """d(node)/d(var) by the usual rules, with zero/one folding only."""
    match node:
        case Var(name):
            return ONE if name == var else ZERO
        case Const():
            return ZERO
        case Add(a, b):
            return _add(symbolic_derivative(a, var), symbolic_derivative(b, var))
        case Sub(a, b):
            return _sub(symbolic_derivative(a, var), symbolic_derivative(b, var))
        case Mul(a, b):
            return _add(_mul(symbolic_derivative(a, var), b), _mul(a, symbolic_derivative(b, var)))
        case Div(a, b):
            da, db = symbolic_derivative(a, var), symbolic_derivative(b, var)
            if _is_const(db, 0):
                return _div(da, b)
            return _div(_sub(_mul(da, b), _mul(a, db)), _pow(b, 2))
        case Neg(a):
            return _neg(symbolic_derivative(a, var))
        case Pow(a, k):
            if k == 0:
                return ZERO
            return _mul(_mul(Const(k), _pow(a, k - 1)), symbolic_derivative(a, var))
    raise TypeError(f"not an expression node: {node!r}")
