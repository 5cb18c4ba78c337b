"""Complex-valued expressions in one variable ``z``.

Grammar (lowest to highest precedence)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' unary)?          # right-associative
    atom    := NUMBER | 'z' | 'i' | 'pi' | 'e'
             | FUNC '(' expr ')' | '(' expr ')'
    FUNC    := exp | log | sin | cos | tan | sqrt

Evaluation works on scalars and on numpy arrays alike. Multivalued
functions use the principal branch.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "Binary",
    "Call",
    "Constant",
    "ExpressionError",
    "ExpressionSyntaxError",
    "FUNCTIONS",
    "NonFinite",
    "Unary",
    "UnknownIdentifierError",
    "Variable",
    "evaluate",
    "evaluate_array",
    "parse_expression",
    "to_text",
]


class _NonFiniteType:
    """Marker for an evaluation that produced an infinite or undefined value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NonFinite"

    def __bool__(self):
        return False

    def __reduce__(self):
        return (_NonFiniteType, ())


NonFinite = _NonFiniteType()


class ExpressionError(ValueError):
    """Base class for parse failures."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ExpressionSyntaxError(ExpressionError):
    pass


class UnknownIdentifierError(ExpressionError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown identifier {name!r}", position)
        self.name = name


@dataclass(frozen=True)
class Constant:
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class Variable:
    pass


@dataclass(frozen=True)
class Unary:
    op: str  # only "neg"
    operand: "Node"


@dataclass(frozen=True)
class Binary:
    op: str  # add, sub, mul, div, pow
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Constant, Variable, Unary, Binary, Call]

BINARY_OPS = ("add", "sub", "mul", "div", "pow")
FUNCTIONS = ("exp", "log", "sin", "cos", "tan", "sqrt")
CONSTANTS = {"i": 1j, "pi": math.pi, "e": math.e}

_SYMBOL_TO_OP = {"+": "add", "-": "sub", "*": "mul", "/": "div", "^": "pow"}
_OP_TO_SYMBOL = {v: k for k, v in _SYMBOL_TO_OP.items()}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # number, ident, op, end
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def accept(self, *symbols: str) -> _Token | None:
        tok = self.current
        if tok.kind == "op" and tok.text in symbols:
            return self.advance()
        return None

    def expect(self, symbol: str) -> _Token:
        tok = self.accept(symbol)
        if tok is None:
            raise self.unexpected(f"expected {symbol!r}")
        return tok

    def unexpected(self, what: str) -> ExpressionSyntaxError:
        tok = self.current
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        return ExpressionSyntaxError(f"{what}, found {found}", tok.pos)

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != "end":
            raise self.unexpected("expected operator or end of input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while (tok := self.accept("+", "-")) is not None:
            node = Binary(_SYMBOL_TO_OP[tok.text], node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while (tok := self.accept("*", "/")) is not None:
            node = Binary(_SYMBOL_TO_OP[tok.text], node, self.unary())
        return node

    def unary(self) -> Node:
        if self.accept("-"):
            return Unary("neg", self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.accept("^"):
            return Binary("pow", base, self.unary())
        return base

    def atom(self) -> Node:
        tok = self.current
        if tok.kind == "number":
            self.advance()
            return Constant(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            if tok.text == "z":
                return Variable()
            if tok.text in CONSTANTS:
                return Constant(CONSTANTS[tok.text])
            if tok.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(tok.text, arg)
            raise UnknownIdentifierError(tok.text, tok.pos)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        raise self.unexpected("expected a number, identifier or '('")


def parse_expression(text: str) -> Node:
    """Parse ``text`` into an expression tree.

    Raises ExpressionSyntaxError (with ``position``) on malformed input
    and UnknownIdentifierError (with ``name``) on unrecognised names.
    """
    return _Parser(text).parse()


# Printing. Precedence levels: 1 additive, 2 multiplicative, 3 negation,
# 4 power, 5 atoms.
_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2}


def _format_real(x: float) -> str:
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _print(node: Node) -> tuple[str, int]:
    if isinstance(node, Variable):
        return "z", 5
    if isinstance(node, Constant):
        v = node.value
        if v == 1j:
            return "i", 5
        if v.imag == 0 and v.real >= 0 and math.isfinite(v.real):
            return _format_real(v.real), 5
        # not producible by the parser; printed as an equivalent expression
        text = f"{_format_real(v.real)} + {_format_real(v.imag)}*i"
        return f"({text})", 5
    if isinstance(node, Call):
        return f"{node.func}({_print(node.arg)[0]})", 5
    if isinstance(node, Unary):
        text, prec = _print(node.operand)
        if prec < 3:
            text = f"({text})"
        return f"-{text}", 3
    if isinstance(node, Binary):
        left, lp = _print(node.left)
        right, rp = _print(node.right)
        if node.op == "pow":
            if lp < 5:
                left = f"({left})"
            if rp < 3:
                right = f"({right})"
            return f"{left}^{right}", 4
        prec = _PREC[node.op]
        if lp < prec:
            left = f"({left})"
        if rp <= prec:
            right = f"({right})"
        return f"{left} {_OP_TO_SYMBOL[node.op]} {right}", prec
    raise TypeError(f"not an expression node: {node!r}")


def to_text(node: Node) -> str:
    """Render ``node`` as text that parses back to the same tree."""
    return _print(node)[0]


_UFUNCS = {
    "exp": np.exp,
    "log": np.log,
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "sqrt": np.sqrt,
}

_BINARY_UFUNCS = {
    "add": np.add,
    "sub": np.subtract,
    "mul": np.multiply,
    "div": np.true_divide,
}


def _power(base: np.ndarray, exponent: np.ndarray) -> np.ndarray:
    # Integer exponents by repeated squaring: exact for rational functions
    # and avoids the log/exp route of the generic complex power.
    if exponent.size and np.all(exponent == exponent.flat[0]):
        n = exponent.flat[0]
        if n.imag == 0 and n.real.is_integer() and abs(n.real) <= 64:
            p = int(n.real)
            result = np.ones_like(base)
            sq = base.copy()
            k = abs(p)
            while k:
                if k & 1:
                    result = result * sq
                sq = sq * sq
                k >>= 1
            return 1.0 / result if p < 0 else result
    # 0^w is 0 for Re w > 0; np.power returns nan there
    out = np.power(base, exponent)
    zero_base = (base == 0) & (exponent.real > 0)
    return np.where(zero_base, 0, out)


def _eval(node: Node, z: np.ndarray, bad: np.ndarray) -> np.ndarray:
    if isinstance(node, Variable):
        out = z
    elif isinstance(node, Constant):
        out = np.full(z.shape, node.value, dtype=complex)
    elif isinstance(node, Unary):
        out = -_eval(node.operand, z, bad)
    elif isinstance(node, Binary):
        left = _eval(node.left, z, bad)
        right = _eval(node.right, z, bad)
        if node.op == "pow":
            out = _power(left, right)
        else:
            out = _BINARY_UFUNCS[node.op](left, right)
    elif isinstance(node, Call):
        out = _UFUNCS[node.func](_eval(node.arg, z, bad))
    else:
        raise TypeError(f"not an expression node: {node!r}")
    bad |= ~np.isfinite(out)
    return out


def evaluate_array(node: Node, z) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate at every point of ``z``.

    Returns ``(values, nonfinite)`` where ``nonfinite`` flags points at which
    any intermediate result was infinite or undefined.
    """
    z = np.asarray(z, dtype=complex)
    bad = np.zeros(z.shape, dtype=bool)
    with np.errstate(all="ignore"):
        values = _eval(node, z, bad)
    return np.asarray(values, dtype=complex), bad


def evaluate(node: Node, z: complex):
    """Evaluate at a single point; returns ``NonFinite`` on failure."""
    values, bad = evaluate_array(node, np.array([z], dtype=complex))
    if bad[0]:
        return NonFinite
    value = complex(values[0])
    if not cmath.isfinite(value):
        return NonFinite
    return value
