"""Parser for classical and operator polynomial expressions.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') ['-'] term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := var | 'i' | 'hbar' | 'tau' | int ('/' uint)? | '(' expr ')'
    var    := ('x'|'p') uint      classical mode
            | ('X'|'P') uint      operator mode

Multiplication must be written explicitly so operator word order is never
ambiguous. Operator expressions keep factor order and are normal-ordered
as they are built.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .phase_space import ClassicalPolynomial
from .scalars import HBAR, I, TAU, Coefficient
from .weyl_algebra import Generator, OperatorPolynomial

__all__ = ["ParseError", "ObservableExpression", "parse_observable", "parse_ast", "expression_words"]

MODES = ("classical", "operator")


class ParseError(ValueError):
    """Bad input text. ``kind`` is lexical, syntax, exponent or identifier."""

    def __init__(self, kind: str, message: str, position: int, source: str = ""):
        self.kind = kind
        self.position = position
        self.source = source
        super().__init__(f"{kind} error at position {position}: {message}")

    def caret(self) -> str:
        return f"{self.source}\n{' ' * self.position}^"


# tokens ---------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, END
    text: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^()]))")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError("lexical", f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(Token("INT", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(Token("NAME", m.group(2), start))
        else:
            tokens.append(Token("OP", m.group(3), start))
        pos = m.end()
    tokens.append(Token("END", "", len(text)))
    return tokens


# syntax tree -----------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str  # "i", "hbar", "tau"


@dataclass(frozen=True)
class Var:
    kind: str  # "x" or "p"
    index: int


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = Union[Num, Sym, Var, BinOp, Neg, Pow]

_VAR_RE = re.compile(r"([xpXP])(\d+)$")


class _Parser:
    def __init__(self, text: str, mode: str):
        self.text = text
        self.mode = mode
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, kind: str, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(kind, message, tok.pos, self.text)

    def at(self, text: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == text

    def parse(self) -> Node:
        if self.tok.kind == "END":
            raise self.error("syntax", "empty expression")
        node = self.expr()
        if self.tok.kind != "END":
            raise self.error("syntax", f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Node:
        node = self.signed_term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            rhs = self.signed_term()
            node = BinOp(op, node, rhs)
        return node

    def signed_term(self) -> Node:
        if self.at("-"):
            self.advance()
            return Neg(self.term())
        if self.at("+"):
            self.advance()
        return self.term()

    def term(self) -> Node:
        node = self.factor()
        while self.at("*"):
            self.advance()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Node:
        base = self.atom()
        if not self.at("^"):
            return base
        self.advance()
        if self.at("-"):
            raise self.error("exponent", "negative exponents are not allowed")
        if self.tok.kind != "INT":
            raise self.error("syntax", "expected a non-negative integer exponent")
        exp_tok = self.advance()
        if self.at("/"):
            raise self.error("exponent", "fractional exponents are not allowed")
        return Pow(base, int(exp_tok.text))

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "INT":
            self.advance()
            value = Fraction(int(tok.text))
            if self.at("/"):
                self.advance()
                if self.tok.kind != "INT":
                    raise self.error("syntax", "expected an integer denominator")
                den_tok = self.advance()
                den = int(den_tok.text)
                if den == 0:
                    raise self.error("syntax", "zero denominator", den_tok)
                value = value / den
            return Num(value)
        if tok.kind == "NAME":
            self.advance()
            return self.name(tok)
        if self.at("("):
            self.advance()
            node = self.expr()
            if not self.at(")"):
                raise self.error("syntax", "expected ')'")
            self.advance()
            return node
        if tok.kind == "END":
            raise self.error("syntax", "unexpected end of input")
        raise self.error("syntax", f"unexpected {tok.text!r}")

    def name(self, tok: Token) -> Node:
        if tok.text in ("i", "hbar", "tau"):
            return Sym(tok.text)
        m = _VAR_RE.match(tok.text)
        if m:
            letter, index = m.group(1), int(m.group(2))
            expected = letter.islower() == (self.mode == "classical")
            if expected:
                if index < 1:
                    raise self.error("identifier", f"variable index must be >= 1 in {tok.text!r}", tok)
                return Var(letter.lower(), index)
            hint = "x1/p1" if self.mode == "classical" else "X1/P1"
            raise self.error(
                "identifier", f"{tok.text!r} is not valid in {self.mode} mode (use {hint})", tok
            )
        raise self.error("identifier", f"unknown identifier {tok.text!r}", tok)


def parse_ast(text: str, mode: str) -> Node:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    return _Parser(text, mode).parse()


# evaluation -------------------------------------------------------------------

_SYMBOLS = {"i": I, "hbar": HBAR, "tau": TAU}


def _evaluate(node: Node, scalar: Callable, var: Callable, mul: Callable, one):
    def go(n):
        if isinstance(n, Num):
            return scalar(Coefficient.coerce(n.value))
        if isinstance(n, Sym):
            return scalar(_SYMBOLS[n.name])
        if isinstance(n, Var):
            return var(n.kind, n.index)
        if isinstance(n, Neg):
            return -go(n.operand)
        if isinstance(n, Pow):
            base = go(n.base)
            out = one
            for _ in range(n.exponent):
                out = mul(out, base)
            return out
        left, right = go(n.left), go(n.right)
        if n.op == "+":
            return left + right
        if n.op == "-":
            return left - right
        return mul(left, right)

    return go(node)


def _span(node: Node) -> int:
    if isinstance(node, Var):
        return node.index
    if isinstance(node, Neg):
        return _span(node.operand)
    if isinstance(node, Pow):
        return _span(node.base)
    if isinstance(node, BinOp):
        return max(_span(node.left), _span(node.right))
    return 0


@dataclass(frozen=True)
class ObservableExpression:
    source: str
    mode: str
    parsed: Union[ClassicalPolynomial, OperatorPolynomial]
    variable_span: int
    ast: Node


def parse_observable(text: str, mode: str = "classical") -> ObservableExpression:
    ast = parse_ast(text, mode)
    if mode == "classical":
        cls = ClassicalPolynomial

        def var(kind, i):
            return cls.x(i) if kind == "x" else cls.p(i)
    else:
        cls = OperatorPolynomial

        def var(kind, i):
            return cls.generator(Generator(kind, i))

    parsed = _evaluate(ast, cls.scalar, var, lambda a, b: a * b, cls.scalar(1))
    return ObservableExpression(text, mode, parsed, _span(ast), ast)


class _WordSum:
    """Unreduced sum of operator words, for the representation oracle."""

    def __init__(self, terms):
        self.terms = [(c, w) for c, w in terms if c]

    def __add__(self, other):
        return _WordSum(self.terms + other.terms)

    def __neg__(self):
        return _WordSum([(-c, w) for c, w in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return _WordSum([(ca * cb, wa + wb) for ca, wa in self.terms for cb, wb in other.terms])


def expression_words(expr: ObservableExpression) -> list[tuple[Coefficient, tuple]]:
    """Expand an operator expression into words without commuting anything."""
    if expr.mode != "operator":
        raise ValueError("word expansion needs an operator-mode expression")
    result = _evaluate(
        expr.ast,
        lambda c: _WordSum([(c, ())]),
        lambda kind, i: _WordSum([(Coefficient.coerce(1), (Generator(kind, i),))]),
        lambda a, b: a * b,
        _WordSum([(Coefficient.coerce(1), ())]),
    )
    return result.terms
