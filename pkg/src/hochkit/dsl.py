"""Recursive-descent parser for the operator/polynomial text language.

Grammar (whitespace and newlines are insignificant)::

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := unary (('*' unary) | ('/' INT))*
    unary  := '-' unary | '+' unary | power
    power  := atom ['^' INT]
    atom   := INT | VAR | 'D[' slot ('|' slot)* ']' | '(' expr ')'
    slot   := INT (',' INT)*

``VAR`` is ``x1``, ``x2``, ...  A ``D[...]`` group has one multi-index per
tensor slot, e.g. ``x1*D[1,0|0,2]`` is ``x1 * d1 (x) d2^2`` with ``m = 2``.
A polynomial may multiply an operator from the left; operators cannot be
multiplied together or raised to powers.
"""

import re
from fractions import Fraction

from .errors import DslError
from .exact_poly import Polynomial
from .multiop import MultiDiffOp

__all__ = ["parse_operator", "parse_polynomial", "tokenize"]

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+)|(?P<var>x\d+)|(?P<dop>D\s*\[)|(?P<punct>[-+*/^()\[\]|,])"
)

ATOM_START = frozenset({"integer", "variable", "D[", "("})


class Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self):
        return f"Token({self.kind!r}, {self.text!r}, {self.pos})"


def _line_col(src, pos):
    line = src.count("\n", 0, pos) + 1
    col = pos - (src.rfind("\n", 0, pos) + 1) + 1
    return line, col


def tokenize(src):
    tokens = []
    pos = 0
    while pos < len(src):
        mt = _TOKEN.match(src, pos)
        if mt is None:
            line, col = _line_col(src, pos)
            raise DslError(f"unexpected character {src[pos]!r}", line, col,
                           ATOM_START | {"+", "-", "*", "/", "^", ")"})
        kind = mt.lastgroup
        if kind != "ws":
            text = mt.group()
            if kind == "punct":
                kind = text
            elif kind == "dop":
                kind = "D["
            elif kind == "num":
                kind = "integer"
            elif kind == "var":
                kind = "variable"
            tokens.append(Token(kind, text, pos))
        pos = mt.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


def _infer_vars(tokens):
    # the first D[...] fixes m via its first slot; otherwise the largest variable index
    for k, t in enumerate(tokens):
        if t.kind == "D[":
            width = 1
            for u in tokens[k + 1 :]:
                if u.kind == ",":
                    width += 1
                elif u.kind != "integer":
                    break
            return width
    idx = [int(t.text[1:]) for t in tokens if t.kind == "variable"]
    return max(idx, default=1)


class _Parser:
    def __init__(self, src, m):
        self.src = src
        self.tokens = tokenize(src)
        self.m = _infer_vars(self.tokens) if m is None else m
        self.i = 0

    # -- helpers
    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, msg, expected=(), tok=None):
        tok = tok or self.tok
        line, col = _line_col(self.src, tok.pos)
        return DslError(msg, line, col, expected)

    def expect(self, kind):
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            raise self.error(f"unexpected {found!r}", {kind})
        return self.advance()

    # -- grammar
    def parse(self):
        val = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}", {"+", "-", "*", "/", "end of input"})
        return val

    def expr(self):
        neg = False
        if self.tok.kind in ("+", "-"):
            neg = self.advance().kind == "-"
        val = self.term()
        if neg:
            val = -val
        while self.tok.kind in ("+", "-"):
            sign = self.advance().kind
            at = self.tok
            rhs = self.term()
            val = self.combine(val, -rhs if sign == "-" else rhs, at)
        return val

    def combine(self, a, b, at):
        if isinstance(a, MultiDiffOp) and isinstance(b, MultiDiffOp):
            if a.arity != b.arity:
                raise self.error(
                    f"arity inconsistency: summand of arity {b.arity} added to arity {a.arity}",
                    tok=at,
                )
            return a + b
        if isinstance(a, Polynomial) and isinstance(b, Polynomial):
            return a + b
        raise self.error("cannot add a polynomial and an operator", tok=at)

    def term(self):
        val = self.unary()
        while self.tok.kind in ("*", "/"):
            kind = self.advance().kind
            at = self.tok
            if kind == "/":
                n = int(self.expect("integer").text)
                if n == 0:
                    raise self.error("division by zero", tok=at)
                val = val * Fraction(1, n)
                continue
            rhs = self.unary()
            if isinstance(rhs, MultiDiffOp):
                if isinstance(val, MultiDiffOp):
                    raise self.error("operators cannot be multiplied together", tok=at)
                val = rhs.times_poly(val)
            elif isinstance(val, MultiDiffOp):
                raise self.error("a polynomial factor must precede the operator", tok=at)
            else:
                val = val * rhs
        return val

    def unary(self):
        if self.tok.kind == "-":
            self.advance()
            return -self.unary()
        if self.tok.kind == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "^":
            at = self.tok
            self.advance()
            k = int(self.expect("integer").text)
            if isinstance(base, MultiDiffOp):
                raise self.error("operators cannot be raised to a power", tok=at)
            base = base**k
        return base

    def atom(self):
        t = self.tok
        if t.kind == "integer":
            self.advance()
            return Polynomial.constant(self.m, int(t.text))
        if t.kind == "variable":
            self.advance()
            i = int(t.text[1:])
            if not 1 <= i <= self.m:
                raise self.error(f"variable index {i} exceeds m={self.m}", tok=t)
            return Polynomial.variable(self.m, i)
        if t.kind == "D[":
            return self.dop()
        if t.kind == "(":
            self.advance()
            val = self.expr()
            self.expect(")")
            return val
        found = t.text or "end of input"
        raise self.error(f"unexpected {found!r}", ATOM_START)

    def dop(self):
        self.advance()
        slots = [self.slot()]
        while self.tok.kind == "|":
            self.advance()
            slots.append(self.slot())
        if self.tok.kind != "]":
            raise self.error(f"unexpected {self.tok.text or 'end of input'!r}", {",", "|", "]"})
        self.advance()
        return MultiDiffOp(self.m, len(slots), {tuple(slots): 1})

    def slot(self):
        start = self.tok
        exps = [int(self.expect("integer").text)]
        while self.tok.kind == ",":
            self.advance()
            exps.append(int(self.expect("integer").text))
        if len(exps) != self.m:
            raise self.error(f"slot has {len(exps)} exponents, expected m={self.m}", tok=start)
        return tuple(exps)


def parse_operator(src, m=None, arity=None):
    """Parse operator text into a canonical :class:`MultiDiffOp`.

    ``m`` is inferred from the first ``D[...]`` group when omitted.  The text
    ``0`` denotes the zero operator of the given ``arity`` (default 1).
    """
    p = _Parser(src, m)
    val = p.parse()
    if isinstance(val, Polynomial):
        if val:
            raise DslError("expected an operator term D[...]", 1, 1, {"D["})
        return MultiDiffOp.zero(p.m, arity or 1)
    if arity is not None and val.arity != arity:
        raise DslError(f"expected arity {arity}, got {val.arity}", 1, 1)
    return val


def parse_polynomial(src, m=None):
    p = _Parser(src, m)
    val = p.parse()
    if isinstance(val, MultiDiffOp):
        raise DslError("expected a polynomial, found an operator", 1, 1)
    return val
