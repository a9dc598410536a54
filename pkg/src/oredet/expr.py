"""Operator expressions: a recursive-descent parser and a canonical printer.

Grammar::

    expr   := ["+" | "-"] term { ("+" | "-") term }
    term   := factor { ("*" | "/") factor }
    factor := base [ "^" natural ]
    base   := integer | "x" | "d" | "(" expr ")"

Products are noncommutative and are normalised as they are read, so
``d*x`` is ``x*d + 1``.  A divisor must be a nonzero function of x alone;
``a / f`` means ``a * (1/f)``.
"""

from __future__ import annotations

import re
from .arith import Poly, RatFunc, Rational
from .errors import ParseError
from .ore import OreOp, ore_mul

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<x>x)|(?P<d>d|∂)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None) -> ParseError:
        tok = tok or self.peek()
        found = "end of input" if tok[0] == "end" else repr(tok[1])
        return ParseError(f"{message}, found {found}", self.text, tok[2])

    def accept(self, symbol: str) -> bool:
        kind, value, _ = self.peek()
        if kind == "op" and value == symbol:
            self.i += 1
            return True
        return False

    def parse(self) -> OreOp:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            raise self.error("expected operator or end of input")
        return result

    def expr(self) -> OreOp:
        negate = False
        if self.accept("-"):
            negate = True
        else:
            self.accept("+")
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            if self.accept("+"):
                acc = acc + self.term()
            elif self.accept("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> OreOp:
        acc = self.factor()
        while True:
            if self.accept("*"):
                acc = ore_mul(acc, self.factor())
            elif self.peek()[:2] == ("op", "/"):
                tok = self.take()
                divisor = self.factor()
                if divisor.is_zero():
                    raise ParseError("division by zero", self.text, tok[2])
                if divisor.order > 0:
                    raise ParseError("divisor must not contain d", self.text, tok[2])
                acc = ore_mul(acc, OreOp.scalar(divisor.coeff(0).inverse()))
            else:
                return acc

    def factor(self) -> OreOp:
        base = self.base()
        if self.accept("^"):
            kind, value, _ = self.peek()
            if kind != "int":
                raise self.error("expected a natural exponent")
            self.take()
            return base ** int(value)
        return base

    def base(self) -> OreOp:
        kind, value, _ = self.peek()
        if kind == "int":
            self.take()
            return OreOp.scalar(int(value))
        if kind == "x":
            self.take()
            return OreOp.scalar(RatFunc.x())
        if kind == "d":
            self.take()
            return OreOp.d()
        if self.accept("("):
            inner = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return inner
        raise self.error("expected a number, 'x', 'd' or '('")


def parse_operator_expr(text: str) -> OreOp:
    return _Parser(text).parse()


def _power(symbol: str, k: int) -> str:
    return symbol if k == 1 else f"{symbol}^{k}"


def _rational(q: Rational, alone: bool) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}" if alone else f"({q.numerator}/{q.denominator})"


def _monomial(q: Rational, i: int, k: int) -> str:
    """Render ``|q| * x^i * d^k`` without sign."""
    q = abs(q)
    parts = []
    if q != 1 or (i == 0 and k == 0):
        parts.append(_rational(q, alone=(i == 0 and k == 0)))
    if i:
        parts.append(_power("x", i))
    if k:
        parts.append(_power("d", k))
    return "*".join(parts)


def _join(signed_terms: list[tuple[bool, str]]) -> str:
    if not signed_terms:
        return "0"
    out = []
    for n, (negative, body) in enumerate(signed_terms):
        if n == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


def render_poly(p: Poly) -> str:
    terms = [(c < 0, _monomial(c, i, 0)) for i, c in reversed(list(enumerate(p.coeffs))) if c]
    return _join(terms)


def _is_monomial(p: Poly) -> bool:
    return sum(1 for c in p.coeffs if c) == 1


def render_ratfunc(f: RatFunc) -> str:
    if f.in_ring():
        return render_poly(f.num)
    num = render_poly(f.num)
    if not _is_monomial(f.num) or f.num.lc() < 0:
        num = f"({num})"
    den = render_poly(f.den)
    if not (_is_monomial(f.den) and f.den.lc() == 1):
        den = f"({den})"
    return f"{num}/{den}"


def render_operator(a: OreOp) -> str:
    """Canonical form: descending powers of d, coefficients written left of d."""
    terms: list[tuple[bool, str]] = []
    for k in range(len(a.coeffs) - 1, -1, -1):
        c = a.coeffs[k]
        if c.is_zero():
            continue
        if c.in_ring():
            for i in range(len(c.num.coeffs) - 1, -1, -1):
                q = c.num.coeffs[i]
                if q:
                    terms.append((q < 0, _monomial(q, i, k)))
            continue
        num = c.num
        negative = _is_monomial(num) and num.lc() < 0
        body = render_ratfunc(-c if negative else c)
        if k:
            body += "*" + _power("d", k)
        terms.append((negative, body))
    return _join(terms)
