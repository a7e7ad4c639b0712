"""Tokenizer and recursive-descent parser for the textual element syntax.

The grammar covers scalars (``3/2``, ``1/2+3*sqrt(2)``), finite Hahn sums
(``2*x^(1/2) - 7*x^-3``) and lexicographic vectors (``(1, sqrt(2), 0)``).
Parsed values are plain dictionaries ``{exponent: (a, b)}`` standing for
``sum (a + b*sqrt(d)) * x^exponent``; callers wrap them in domain objects.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from .errors import FieldMismatch, ParseError

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<sqrt>sqrt|√)|(?P<x>x)|(?P<op>[-+*/^(){},−]))"
)

Value = dict  # exponent (mpq) -> (a: mpq, b: mpq)


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        val = m.group(kind)
        start = m.start(kind)
        if val == "−":
            val = "-"
        if kind == "sqrt":
            val = "sqrt"
        out.append((kind, val, start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text, d):
        self.text = text
        self.d = d
        self.toks = _tokenize(text)
        self.i = 0
        self.used_x = False

    def peek(self):
        return self.toks[self.i]

    def take(self, val=None):
        tok = self.toks[self.i]
        if val is not None and tok[1] != val:
            self.fail(f"expected {val!r}", tok)
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    # value algebra -------------------------------------------------------

    def _mul(self, u, v):
        out = {}
        for e1, (a1, b1) in u.items():
            for e2, (a2, b2) in v.items():
                e = e1 + e2
                if b1 or b2:
                    a = a1 * a2 + b1 * b2 * self.d
                    b = a1 * b2 + a2 * b1
                else:
                    a, b = a1 * a2, mpq(0)
                pa, pb = out.get(e, (mpq(0), mpq(0)))
                out[e] = (pa + a, pb + b)
        return {e: c for e, c in out.items() if c[0] or c[1]}

    @staticmethod
    def _add(u, v, sign=1):
        out = dict(u)
        for e, (a, b) in v.items():
            pa, pb = out.get(e, (mpq(0), mpq(0)))
            out[e] = (pa + sign * a, pb + sign * b)
        return {e: c for e, c in out.items() if c[0] or c[1]}

    # grammar -------------------------------------------------------------

    def expr(self):
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self._add({}, self.term(), sign)
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            acc = self._add(acc, self.term(), sign)
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[1] in ("*", "/"):
            if self.take()[1] == "*":
                acc = self._mul(acc, self.factor())
                continue
            tok = self.peek()
            q = self.rational()
            if not q:
                raise ParseError("division by zero", self.text, tok[2])
            acc = {e: (a / q, b / q) for e, (a, b) in acc.items()}
        return acc

    def rational(self):
        tok = self.peek()
        if tok[0] != "num":
            self.fail("expected a number")
        self.take()
        num = int(tok[1])
        if self.peek()[1] == "/":
            self.take()
            den_tok = self.peek()
            if den_tok[0] != "num":
                self.fail("expected a denominator")
            self.take()
            den = int(den_tok[1])
            if den == 0:
                raise ParseError("zero denominator", self.text, den_tok[2])
            return mpq(num, den)
        return mpq(num)

    def signed_rational(self):
        sign = 1
        if self.peek()[1] in ("-", "+"):
            sign = -1 if self.take()[1] == "-" else 1
        return sign * self.rational()

    def exponent(self):
        tok = self.peek()
        if tok[1] == "(":
            self.take()
            e = self.signed_rational()
            self.take(")")
            return e
        if tok[1] == "{":
            self.take()
            e = self.signed_rational()
            self.take("}")
            return e
        return self.signed_rational()

    def factor(self):
        kind, val, pos = self.peek()
        if kind == "num":
            return {mpq(0): (self.rational(), mpq(0))}
        if kind == "sqrt":
            self.take()
            self.take("(")
            tok = self.peek()
            if tok[0] != "num":
                self.fail("expected an integer radicand")
            self.take()
            self.take(")")
            radicand = int(tok[1])
            if self.d is None or radicand != self.d:
                raise FieldMismatch(
                    f"sqrt({radicand}) is not available in the active field "
                    f"(column {pos + 1} in {self.text!r})"
                )
            return {mpq(0): (mpq(0), mpq(1))}
        if kind == "x":
            self.take()
            self.used_x = True
            e = mpq(1)
            if self.peek()[1] == "^":
                self.take()
                e = self.exponent()
            return {e: (mpq(1), mpq(0))}
        if val == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        self.fail("expected a number, sqrt(...), x or '('")

    def finish(self):
        if self.peek()[0] != "end":
            self.fail("unexpected trailing input")


def parse_value(text: str, d: int | None) -> Value:
    """Parse a scalar or Hahn-sum expression into ``{exponent: (a, b)}``."""
    p = _Parser(text, d)
    if p.peek()[0] == "end":
        p.fail("empty expression")
    v = p.expr()
    p.finish()
    return v


def parse_scalar_parts(text: str, d: int | None) -> tuple:
    p = _Parser(text, d)
    if p.peek()[0] == "end":
        p.fail("empty expression")
    v = p.expr()
    p.finish()
    if p.used_x:
        raise ParseError("indeterminate x is not allowed in a scalar", text, 0)
    return v.get(mpq(0), (mpq(0), mpq(0)))


def split_vector(text: str) -> list[tuple[str, int]] | None:
    """Split ``(e1, e2, ...)`` into its top-level components.

    Returns ``None`` when the text is not a single parenthesised group.
    """
    s = text.strip()
    if not s.startswith("("):
        return None
    depth = 0
    offset = len(text) - len(text.lstrip())
    parts = []
    start = 1
    for i, ch in enumerate(s):
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
            if depth == 0 and i != len(s) - 1:
                return None
        elif ch == "," and depth == 1:
            parts.append((s[start:i], offset + start))
            start = i + 1
    if depth != 0:
        raise ParseError("unbalanced parentheses", text, len(text) - 1)
    parts.append((s[start:-1], offset + start))
    return parts


def format_rational(q) -> str:
    return str(mpq(q))


def format_exponent(e) -> str:
    e = mpq(e)
    if e.denominator == 1:
        return str(e)
    return f"({e})"
