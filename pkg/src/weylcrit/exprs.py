"""Text form of U^{-,0} elements: a small parser and a canonical printer.

Grammar (whitespace ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := coeff ['*' factors] | factors
    coeff  := int ['/' int]
    factors:= factor ('*' factor)*
    factor := 'E(' int ',' int ')' ['^(' int ')']  |  'H(' int ')' ['^(' int ')']

``E(j,i)^(m)`` is the divided power E_{j,i}^(m) with j > i and ``H(l)^(k)``
is binom(H_l, k).  E factors must appear in canonical order, adjacent equal
generators merge as E^(a) E^(b) = binom(a+b, a) E^(a+b), and H factors, if
any, follow all E factors with strictly increasing l.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .fields import FieldCtx
from .hyperalgebra.elements import UElem, matrix_from, lower_pairs


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.message = message
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class _Parser:
    def __init__(self, text: str, n: int, field: FieldCtx):
        self.text = text
        self.n = n
        self.field = field
        self.pos = 0

    def error(self, msg, pos=None):
        raise ParseError(msg, self.pos if pos is None else pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str):
        self.skip()
        if not self.text.startswith(s, self.pos):
            got = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            self.error(f"expected {s!r}, found {got!r}")
        self.pos += len(s)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def parse(self) -> UElem:
        self.skip()
        if not self.text.strip():
            self.error("empty expression")
        acc = UElem.zero(self.field, self.n)
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        acc = acc + self.term().scale(sign)
        while True:
            c = self.peek()
            if c == "":
                return acc
            if c not in "+-":
                self.error(f"unexpected character {c!r}")
            self.pos += 1
            t = self.term()
            acc = acc + (t if c == "+" else -t)

    def term(self) -> UElem:
        coeff = 1
        c = self.peek()
        if c.isdigit():
            coeff = Fraction(self.integer())
            if self.peek() == "/":
                self.pos += 1
                pos = self.pos
                den = self.integer()
                if den == 0:
                    self.error("zero denominator", pos)
                coeff /= den
            if self.peek() != "*":
                return UElem.scalar(self.field, self.n, self._coeff(coeff))
            self.pos += 1
        elif c not in ("E", "H"):
            self.error("expected a coefficient or a factor")
        return self.factors(coeff)

    def _coeff(self, c):
        try:
            return self.field(c)
        except ZeroDivisionError as exc:
            self.error(str(exc))

    def factors(self, coeff) -> UElem:
        n = self.n
        runs: list[list] = []  # [(j, i), power, start position]
        H = [0] * (n - 1)
        last_h = 0
        while True:
            self.skip()
            start = self.pos
            c = self.peek()
            if c == "E":
                if last_h:
                    self.error("E factors must precede H factors", start)
                self.pos += 1
                self.expect("(")
                j = self.integer()
                self.expect(",")
                i = self.integer()
                self.expect(")")
                m = self.power()
                if not j > i:
                    self.error(f"E({j},{i}) needs j > i", start)
                if not 1 <= i < j <= n:
                    self.error(f"E({j},{i}) out of range for n={n}", start)
                if runs and runs[-1][0] == (j, i):
                    a = runs[-1][1]
                    coeff *= math.comb(a + m, a)
                    runs[-1][1] = a + m
                else:
                    if runs and (j, i) < runs[-1][0]:
                        prev = runs[-1][0]
                        self.error(
                            f"non-canonical product: E({prev[0]},{prev[1]}) must come after E({j},{i})",
                            start,
                        )
                    runs.append([(j, i), m, start])
            elif c == "H":
                self.pos += 1
                self.expect("(")
                l = self.integer()
                self.expect(")")
                k = self.power()
                if not 1 <= l < n:
                    self.error(f"H({l}) out of range for n={n}", start)
                if l <= last_h:
                    self.error(f"non-canonical product: H factors need increasing indices", start)
                last_h = l
                H[l - 1] = k
            else:
                self.error("expected a factor E(j,i) or H(l)")
            if self.peek() != "*":
                break
            self.pos += 1
        N = matrix_from(n, {(i, j): m for (j, i), m, _ in runs})
        return UElem.monomial(self.field, n, N, H, self._coeff(coeff))

    def power(self) -> int:
        if self.peek() == "^":
            self.pos += 1
            self.expect("(")
            m = self.integer()
            self.expect(")")
            return m
        return 1


def parse_expr(text: str, n: int, field: FieldCtx) -> UElem:
    """Parse ``text`` into a canonical element of U^{-,0} for type A_{n-1}."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return _Parser(text, n, field).parse()


def _format_coeff(field: FieldCtx, c) -> tuple[int, str]:
    """(sign, magnitude text) of a coefficient."""
    if field.is_rational:
        c = Fraction(c)
        sign = -1 if c < 0 else 1
        return sign, str(abs(c))
    return 1, str(c)


def format_monomial(n: int, N, H) -> str:
    parts = []
    for (a, b), k in zip(lower_pairs(n), N):
        if k:
            parts.append(f"E({b},{a})" + (f"^({k})" if k > 1 else ""))
    for l, k in enumerate(H, start=1):
        if k:
            parts.append(f"H({l})" + (f"^({k})" if k > 1 else ""))
    return "*".join(parts)


def format_elem(x: UElem) -> str:
    """Canonical text; ``parse_expr(format_elem(x))`` reproduces ``x``."""
    if not x.terms:
        return "0"
    out = []
    for (N, H), c in sorted(x.terms.items()):
        sign, mag = _format_coeff(x.field, c)
        mono = format_monomial(x.n, N, H)
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if sign < 0 else "") + body)
        else:
            out.append((" - " if sign < 0 else " + ") + body)
    return "".join(out)
