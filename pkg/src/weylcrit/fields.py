"""Exact coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction


def binom_int(a: int, k: int) -> int:
    """Generalized binomial coefficient a(a-1)...(a-k+1)/k! for any integer a.

    Returns 0 for k < 0, following the convention E^{(m)} = 0 for m < 0.
    """
    if k < 0:
        return 0
    if a >= 0:
        return math.comb(a, k)
    # binom(-b, k) = (-1)^k binom(b + k - 1, k)
    v = math.comb(k - a - 1, k)
    return -v if k % 2 else v


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldCtx:
    """Either the rationals (``p is None``) or the prime field F_p.

    Elements are plain Python numbers: ``int``/``Fraction`` over Q and
    residues ``0 <= x < p`` over F_p.
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "FieldCtx":
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls(None)
        m = re.fullmatch(r"F(\d+)", text)
        if not m:
            raise ValueError(f"unknown field {text!r}; use Q or F<p>")
        return cls(int(m.group(1)))

    @property
    def char(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __call__(self, x):
        """Reduce an integer or rational into the field."""
        p = self.p
        if p is None:
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            return x
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {p}")
            return x.numerator * pow(den, -1, p) % p
        return x % p

    def inv(self, x):
        if self.p is None:
            return self(Fraction(1) / x)
        return pow(x, -1, self.p)

    def div(self, a, b):
        if self.p is None:
            return self(Fraction(a) / b)
        return a * pow(b, -1, self.p) % self.p

    def lift(self, x) -> int | Fraction:
        """Integer (or rational) representative of a field element."""
        return x

    def format(self, x) -> str:
        return str(x)

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"


QQ = FieldCtx(None)


def GF(p: int) -> FieldCtx:
    return FieldCtx(p)
