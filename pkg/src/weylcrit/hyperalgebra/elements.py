"""Canonical elements of U^{-,0} for type A_{n-1}.

An element is a finite sum of basis monomials ``F^(N) * H`` where

* ``N`` is a strictly upper triangular matrix of nonnegative integers, stored
  as a flat tuple aligned with :func:`lower_pairs`, and ``F^(N)`` is the
  ordered product of divided powers ``E_{b,a}^(N[a,b])``;
* ``H`` is a tuple ``(n_1, ..., n_{n-1})`` standing for the product of the
  binomials ``binom(H_l, n_l)``, placed to the right of ``F^(N)``.

Factor order of ``F^(N)``: ``E_{b,a}`` precedes ``E_{d,c}`` iff ``b < d`` or
``b == d and a < c``.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Iterable, Mapping

from ..fields import FieldCtx
from .. import weights as W
from ..weights import lower_pairs, pair_index

Key = tuple[tuple[int, ...], tuple[int, ...]]


def zero_matrix(n: int) -> tuple[int, ...]:
    return (0,) * (n * (n - 1) // 2)


def matrix_from(n: int, entries: Mapping[tuple[int, int], int]) -> tuple[int, ...]:
    idx = pair_index(n)
    N = [0] * len(idx)
    for (a, b), v in entries.items():
        if (a, b) not in idx:
            raise ValueError(f"entry ({a}, {b}) is not strictly upper triangular for n={n}")
        N[idx[(a, b)]] = v
    return tuple(N)


def matrix_entries(n: int, N: tuple[int, ...]) -> dict[tuple[int, int], int]:
    return {ab: v for ab, v in zip(lower_pairs(n), N) if v}


def matrix_rows(n: int, N: tuple[int, ...]) -> list[list[int]]:
    """Full n x n nested list view of a flat matrix."""
    rows = [[0] * n for _ in range(n)]
    for (a, b), v in zip(lower_pairs(n), N):
        rows[a - 1][b - 1] = v
    return rows


def row_sum(n: int, N: tuple[int, ...], s: int) -> int:
    """N^s, the sum of row s."""
    idx = pair_index(n)
    return sum(N[idx[(s, b)]] for b in range(s + 1, n + 1))


def root_depth(n: int, N: tuple[int, ...]) -> tuple[int, ...]:
    """Simple-root coordinates k with weight(F^(N)) = -sum_l k_l alpha_l."""
    k = [0] * (n - 1)
    for (a, b), v in zip(lower_pairs(n), N):
        if v:
            for l in range(a - 1, b - 1):
                k[l] += v
    return tuple(k)


@lru_cache(maxsize=None)
def matrix_weight(n: int, N: tuple[int, ...]) -> tuple[int, ...]:
    w = [0] * (n - 1)
    for (a, b), v in zip(lower_pairs(n), N):
        if v:
            r = W.root(n, a, b)
            for l in range(n - 1):
                w[l] -= v * r[l]
    return tuple(w)


def total_height(n: int, N: tuple[int, ...]) -> int:
    """Total root height sum_{a<b} N[a,b] * (b - a)."""
    return sum(v * (b - a) for (a, b), v in zip(lower_pairs(n), N))


class UElem:
    """An immutable element of U^{-,0} with coefficients in ``field``.

    ``terms`` maps ``(N, H)`` keys to nonzero field elements.
    """

    __slots__ = ("field", "n", "terms", "_hash")

    def __init__(self, field: FieldCtx, n: int, terms: Mapping[Key, object] | Iterable = ()):
        if n < 2:
            raise ValueError("rank parameter n must be at least 2")
        self.field = field
        self.n = n
        acc = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            acc[key] += c
        self.terms = _clean(field, acc)
        self._hash = None

    @classmethod
    def _raw(cls, field: FieldCtx, n: int, terms: dict) -> "UElem":
        obj = object.__new__(cls)
        obj.field = field
        obj.n = n
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def from_integer_terms(cls, field: FieldCtx, n: int, zterms: Mapping[Key, int]) -> "UElem":
        return cls._raw(field, n, _clean(field, zterms))

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldCtx, n: int) -> "UElem":
        return cls._raw(field, n, {})

    @classmethod
    def scalar(cls, field: FieldCtx, n: int, c=1) -> "UElem":
        return cls(field, n, {(zero_matrix(n), (0,) * (n - 1)): c})

    @classmethod
    def one(cls, field: FieldCtx, n: int) -> "UElem":
        return cls.scalar(field, n, 1)

    @classmethod
    def monomial(cls, field: FieldCtx, n: int, N=None, H=None, coeff=1) -> "UElem":
        """F^(N) * H with ``N`` a flat tuple or a ``{(a, b): k}`` mapping."""
        if N is None:
            N = zero_matrix(n)
        elif isinstance(N, Mapping):
            N = matrix_from(n, N)
        else:
            N = tuple(N)
        if len(N) != n * (n - 1) // 2 or min(N, default=0) < 0:
            raise ValueError(f"bad matrix {N!r} for n={n}")
        H = (0,) * (n - 1) if H is None else tuple(H)
        if len(H) != n - 1 or min(H, default=0) < 0:
            raise ValueError(f"bad H exponents {H!r} for n={n}")
        return cls(field, n, {(N, H): coeff})

    @classmethod
    def E(cls, field: FieldCtx, n: int, j: int, i: int, m: int = 1) -> "UElem":
        """The divided power E_{j,i}^(m), j > i (zero for m < 0)."""
        if not 1 <= i < j <= n:
            raise ValueError(f"E({j},{i}) is not a lowering generator for n={n}")
        if m < 0:
            return cls.zero(field, n)
        return cls.monomial(field, n, {(i, j): m})

    @classmethod
    def h(cls, field: FieldCtx, n: int, l: int, k: int = 1) -> "UElem":
        """The binomial element H_{alpha_l, k} = binom(H_l, k)."""
        H = [0] * (n - 1)
        H[l - 1] = k
        return cls.monomial(field, n, None, H)

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "UElem"):
        if not isinstance(other, UElem):
            return NotImplemented
        if other.field != self.field or other.n != self.n:
            raise ValueError("elements live in different algebras")

    def __add__(self, other):
        if isinstance(other, int):
            other = UElem.scalar(self.field, self.n, other)
        self._check(other)
        acc = defaultdict(int, self.terms)
        for k, c in other.terms.items():
            acc[k] += c
        return UElem._raw(self.field, self.n, _clean(self.field, acc))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return UElem._raw(f, self.n, {k: f(-c) for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = UElem.scalar(self.field, self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "UElem":
        f = self.field
        c = f(c)
        if c == 0:
            return UElem.zero(f, self.n)
        return UElem._raw(f, self.n, {k: f(v * c) for k, v in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, UElem):
            raise TypeError("products in U^{-,0} are not supported; use the operators")
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = UElem.scalar(self.field, self.n, other)
        if not isinstance(other, UElem):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.n, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    # predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def in_lower(self) -> bool:
        """True when every term has trivial H part, i.e. the element is in U^-."""
        return all(not any(H) for _, H in self.terms)

    def is_scalar(self) -> bool:
        z = zero_matrix(self.n)
        return bool(self.terms) and all(N == z and not any(H) for N, H in self.terms)

    def scalar_value(self):
        if not self.terms:
            return self.field(0)
        if not self.is_scalar():
            raise ValueError("element is not a scalar")
        (c,) = self.terms.values()
        return c

    def leading_key(self) -> Key:
        """The canonically least monomial key."""
        return min(self.terms)

    def normalized(self) -> "UElem":
        """Scalar multiple whose canonically least monomial has coefficient 1."""
        if not self.terms:
            return self
        c = self.terms[self.leading_key()]
        if c == 1:
            return self
        return self.scale(self.field.inv(c))

    def __repr__(self):
        from ..exprs import format_elem

        return f"UElem({self.field}, n={self.n}, {format_elem(self)!r})"

    def __str__(self):
        from ..exprs import format_elem

        return format_elem(self)


def _clean(field: FieldCtx, acc: Mapping) -> dict:
    out = {}
    for k, c in acc.items():
        c = field(c)
        if c != 0:
            out[k] = c
    return out


def weight_of(x: UElem):
    """Common weight of all terms in fundamental coordinates, or ``None`` if mixed."""
    if not x.terms:
        raise ValueError("the zero element has no weight")
    ws = {matrix_weight(x.n, N) for N, _ in x.terms}
    if len(ws) == 1:
        return ws.pop()
    return None


def weight_components(x: UElem) -> list[UElem]:
    """Split into weight-homogeneous pieces, ordered from the highest weight down."""
    groups = defaultdict(dict)
    for (N, H), c in x.terms.items():
        groups[root_depth(x.n, N)][(N, H)] = c
    return [
        UElem._raw(x.field, x.n, groups[k])
        for k in sorted(groups, key=lambda k: (sum(k), k))
    ]
