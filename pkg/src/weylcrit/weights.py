"""Weights of type A_{n-1} in fundamental coordinates.

A weight is a tuple ``(a_1, ..., a_{n-1})`` meaning a_1 w_1 + ... + a_{n-1} w_{n-1}.
Compositions of length n (epsilon coordinates) are used by the tableau side.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

Weight = tuple[int, ...]


def zero_weight(n: int) -> Weight:
    return (0,) * (n - 1)


def fundamental(n: int, i: int) -> Weight:
    if not 1 <= i <= n - 1:
        raise ValueError(f"fundamental index {i} out of range for n={n}")
    return tuple(int(k == i) for k in range(1, n))


def is_dominant(w: Sequence[int]) -> bool:
    return all(a >= 0 for a in w)


def height(w: Sequence[int]) -> int:
    """h(w) = a_1 + ... + a_{n-1}."""
    return sum(w)


def add(u: Sequence[int], v: Sequence[int]) -> Weight:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> Weight:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: int, u: Sequence[int]) -> Weight:
    return tuple(c * a for a in u)


@lru_cache(maxsize=None)
def root(n: int, i: int, j: int) -> Weight:
    """The positive root alpha(i, j) = alpha_i + ... + alpha_{j-1}, fundamental coords."""
    if not 1 <= i < j <= n:
        raise ValueError(f"no positive root ({i}, {j}) for n={n}")
    return tuple(
        int(l == i) - int(l + 1 == i) - int(l == j) + int(l + 1 == j)
        for l in range(1, n)
    )


def from_epsilon(mu: Sequence[int]) -> Weight:
    """Convert epsilon coordinates (length n) to fundamental coordinates."""
    return tuple(mu[l] - mu[l + 1] for l in range(len(mu) - 1))


def parse_weight(text: str, n: int) -> Weight:
    parts = [p for p in text.replace(" ", "").split(",") if p != ""]
    w = tuple(int(p) for p in parts)
    if len(w) != n - 1:
        raise ValueError(f"weight {text!r} needs {n - 1} coordinates for n={n}")
    return w


@lru_cache(maxsize=None)
def lower_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Pairs (a, b), a < b, in the canonical factor order of E_{b,a}."""
    return tuple((a, b) for b in range(2, n + 1) for a in range(1, b))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {ab: k for k, ab in enumerate(lower_pairs(n))}
