"""The operators ev^w, theta_d, eta and r on U^{-,0}.

Every operator is first computed on a single basis monomial with integer
coefficients (the structure constants are integral), cached, and only then
reduced into the target field.  This keeps prime-field and rational results
consistent and makes the divided lift eta^m / m! exact.
"""

from __future__ import annotations

import math
from collections import defaultdict
from functools import lru_cache
from typing import Callable, Iterable

from ..fields import binom_int
from .elements import Key, UElem, pair_index, row_sum

ZDict = dict  # Key -> int


def _accumulate(acc: defaultdict, terms: Iterable, scale: int = 1):
    for k, c in terms:
        acc[k] += scale * c


def _nonzero(acc) -> tuple:
    return tuple((k, c) for k, c in acc.items() if c)


def _apply_z(kernel: Callable[[Key], tuple], zterms: Iterable) -> dict:
    """Extend a monomial kernel linearly over an integer combination."""
    acc = defaultdict(int)
    for key, c in zterms:
        _accumulate(acc, kernel(key), c)
    return {k: c for k, c in acc.items() if c}


def _lift(P: UElem):
    """Integer representatives of the coefficients (rationals stay rational)."""
    f = P.field
    return [(k, f.lift(c)) for k, c in P.terms.items()]


# --- U^0 helpers -------------------------------------------------------------


@lru_cache(maxsize=None)
def _h1_times_h(l: int, H: tuple) -> tuple:
    """H_l * prod binom(H_s, n_s) in the binomial basis."""
    k = H[l - 1]
    up = list(H)
    up[l - 1] = k + 1
    out = [(tuple(up), k + 1)]
    if k:
        out.append((H, k))
    return tuple(out)


@lru_cache(maxsize=None)
def _theta_h(delta: tuple, H: tuple) -> tuple:
    """Expand prod binom(H_s + d_s, n_s) in the binomial basis."""
    partial = {(): 1}
    for d, e in zip(delta, H):
        nxt = {}
        for k in range(e + 1):
            c = binom_int(d, e - k)
            if c:
                for prefix, v in partial.items():
                    nxt[prefix + (k,)] = v * c
        partial = nxt
    return tuple(partial.items())


@lru_cache(maxsize=None)
def _ev_h(omega: tuple, H: tuple) -> int:
    c = 1
    for a, e in zip(omega, H):
        if e:
            c *= binom_int(a, e)
            if not c:
                return 0
    return c


def _check_weight(P: UElem, w, what: str) -> tuple:
    w = tuple(w)
    if len(w) != P.n - 1:
        raise ValueError(f"{what} must have {P.n - 1} coordinates, got {len(w)}")
    return w


def h1_times(l: int, P: UElem) -> UElem:
    """Left-multiply the U^0 part of every term by H_l."""
    if not 1 <= l < P.n:
        raise ValueError(f"simple-root index {l} out of range for n={P.n}")
    acc = defaultdict(int)
    for (N, H), c in _lift(P):
        for H2, k in _h1_times_h(l, H):
            acc[(N, H2)] += k * c
    return UElem.from_integer_terms(P.field, P.n, acc)


def theta(delta, P: UElem) -> UElem:
    """The twisting automorphism binom(H_s, k) -> binom(H_s + delta_s, k)."""
    delta = _check_weight(P, delta, "delta")
    if not any(delta):
        return P
    acc = defaultdict(int)
    for (N, H), c in _lift(P):
        for H2, k in _theta_h(delta, H):
            acc[(N, H2)] += k * c
    return UElem.from_integer_terms(P.field, P.n, acc)


def ev(omega, P: UElem) -> UElem:
    """Evaluate every binom(H_s, k) at binom(omega_s, k); the result lies in U^-."""
    omega = _check_weight(P, omega, "omega")
    zero_h = (0,) * (P.n - 1)
    acc = defaultdict(int)
    for (N, H), c in _lift(P):
        k = _ev_h(omega, H)
        if k:
            acc[(N, zero_h)] += k * c
    return UElem.from_integer_terms(P.field, P.n, acc)


# --- eta ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _eta_simple_key(n: int, l: int, key: Key) -> tuple:
    """eta_{alpha_l} of one monomial F^(M) H_M, over the integers.

    Reindexed by the input matrix M: each nonzero entry of M that one of the
    three families of the commutation formula can lower contributes once.
    """
    M, H = key
    idx = pair_index(n)
    acc = defaultdict(int)
    # E_{l,s} pieces that slide to E_{l+1,s}: output entry (s,l) gains one.
    for s in range(1, l):
        k = idx[(s, l + 1)]
        if M[k]:
            N = list(M)
            N[k] -= 1
            N[idx[(s, l)]] += 1
            N = tuple(N)
            acc[(N, H)] += N[idx[(s, l)]]
    # The E_{l+1,l} factor itself, leaving (H_l - N^l + N^{l+1}).
    k = idx.get((l, l + 1))
    if M[k]:
        N = list(M)
        N[k] -= 1
        N = tuple(N)
        for H2, c in _h1_times_h(l, H):
            acc[(N, H2)] += c
        shift = row_sum(n, N, l + 1) - row_sum(n, N, l)
        if shift:
            acc[(N, H)] += shift
    # E_{t,l} pieces that become E_{t,l+1}.
    for t in range(l + 2, n + 1):
        k = idx[(l, t)]
        if M[k]:
            N = list(M)
            N[k] -= 1
            N[idx[(l + 1, t)]] += 1
            N = tuple(N)
            acc[(N, H)] -= N[idx[(l + 1, t)]]
    return _nonzero(acc)


@lru_cache(maxsize=None)
def _eta_root_key(n: int, i: int, j: int, key: Key) -> tuple:
    if j == i + 1:
        return _eta_simple_key(n, i, key)
    simple = lambda k: _eta_simple_key(n, i, k)  # noqa: E731
    rest = lambda k: _eta_root_key(n, i + 1, j, k)  # noqa: E731
    acc = defaultdict(int)
    _accumulate(acc, _apply_z(simple, rest(key)).items())
    _accumulate(acc, _apply_z(rest, simple(key)).items(), -1)
    return _nonzero(acc)


@lru_cache(maxsize=None)
def _eta_divided_key(n: int, i: int, j: int, m: int, key: Key) -> tuple:
    kernel = lambda k: _eta_root_key(n, i, j, k)  # noqa: E731
    cur = {key: 1}
    for _ in range(m):
        cur = _apply_z(kernel, cur.items())
        if not cur:
            return ()
    fact = math.factorial(m)
    out = []
    for k, c in cur.items():
        q, r = divmod(c, fact)
        # The integral form guarantees exact division here.
        assert r == 0, f"eta power {c} not divisible by {m}! at {k}"
        out.append((k, q))
    return tuple(out)


def _check_root(n: int, i: int, j: int):
    if not 1 <= i < j <= n:
        raise ValueError(f"alpha({i},{j}) is not a positive root for n={n}")


def eta_simple(l: int, P: UElem) -> UElem:
    """eta for the simple root alpha_l, extended to all of U^{-,0}."""
    if not 1 <= l < P.n:
        raise ValueError(f"simple-root index {l} out of range for n={P.n}")
    zt = _apply_z(lambda k: _eta_simple_key(P.n, l, k), _lift(P))
    return UElem.from_integer_terms(P.field, P.n, zt)


def eta_root(i: int, j: int, P: UElem) -> UElem:
    """eta for alpha(i,j) = alpha_i + ... + alpha_{j-1} at m = 1."""
    _check_root(P.n, i, j)
    zt = _apply_z(lambda k: _eta_root_key(P.n, i, j, k), _lift(P))
    return UElem.from_integer_terms(P.field, P.n, zt)


def eta_divided(i: int, j: int, m: int, P: UElem) -> UElem:
    """eta_{alpha(i,j), m}, the divided power eta^m / m! of the m = 1 operator."""
    _check_root(P.n, i, j)
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return P
    zt = _apply_z(lambda k: _eta_divided_key(P.n, i, j, m, k), _lift(P))
    return UElem.from_integer_terms(P.field, P.n, zt)


def r_raise(omega, i: int, j: int, m: int, F: UElem) -> UElem:
    """r^omega_{alpha(i,j), m}(F) = ev^omega(eta_{alpha(i,j), m}(F))."""
    return ev(omega, eta_divided(i, j, m, F))


def clear_caches():
    for fn in (_h1_times_h, _theta_h, _ev_h, _eta_simple_key, _eta_root_key, _eta_divided_key):
        fn.cache_clear()
