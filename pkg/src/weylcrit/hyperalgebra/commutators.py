"""The flow-sum operators xi_i(a; b) and the nested commutators they equal.

``xi(i, a, b, P)`` sends ``sum_M F^(M) H_M`` to
``sum_M sum_Gamma sgn_i(Gamma) F^(M - Gamma) theta_{omega_i}(H_M)`` over the
flows of F_i(a; b), dropping terms with a negative entry in ``M - Gamma``.

``bracket_xi`` evaluates the right-normed commutator
``[eta_{s_1}, [eta_{s_2}, ..., [eta_{s_k}, theta_{omega_i}]]]`` directly.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Sequence

from ..flows import FlowError, check_shape, enumerate_family, sign_i
from .. import weights as W
from .elements import Key, UElem
from .operators import _apply_z, _eta_simple_key, _lift, _theta_h


def _check_cut(n: int, i: int):
    if not 1 <= i < n:
        raise ValueError(f"fundamental index {i} out of range for n={n}")


@lru_cache(maxsize=None)
def _family_data(n: int, i: int, a: tuple, b: tuple) -> tuple:
    return tuple((f.matrix(), sign_i(f, i)) for f in enumerate_family(n, i, a, b))


def xi(i: int, a: Sequence[int], b: Sequence[int], P: UElem) -> UElem:
    n = P.n
    _check_cut(n, i)
    a, b = check_shape(n, i, a, b)
    family = _family_data(n, i, a, b)
    delta = W.fundamental(n, i)
    acc = defaultdict(int)
    for (M, H), c in _lift(P):
        shifted = _theta_h(delta, H)
        for G, sgn in family:
            N = tuple(x - y for x, y in zip(M, G))
            if min(N, default=0) < 0:
                continue
            for H2, k in shifted:
                acc[(N, H2)] += sgn * k * c
    return UElem.from_integer_terms(P.field, n, acc)


# --- interleavings -----------------------------------------------------------


def satisfies_interleaving(seq: Sequence[int], a: int, i: int, b: int) -> bool:
    """Whether ``seq`` shuffles a, a+1, ..., i-1 with b, b-1, ..., i+1."""
    low = [x for x in seq if x < i]
    high = [x for x in seq if x > i]
    return (
        len(low) + len(high) == len(seq)
        and low == list(range(a, i))
        and high == list(range(b, i, -1))
    )


def infer_pair(seq: Sequence[int], i: int) -> tuple[int, int]:
    """The (a_j, b_j) whose interleaving condition O(a_j, i, b_j - 1) ``seq`` meets."""
    seq = list(seq)
    if i in seq:
        raise FlowError(f"interleaving {seq} may not contain the cut index {i}")
    low = [x for x in seq if x < i]
    high = [x for x in seq if x > i]
    a = low[0] if low else i
    top = high[0] if high else i
    if not satisfies_interleaving(seq, a, i, top):
        raise FlowError(
            f"{seq} does not shuffle an increasing run up to {i - 1} "
            f"with a decreasing run down to {i + 1}"
        )
    return a, top + 1


def bracket_word(i: int, interleavings: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """The index word s_q, i, s_{q-1}, i, ..., s_1, i."""
    word = []
    for seq in interleavings:
        word.extend(seq)
        word.append(i)
    return tuple(word)


def interleaving_shape(n: int, i: int, interleavings: Sequence[Sequence[int]]):
    """Sources and sinks (a, b) determined by interleavings listed from j = q down to 1."""
    pairs = [infer_pair(seq, i) for seq in interleavings]
    a = tuple(p[0] for p in reversed(pairs))
    b = tuple(p[1] for p in reversed(pairs))
    return check_shape(n, i, a, b)


@lru_cache(maxsize=None)
def _bracket_key(n: int, i: int, word: tuple, key: Key) -> tuple:
    if not word:
        N, H = key
        return tuple(((N, H2), c) for H2, c in _theta_h(W.fundamental(n, i), H))
    head, rest = word[0], word[1:]
    inner = lambda k: _bracket_key(n, i, rest, k)  # noqa: E731
    eta = lambda k: _eta_simple_key(n, head, k)  # noqa: E731
    acc = defaultdict(int)
    for k, c in _apply_z(eta, inner(key)).items():
        acc[k] += c
    for k, c in _apply_z(inner, eta(key)).items():
        acc[k] -= c
    return tuple((k, c) for k, c in acc.items() if c)


def bracket_word_apply(i: int, word: Sequence[int], P: UElem) -> UElem:
    """Right-normed commutator of eta_{alpha_l}, l in ``word``, around theta_{omega_i}."""
    n = P.n
    _check_cut(n, i)
    word = tuple(word)
    for l in word:
        if not 1 <= l < n:
            raise ValueError(f"simple-root index {l} out of range for n={n}")
    zt = _apply_z(lambda k: _bracket_key(n, i, word, k), _lift(P))
    return UElem.from_integer_terms(P.field, n, zt)


def bracket_xi(i: int, interleavings: Sequence[Sequence[int]], P: UElem) -> UElem:
    """Evaluate the commutator built from interleavings s_q, ..., s_1 (validated)."""
    _check_cut(P.n, i)
    interleaving_shape(P.n, i, interleavings)
    return bracket_word_apply(i, bracket_word(i, interleavings), P)


def all_interleavings(a: int, i: int, top: int) -> list[tuple[int, ...]]:
    """Every shuffle of a, ..., i-1 with top, top-1, ..., i+1."""
    low = tuple(range(a, i))
    high = tuple(range(top, i, -1))
    out = []

    def rec(x, y, acc):
        if x == len(low) and y == len(high):
            out.append(tuple(acc))
            return
        if x < len(low):
            rec(x + 1, y, acc + [low[x]])
        if y < len(high):
            rec(x, y + 1, acc + [high[y]])

    rec(0, 0, [])
    return out
