"""Row-standard tableaux on composition shapes and the orders used to compare them.

A tableau is stored as a tuple of ``n`` rows (some possibly empty), each a
weakly increasing tuple of entries from ``{1, ..., n}``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .fields import FieldCtx
from .flows import Flow
from .hyperalgebra.elements import UElem, pair_index

Tableau = tuple[tuple[int, ...], ...]
Composition = tuple[int, ...]


def make_tableau(rows: Iterable[Iterable[int]], n: int | None = None) -> Tableau:
    """Normalize rows to a tuple of tuples, padding with empty rows up to ``n``."""
    T = [tuple(r) for r in rows]
    if n is not None:
        if len(T) > n:
            raise ValueError(f"{len(T)} rows exceed n={n}")
        T += [()] * (n - len(T))
    return tuple(T)


def shape(T: Tableau) -> Composition:
    return tuple(len(r) for r in T)


def is_partition(lam: Sequence[int]) -> bool:
    return all(x >= y for x, y in zip(lam, lam[1:])) and all(x >= 0 for x in lam)


def is_row_standard(T: Tableau) -> bool:
    return all(all(x <= y for x, y in zip(r, r[1:])) for r in T)


def is_regular(T: Tableau) -> bool:
    """Row standard with every entry of row i at least i."""
    n = len(T)
    return is_row_standard(T) and all(
        all(i <= x <= n for x in r) for i, r in enumerate(T, start=1)
    )


def is_standard(T: Tableau) -> bool:
    """Row standard with strictly increasing columns."""
    if not is_row_standard(T):
        return False
    for upper, lower in zip(T, T[1:]):
        for c in range(min(len(upper), len(lower))):
            if upper[c] >= lower[c]:
                return False
    return True


def mat_of(T: Tableau) -> tuple[int, ...]:
    """Mat_T: entry (i, j), i < j, counts the j's in row i (flat canonical order)."""
    if not is_regular(T):
        raise ValueError(f"{T} is not a regular row standard tableau")
    n = len(T)
    idx = pair_index(n)
    N = [0] * len(idx)
    for i, row in enumerate(T, start=1):
        for x in row:
            if x > i:
                N[idx[(i, x)]] += 1
    return tuple(N)


def f_of(T: Tableau, field: FieldCtx) -> UElem:
    """F_T = F^(Mat_T)."""
    return UElem.monomial(field, len(T), mat_of(T))


def superstandard(lam: Sequence[int]) -> Tableau:
    """Row i filled with i."""
    return tuple((i,) * k for i, k in enumerate(lam, start=1))


def sigma(flow: Flow, i: int, T: Tableau) -> Tableau | None:
    """sigma_{flow,i}(T), or None when some edge (s, t) finds no t in row s.

    Removes the leftmost t, which is immaterial after the final sort.
    """
    if not is_regular(T):
        raise ValueError(f"{T} is not a regular row standard tableau")
    n = len(T)
    if flow.n != n:
        raise ValueError(f"flow on [1, {flow.n}] used with a tableau of {n} rows")
    rows = [list(r) for r in T]
    for s, t in flow.edges:
        row = rows[s - 1]
        try:
            row[row.index(t)] = s
        except ValueError:
            return None
    for k in range(i + 1, n + 1):
        rows[k - 1].append(k)
    return tuple(tuple(sorted(r)) for r in rows)


def restrict(T: Tableau, m: int) -> Tableau:
    """T[m]: drop every entry greater than m."""
    return tuple(tuple(x for x in r if x <= m) for r in T)


def chain(T: Tableau) -> list[Composition]:
    return [shape(restrict(T, m)) for m in range(1, len(T) + 1)]


def dominance_leq(lam: Sequence[int], mu: Sequence[int]) -> bool:
    if len(lam) != len(mu):
        raise ValueError("compositions of different lengths")
    s = t = 0
    for x, y in zip(lam, mu):
        s += x
        t += y
        if s > t:
            return False
    return True


def dominance_compare(lam, mu) -> int | None:
    """-1, 0, 1 for lam < mu, equal, lam > mu; None if incomparable."""
    lam, mu = tuple(lam), tuple(mu)
    if lam == mu:
        return 0
    if dominance_leq(lam, mu):
        return -1
    if dominance_leq(mu, lam):
        return 1
    return None


def antilex_compare(xs: Sequence, ys: Sequence) -> int | None:
    """Antilexicographic lift of dominance: the last differing component decides."""
    if len(xs) != len(ys):
        raise ValueError("sequences of different lengths")
    for x, y in zip(reversed(xs), reversed(ys)):
        c = dominance_compare(x, y)
        if c != 0:
            return c
    return 0


def tableau_compare(T: Tableau, S: Tableau) -> int | None:
    if shape(T) != shape(S):
        raise ValueError("tableaux of different shapes")
    return antilex_compare(chain(T), chain(S))


def tableau_less(T: Tableau, S: Tableau) -> bool:
    return tableau_compare(T, S) == -1


def tableau_leq(T: Tableau, S: Tableau) -> bool:
    return tableau_compare(T, S) in (-1, 0)


def tab_sum(S: Tableau, T: Tableau) -> Tableau:
    """Glue row k of S and row k of T, re-sorting each row."""
    if len(S) != len(T):
        raise ValueError("tableaux with different numbers of rows")
    return tuple(tuple(sorted(a + b)) for a, b in zip(S, T))


def coherent_partition(omega: Sequence[int]) -> Composition:
    """lambda_j = sum_{k >= j} c_k, a partition of length n with lambda_n = 0."""
    if any(c < 0 for c in omega):
        raise ValueError(f"weight {tuple(omega)} is not dominant")
    out = []
    acc = 0
    for c in reversed(omega):
        acc += c
        out.append(acc)
    return tuple(reversed(out)) + (0,)


def _strips(lo: tuple, cap: tuple):
    """Shapes mu with lo <= mu <= cap, mu_k <= lo_{k-1} (horizontal strip over lo)."""
    n = len(lo)

    def rec(k, prefix):
        if k == n:
            yield tuple(prefix)
            return
        hi = cap[k] if k == 0 else min(cap[k], lo[k - 1])
        for v in range(lo[k], hi + 1):
            yield from rec(k + 1, prefix + [v])

    yield from rec(0, [])


@lru_cache(maxsize=None)
def _standard(lam: tuple) -> tuple[Tableau, ...]:
    n = len(lam)
    out = []

    def rec(v, cur, rows):
        if v == n:
            if cur == lam:
                out.append(tuple(tuple(r) for r in rows))
            return
        for mu in _strips(cur, lam):
            if v == n - 1 and mu != lam:
                continue
            new_rows = [r + [v + 1] * (m - c) for r, m, c in zip(rows, mu, cur)]
            rec(v + 1, mu, new_rows)

    rec(0, (0,) * n, [[] for _ in range(n)])
    return tuple(sorted(out))


def enumerate_standard(lam: Sequence[int]) -> list[Tableau]:
    """All standard lam-tableaux with entries in {1, ..., len(lam)}, sorted by rows."""
    lam = tuple(lam)
    if not is_partition(lam):
        raise ValueError(f"{lam} is not a partition")
    return list(_standard(lam))


def regular_row_standard(lam: Sequence[int]) -> list[Tableau]:
    """All regular row standard lam-tableaux (entries of row i in [i, n])."""
    lam = tuple(lam)
    n = len(lam)
    per_row = [list(combinations_with_replacement(range(i, n + 1), k)) for i, k in enumerate(lam, 1)]
    out = [()]
    for options in per_row:
        out = [t + (r,) for t in out for r in options]
    return out
