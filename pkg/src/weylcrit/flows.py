"""Flows: edge sets on [1, n] whose components are increasing source-to-sink paths.

A flow has sources a_1 < ... < a_q and sinks b_1 > ... > b_q; every other
vertex is either untouched or a transit point with one edge in and one out.
An edge may not end at a source or start at a sink.

The family F_i(a; b) collects the flows with the given sources and sinks and
no transit point above i.  The operators L1, L2, L3, M1, M2 and R move
between neighbouring families; the ``inverse_op`` tables undo them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .weights import pair_index


class FlowError(ValueError):
    """Malformed flow data or a violated operator precondition."""


class NotWellDefined(FlowError):
    """The condition of the requested operator does not hold."""


@dataclass(frozen=True, order=True)
class Flow:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        es = tuple(sorted((int(s), int(t)) for s, t in edges))
        if len(set(es)) != len(es):
            raise FlowError(f"repeated edge in {es}")
        for s, t in es:
            if not 1 <= s < t <= n:
                raise FlowError(f"edge ({s}, {t}) is not increasing inside [1, {n}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", es)

    def __iter__(self):
        return iter(self.edges)

    def __len__(self):
        return len(self.edges)

    def __contains__(self, e):
        return tuple(e) in self.edges

    def __str__(self):
        return " ".join(f"({s},{t})" for s, t in self.by_end())

    def by_end(self) -> list[tuple[int, int]]:
        """Edges sorted by strictly decreasing end."""
        return sorted(self.edges, key=lambda e: -e[1])

    def out_edge(self, v: int):
        for e in self.edges:
            if e[0] == v:
                return e
        return None

    def in_edge(self, v: int):
        for e in self.edges:
            if e[1] == v:
                return e
        return None

    def replace(self, old, new) -> "Graph":
        es = [e for e in self.edges if e != tuple(old)]
        if len(es) == len(self.edges):
            raise FlowError(f"edge {old} not present")
        return Graph(self.n, es + [tuple(new)])

    def add(self, e) -> "Graph":
        return Graph(self.n, list(self.edges) + [tuple(e)])

    def remove(self, e) -> "Graph":
        es = [x for x in self.edges if x != tuple(e)]
        return Graph(self.n, es)

    def matrix(self) -> tuple[int, ...]:
        """The 0/1 strictly upper triangular matrix, flat in canonical pair order."""
        idx = pair_index(self.n)
        N = [0] * len(idx)
        for e in self.edges:
            N[idx[e]] = 1
        return tuple(N)


class Graph(NamedTuple):
    """Raw operator output: an edge multiset that may fail the flow invariants."""

    n: int
    edges: list

    def is_flow(self) -> bool:
        return try_flow(self.n, self.edges) is not None

    def as_flow(self) -> Flow:
        f = try_flow(self.n, self.edges)
        if f is None:
            raise FlowError(f"{sorted(self.edges)} is not a flow")
        return f


class Classification(NamedTuple):
    sources: tuple[int, ...]  # ascending
    sinks: tuple[int, ...]  # descending
    transit: tuple[int, ...]  # ascending
    sigma: tuple[int, ...]  # sigma[j-1] = k when a_j is linked to b_k


def _degrees(edges):
    indeg, outdeg = {}, {}
    for s, t in edges:
        outdeg[s] = outdeg.get(s, 0) + 1
        indeg[t] = indeg.get(t, 0) + 1
    return indeg, outdeg


def try_flow(n: int, edges) -> Flow | None:
    edges = [tuple(e) for e in edges]
    if len(set(edges)) != len(edges):
        return None
    if any(not 1 <= s < t <= n for s, t in edges):
        return None
    indeg, outdeg = _degrees(edges)
    if any(v > 1 for v in indeg.values()) or any(v > 1 for v in outdeg.values()):
        return None
    return Flow(n, edges)


def classify(flow: Flow) -> Classification:
    indeg, outdeg = _degrees(flow.edges)
    verts = set(indeg) | set(outdeg)
    sources = tuple(sorted(v for v in verts if v not in indeg))
    sinks = tuple(sorted((v for v in verts if v not in outdeg), reverse=True))
    transit = tuple(sorted(v for v in verts if v in indeg and v in outdeg))
    nxt = dict(flow.edges)
    sink_pos = {b: k + 1 for k, b in enumerate(sinks)}
    sigma = []
    for a in sources:
        v = a
        while v in nxt:
            v = nxt[v]
        sigma.append(sink_pos[v])
    return Classification(sources, sinks, transit, tuple(sigma))


def perm_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given in one-line notation on 1..q."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        v = start
        while not seen[v]:
            seen[v] = True
            v = perm[v] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def sign_i(flow: Flow, i: int) -> int:
    c = classify(flow)
    parity = sum(b - i for b in c.sinks) + len(c.transit)
    return perm_sign(c.sigma) * (-1 if parity % 2 else 1)


def check_shape(n: int, i: int, a: Sequence[int], b: Sequence[int]):
    """Validate a_1 < ... < a_q <= i < b_q < ... < b_1 inside [1, n]."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise FlowError(f"{len(a)} sources but {len(b)} sinks")
    if not 1 <= i <= n:
        raise FlowError(f"cut index {i} outside [1, {n}]")
    if any(x >= y for x, y in zip(a, a[1:])):
        raise FlowError(f"sources {a} must be strictly increasing")
    if any(x <= y for x, y in zip(b, b[1:])):
        raise FlowError(f"sinks {b} must be strictly decreasing")
    if a and not (1 <= a[0] and a[-1] <= i):
        raise FlowError(f"sources {a} must lie in [1, {i}]")
    if b and not (i < b[-1] and b[0] <= n):
        raise FlowError(f"sinks {b} must lie in [{i + 1}, {n}]")
    return a, b


def in_family(flow: Flow, i: int, a: Sequence[int], b: Sequence[int]) -> bool:
    c = classify(flow)
    return c.sources == tuple(a) and c.sinks == tuple(b) and all(v <= i for v in c.transit)


def family_of(flow: Flow, i: int):
    """(a, b) with ``flow`` in F_i(a; b), or None."""
    c = classify(flow)
    if any(v > i for v in c.transit) or any(v > i for v in c.sources):
        return None
    if any(v <= i for v in c.sinks):
        return None
    return c.sources, c.sinks


@lru_cache(maxsize=None)
def _enumerate(n: int, i: int, a: tuple, b: tuple) -> tuple[Flow, ...]:
    pool = frozenset(range(1, i + 1)) - set(a)
    sinks = frozenset(b)
    out = []

    def extend(k, cur, used_t, used_s, edges):
        # Path from source a[k] currently ends at cur.
        for v in sorted(pool - used_t):
            if v > cur:
                extend(k, v, used_t | {v}, used_s, edges + [(cur, v)])
        for v in sorted(sinks - used_s):
            if v > cur:
                start(k + 1, used_t, used_s | {v}, edges + [(cur, v)])

    def start(k, used_t, used_s, edges):
        if k == len(a):
            out.append(Flow(n, edges))
            return
        extend(k, a[k], used_t, used_s, edges)

    start(0, frozenset(), frozenset(), [])
    return tuple(sorted(out))


def enumerate_family(n: int, i: int, a: Sequence[int], b: Sequence[int]) -> list[Flow]:
    """All flows of F_i(a; b) on [1, n], in a fixed order."""
    a, b = check_shape(n, i, a, b)
    return list(_enumerate(n, i, a, b))


# --- operators ---------------------------------------------------------------

OPS = ("L1", "L2", "L3", "M1", "M2", "R")


def apply_op(op: str, flow: Flow, i: int) -> Graph:
    """Apply one of the six move operators; raise NotWellDefined if its condition fails."""
    c = classify(flow)
    n = flow.n
    if op in ("L1", "L2", "L3", "R") and not c.sources:
        raise NotWellDefined(f"{op} needs q >= 1")
    if op.startswith("L"):
        aq = c.sources[-1]
        v = aq - 1
        if v < 1:
            raise NotWellDefined(f"{op}: a_q - 1 = {v} is outside [1, {n}]")
        if op == "L1":
            if v not in c.transit:
                raise NotWellDefined(f"L1: a_q - 1 = {v} is not a transit point")
            s, _ = flow.in_edge(v)
            return flow.replace((s, v), (s, aq))
        if op == "L2":
            if flow.out_edge(v) is not None:
                raise NotWellDefined(f"L2: an edge begins at a_q - 1 = {v}")
            return flow.add((v, aq))
        if v in c.sources:
            raise NotWellDefined(f"L3: a_q - 1 = {v} is a source")
        _, t = flow.out_edge(aq)
        return flow.replace((aq, t), (v, t))
    if op.startswith("M"):
        if i + 1 > n:
            raise NotWellDefined(f"{op}: i + 1 = {i + 1} is outside [1, {n}]")
        if i + 1 in c.sinks:
            raise NotWellDefined(f"{op}: i + 1 = {i + 1} is a sink")
        if op == "M1":
            if i not in c.transit:
                raise NotWellDefined(f"M1: i = {i} is not a transit point")
            s, _ = flow.in_edge(i)
            return flow.replace((s, i), (s, i + 1))
        if op == "M2":
            if flow.out_edge(i) is not None:
                raise NotWellDefined(f"M2: an edge begins at i = {i}")
            return flow.add((i, i + 1))
    if op == "R":
        bq = c.sinks[-1]
        if bq + 1 > n:
            raise NotWellDefined(f"R: b_q + 1 = {bq + 1} is outside [1, {n}]")
        if bq + 1 in c.sinks:
            raise NotWellDefined(f"R: b_q + 1 = {bq + 1} is a sink")
        s, _ = flow.in_edge(bq)
        return flow.replace((s, bq), (s, bq + 1))
    raise ValueError(f"unknown operator {op!r}; expected one of {OPS}")


def op_target(op: str, i: int, a: Sequence[int], b: Sequence[int]):
    """Family (a', b') that ``op`` maps F_i(a; b) into."""
    a, b = tuple(a), tuple(b)
    if op in ("L1", "L2", "L3"):
        return a[:-1] + (a[-1] - 1,), b
    if op in ("M1", "M2"):
        return a + (i,), b + (i + 1,)
    if op == "R":
        return a, b[:-1] + (b[-1] + 1,)
    raise ValueError(f"unknown operator {op!r}")


def l3_partner(flow: Flow) -> Flow:
    """The other flow with the same (non-flow) L3 image, built by swapping edge heads."""
    c = classify(flow)
    if not c.sources or c.sources[-1] - 1 not in c.transit:
        raise FlowError("l3_partner needs a_q - 1 to be a transit point")
    aq = c.sources[-1]
    v = aq - 1
    _, r = flow.out_edge(v)
    _, t = flow.out_edge(aq)
    es = [e for e in flow.edges if e not in ((v, r), (aq, t))]
    return Flow(flow.n, es + [(aq, r), (v, t)])


def inverse_op(target: Flow, kind: str, i: int) -> tuple[str, Flow]:
    """The unique (operator, flow) pair mapping onto ``target`` within the group ``kind``.

    ``kind`` is "L", "M" or "R".  For L the original last source is the last
    source of ``target`` plus one; for R the original last sink is the last
    sink of ``target`` minus one.
    """
    c = classify(target)
    n = target.n
    if kind == "L":
        if not c.sources:
            raise FlowError("L inverse needs q >= 1")
        aq = c.sources[-1] + 1
        if aq > i or aq in c.sources:
            raise FlowError(f"L inverse: a_q = {aq} must be a new source <= {i}")
        e = target.in_edge(aq)
        if e is not None and e[0] < aq - 1:
            return "L1", target.replace(e, (e[0], aq - 1)).as_flow()
        if (aq - 1, aq) in target:
            return "L2", target.remove((aq - 1, aq)).as_flow()
        if aq not in c.transit:
            _, t = target.out_edge(aq - 1)
            return "L3", target.replace((aq - 1, t), (aq, t)).as_flow()
        raise AssertionError("the L inverse cases are exhaustive")
    if kind == "M":
        if i not in c.sources or i + 1 not in c.sinks:
            raise FlowError(f"M inverse: target must have source {i} and sink {i + 1}")
        if c.sources[-1] != i or c.sinks[-1] != i + 1:
            raise FlowError("M inverse: i and i + 1 must be the last source and sink")
        rest_a, rest_b = c.sources[:-1], c.sinks[:-1]
        if rest_a and not (rest_a[-1] < i and i + 1 < rest_b[-1]):
            raise FlowError("M inverse needs a_q < i and i + 1 < b_q")
        e = target.in_edge(i + 1)
        if e[0] < i:
            return "M1", target.replace(e, (e[0], i)).as_flow()
        return "M2", target.remove((i, i + 1)).as_flow()
    if kind == "R":
        if not c.sinks:
            raise FlowError("R inverse needs q >= 1")
        top = c.sinks[-1]
        bq = top - 1
        if bq <= i or bq in c.sinks:
            raise FlowError(f"R inverse: b_q = {bq} must be a new sink > {i}")
        s, _ = target.in_edge(top)
        return "R", target.replace((s, top), (s, bq)).as_flow()
    raise ValueError(f"unknown operator group {kind!r}; expected L, M or R")


# --- order -------------------------------------------------------------------


def flow_compare(g: Flow, h: Flow) -> int:
    """-1, 0 or 1 as g < h, g == h, g > h in the flow order of a common family."""
    cg, ch = classify(g), classify(h)
    if cg.sources != ch.sources or cg.sinks != ch.sinks:
        raise FlowError("flows belong to different families")
    for (s, t), (s2, t2) in zip(g.by_end(), h.by_end()):
        if (s, t) == (s2, t2):
            continue
        if t != t2:
            raise AssertionError("edges with the same rank must share their end")
        return -1 if s > s2 else 1
    if len(g) != len(h):
        raise AssertionError("one edge list cannot properly begin the other")
    return 0


def flow_less(g: Flow, h: Flow) -> bool:
    return flow_compare(g, h) < 0


def nu(flow: Flow, m: int) -> tuple[int, ...]:
    """Sum of eps_s over edges (s, t) with s <= m < t, as a length-n vector."""
    v = [0] * flow.n
    for s, t in flow.edges:
        if s <= m < t:
            v[s - 1] += 1
    return tuple(v)


def nu_sequence(flow: Flow) -> list[tuple[int, ...]]:
    return [nu(flow, m) for m in range(1, flow.n + 1)]
