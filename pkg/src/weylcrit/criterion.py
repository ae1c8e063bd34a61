"""Deciding F e^+ != 0 by reducing the pair (F, omega) to a nonzero scalar at weight 0.

Two moves are allowed:

* raise: F -> r^omega_{alpha(i,j), m}(F), keeping omega;
* descend: omega -> omega - omega_k, keeping F, when the result stays dominant.

A pair is simply reducible when a chain of raises with m = 1 and descents
reaches (c, 0) with c != 0.  The witness records that chain; replaying it
recomputes c.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, NamedTuple, Sequence

from . import weights as W
from .exprs import format_elem
from .fields import FieldCtx
from .hyperalgebra.elements import (
    UElem,
    lower_pairs,
    matrix_weight,
    root_depth,
    weight_components,
    weight_of,
)
from .hyperalgebra.operators import r_raise
from .oracle import weyl_context


class CriterionError(ValueError):
    """Bad input to the search (mixed weight, non-dominant weight, ...)."""


class WitnessError(ValueError):
    """A witness failed to replay."""


class Raise(NamedTuple):
    i: int
    j: int
    m: int = 1

    def to_json(self):
        return {"kind": "raise", "i": self.i, "j": self.j, "m": self.m}

    def __str__(self):
        return f"raise ({self.i},{self.j})" + (f" m={self.m}" if self.m != 1 else "")


class Descend(NamedTuple):
    fundamental: int

    def to_json(self):
        return {"kind": "descend", "fundamental": self.fundamental}

    def __str__(self):
        return f"descend {self.fundamental}"


@dataclass(frozen=True)
class Witness:
    steps: tuple = ()
    scalar: object = None

    def to_json(self, field: FieldCtx | None = None) -> dict:
        scalar = self.scalar if field is None else field.format(self.scalar)
        return {"steps": [s.to_json() for s in self.steps], "scalar": str(scalar)}

    def dumps(self, field: FieldCtx | None = None) -> str:
        return json.dumps(self.to_json(field), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> "Witness":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            raw_steps = data["steps"]
        except (KeyError, TypeError):
            raise WitnessError("witness JSON needs a 'steps' list") from None
        steps = []
        for k, s in enumerate(raw_steps):
            kind = s.get("kind") if isinstance(s, dict) else None
            try:
                if kind == "raise":
                    steps.append(Raise(int(s["i"]), int(s["j"]), int(s.get("m", 1))))
                elif kind == "descend":
                    steps.append(Descend(int(s["fundamental"])))
                else:
                    raise WitnessError(f"step {k}: unknown kind {kind!r}")
            except (KeyError, TypeError, ValueError) as exc:
                if isinstance(exc, WitnessError):
                    raise
                raise WitnessError(f"step {k}: malformed {s!r}") from None
        return cls(tuple(steps), data.get("scalar"))

    def __str__(self):
        return "[" + ", ".join(str(s) for s in self.steps) + "]"


RaiseOp = Callable[[tuple, int, int, int, UElem], UElem]


def _validate(F: UElem, omega) -> tuple:
    omega = tuple(omega)
    if len(omega) != F.n - 1:
        raise CriterionError(f"weight {omega} needs {F.n - 1} coordinates")
    if not W.is_dominant(omega):
        raise CriterionError(f"weight {omega} is not dominant")
    if not F.in_lower():
        raise CriterionError("F must lie in U^- (no H factors)")
    return omega


def _drain(omega) -> list:
    return [Descend(k) for k, a in enumerate(omega, start=1) for _ in range(a)]


def _positive_roots(n: int):
    return [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]


@dataclass
class SearchStats:
    visited: int = 0
    memo_hits: int = 0


@dataclass
class _Search:
    raise_op: RaiseOp
    stats: SearchStats = dc_field(default_factory=SearchStats)
    failed: set = dc_field(default_factory=set)

    def run(self, F: UElem, omega: tuple):
        key = (F.normalized(), omega)
        if key in self.failed:
            self.stats.memo_hits += 1
            return None
        self.stats.visited += 1
        if F.is_scalar():
            return _drain(omega)
        for i, j in _positive_roots(F.n):
            G = self.raise_op(omega, i, j, 1, F)
            if G:
                rest = self.run(G, omega)
                if rest is not None:
                    return [Raise(i, j, 1)] + rest
        for k, a in enumerate(omega, start=1):
            if a > 0:
                lower = omega[: k - 1] + (a - 1,) + omega[k:]
                rest = self.run(F, lower)
                if rest is not None:
                    return [Descend(k)] + rest
        self.failed.add(key)
        return None


def replay(F: UElem, omega, steps, raise_op: RaiseOp = r_raise):
    """Apply the steps and return the final (F, omega), checking each step."""
    omega = tuple(omega)
    for k, step in enumerate(steps):
        if isinstance(step, Raise):
            n = F.n
            if not 1 <= step.i < step.j <= n or step.m < 1:
                raise WitnessError(f"step {k}: invalid raise {step}")
            F = raise_op(omega, step.i, step.j, step.m, F)
            if not F:
                raise WitnessError(f"step {k}: step produced zero ({step})")
        elif isinstance(step, Descend):
            if not 1 <= step.fundamental < F.n:
                raise WitnessError(f"step {k}: invalid descend {step}")
            omega = W.sub(omega, W.fundamental(F.n, step.fundamental))
            if not W.is_dominant(omega):
                raise WitnessError(f"step {k}: weight {omega} is not dominant ({step})")
        else:
            raise WitnessError(f"step {k}: unknown step {step!r}")
    return F, omega


def simply_reduce(F: UElem, omega, raise_op: RaiseOp = r_raise, stats: SearchStats | None = None):
    """A witness that (F, omega) is simply reducible, or None."""
    omega = _validate(F, omega)
    if not F:
        raise CriterionError("F must be nonzero")
    if weight_of(F) is None:
        raise CriterionError("F must be weight-homogeneous")
    search = _Search(raise_op, stats if stats is not None else SearchStats())
    steps = search.run(F, omega)
    if steps is None:
        return None
    final, _ = replay(F, omega, steps, raise_op)
    return Witness(tuple(steps), final.scalar_value())


def verify_witness(F: UElem, omega, witness: Witness, raise_op: RaiseOp = r_raise):
    """Replay ``witness`` from (F, omega) and return the final scalar c of (c, 0)."""
    omega = _validate(F, omega)
    if not F:
        raise WitnessError("F is zero")
    final, last = replay(F, omega, witness.steps, raise_op)
    if any(last) or not final.is_scalar():
        raise WitnessError(f"final state ({final}, {last}) is not (c, 0)")
    c = final.scalar_value()
    if witness.scalar is not None and str(witness.scalar) != str(F.field.format(c)):
        raise WitnessError(f"witness claims scalar {witness.scalar} but replay gives {c}")
    return c


class ComponentWitness(NamedTuple):
    component: UElem
    witness: Witness


class NonzeroResult(NamedTuple):
    nonzero: bool
    witnesses: list  # ComponentWitness for each reducible weight component


def check_nonzero(F: UElem, omega, raise_op: RaiseOp = r_raise) -> NonzeroResult:
    """F e^+ != 0 iff some weight component of F is simply reducible."""
    omega = _validate(F, omega)
    found = []
    for comp in weight_components(F):
        w = simply_reduce(comp, omega, raise_op)
        if w is not None:
            found.append(ComponentWitness(comp, w))
    return NonzeroResult(bool(found), found)


def check_irreducible_nonzero(F: UElem, omega) -> bool:
    """Raising-only reduction with divided powers: decides F v^+ != 0 in L(omega)."""
    omega = _validate(F, omega)
    if not F:
        raise CriterionError("F must be nonzero")
    if weight_of(F) is None:
        raise CriterionError("F must be weight-homogeneous")
    failed = set()

    def run(G: UElem) -> bool:
        if G.is_scalar():
            return True
        key = G.normalized()
        if key in failed:
            return False
        N0 = next(iter(G.terms))[0]
        budget = root_depth(G.n, N0)
        for i, j in _positive_roots(G.n):
            top = min(budget[i - 1 : j - 1])
            for m in range(1, top + 1):
                H = r_raise(omega, i, j, m, G)
                if H and run(H):
                    return True
        failed.add(key)
        return False

    return run(F)


def check_irreducible_any(F: UElem, omega) -> bool:
    """Componentwise version of :func:`check_irreducible_nonzero`."""
    _validate(F, omega)
    return any(check_irreducible_nonzero(c, omega) for c in weight_components(F))


# --- cross validation ------------------------------------------------------


def matrices_up_to(n: int, max_height: int) -> list[tuple[int, ...]]:
    """All N with sum N[a,b] (b - a) <= max_height, in a fixed order."""
    pairs = lower_pairs(n)
    out = []

    def rec(k, left, acc):
        if k == len(pairs):
            out.append(tuple(acc))
            return
        a, b = pairs[k]
        for v in range(left // (b - a) + 1):
            rec(k + 1, left - v * (b - a), acc + [v])

    rec(0, max_height, [])
    return sorted(out, key=lambda N: (sum(v * (b - a) for (a, b), v in zip(pairs, N)), N))


def weight_grid(n: int, max_coeff: int) -> list[tuple[int, ...]]:
    out = [()]
    for _ in range(n - 1):
        out = [w + (a,) for w in out for a in range(max_coeff + 1)]
    return out


@dataclass(frozen=True)
class Cell:
    n: int
    field: FieldCtx
    omega: tuple
    max_degree: int
    samples: int = 0
    seed: int = 0


def _random_combo(rng: random.Random, cell: Cell, mats) -> UElem | None:
    by_weight = {}
    for N in mats:
        by_weight.setdefault(matrix_weight(cell.n, N), []).append(N)
    groups = [g for g in by_weight.values() if len(g) > 1]
    if not groups:
        return None
    group = rng.choice(sorted(groups))
    chosen = rng.sample(group, rng.randint(2, len(group)))
    terms = {(N, (0,) * (cell.n - 1)): rng.randint(1, 5) for N in chosen}
    return UElem(cell.field, cell.n, terms)


def run_cell(cell: Cell, raise_op: RaiseOp = r_raise) -> dict:
    """Compare checker and oracle on every F^(N) (plus random combinations) in one cell."""
    ctx = weyl_context(cell.n, cell.omega, cell.field)
    mats = matrices_up_to(cell.n, cell.max_degree)
    elems = [UElem.monomial(cell.field, cell.n, N) for N in mats]
    if cell.samples:
        rng = random.Random(f"{cell.seed}:{cell.n}:{cell.field}:{cell.omega}")
        for _ in range(cell.samples):
            x = _random_combo(rng, cell, mats)
            if x:
                elems.append(x)
    mismatches = []
    positives = 0
    for F in elems:
        oracle = bool(ctx.vector_of(F))
        res = check_nonzero(F, cell.omega, raise_op)
        reason = None
        if res.nonzero != oracle:
            reason = "verdict"
        else:
            for cw in res.witnesses:
                try:
                    c = verify_witness(cw.component, cell.omega, cw.witness)
                except WitnessError as exc:
                    reason = f"replay: {exc}"
                    break
                if not c:
                    reason = "replay: zero scalar"
                    break
        positives += res.nonzero
        if reason:
            mismatches.append(
                {
                    "n": cell.n,
                    "field": str(cell.field),
                    "weight": list(cell.omega),
                    "expr": format_elem(F),
                    "checker": res.nonzero,
                    "oracle": oracle,
                    "reason": reason,
                }
            )
    return {"cases": len(elems), "positives": positives, "mismatches": mismatches}


def _run_cell_default(cell: Cell) -> dict:
    return run_cell(cell)


def build_grid(max_n: int, max_coeff: int, max_degree: int, fields: Sequence[FieldCtx],
               samples: int = 0, seed: int = 0) -> list[Cell]:
    cells = []
    for n in range(2, max_n + 1):
        for f in fields:
            for omega in weight_grid(n, max_coeff):
                cells.append(Cell(n, f, omega, max_degree, samples, seed))
    return cells


def cross_validate(max_n: int, max_coeff: int, max_degree: int, fields: Sequence[FieldCtx],
                   jobs: int = 1, samples: int = 0, seed: int = 0,
                   raise_op: RaiseOp | None = None) -> dict:
    """Run the checker-versus-oracle campaign over a grid and collect every mismatch."""
    cells = build_grid(max_n, max_coeff, max_degree, fields, samples, seed)
    if raise_op is not None:
        results = [run_cell(c, raise_op) for c in cells]
    elif jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_cell_default, cells))
    else:
        results = [run_cell(c) for c in cells]
    mismatches = [m for r in results for m in r["mismatches"]]
    return {
        "grid": {
            "max_n": max_n,
            "max_coeff": max_coeff,
            "max_degree": max_degree,
            "fields": [str(f) for f in fields],
            "samples": samples,
            "seed": seed,
        },
        "cells": len(cells),
        "cases": sum(r["cases"] for r in results),
        "positives": sum(r["positives"] for r in results),
        "mismatches": mismatches,
    }
