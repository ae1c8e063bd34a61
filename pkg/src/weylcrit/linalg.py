"""Incremental exact row echelon form over a FieldCtx, on sparse dict vectors."""

from __future__ import annotations

from typing import Hashable, Mapping

from .fields import FieldCtx


class NotInSpan(ValueError):
    """A vector expected in the span of the basis left a nonzero residual."""


class Echelon:
    """Sparse vectors ``{key: coeff}`` reduced against earlier pivots.

    Each stored row has coefficient 1 at its pivot and 0 at every earlier
    pivot, so one forward sweep reduces any vector.  Rows also remember which
    combination of the inserted generators they equal.
    """

    def __init__(self, field: FieldCtx):
        self.field = field
        self.rows: list[tuple[Hashable, dict, dict]] = []  # (pivot, vector, combo)
        self.count = 0  # generators inserted so far
        self.kernel: list[dict] = []  # combos of generators that reduced to zero

    def _reduce(self, vec: Mapping, combo: dict):
        f = self.field
        v = {k: c for k, c in vec.items() if c}
        for pivot, row, rcombo in self.rows:
            c = v.get(pivot)
            if not c:
                continue
            for k, x in row.items():
                y = f(v.get(k, 0) - c * x)
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
            for g, x in rcombo.items():
                y = f(combo.get(g, 0) - c * x)
                if y:
                    combo[g] = y
                else:
                    combo.pop(g, None)
        return v, combo

    def add(self, vec: Mapping) -> bool:
        """Insert a generator; True if it enlarged the span."""
        f = self.field
        idx = self.count
        self.count += 1
        v, combo = self._reduce(vec, {idx: 1})
        if not v:
            self.kernel.append(combo)
            return False
        pivot = min(v)
        inv = f.inv(v[pivot])
        if inv != 1:
            v = {k: f(c * inv) for k, c in v.items()}
            combo = {g: f(c * inv) for g, c in combo.items()}
        self.rows.append((pivot, v, combo))
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def residual(self, vec: Mapping) -> dict:
        return self._reduce(vec, {})[0]

    def contains(self, vec: Mapping) -> bool:
        return not self.residual(vec)

    def coords(self, vec: Mapping) -> dict:
        """Coefficients over the inserted generators expressing ``vec``.

        Only meaningful when the generators are independent; raises
        NotInSpan if ``vec`` is outside their span.
        """
        f = self.field
        v, neg = self._reduce(vec, {})
        if v:
            raise NotInSpan(f"vector has a residual on {len(v)} coordinates")
        return {g: f(-c) for g, c in neg.items() if c}


def rank(field: FieldCtx, vectors) -> int:
    ech = Echelon(field)
    for v in vectors:
        ech.add(v)
    return ech.rank


def nullspace(field: FieldCtx, columns) -> list[dict]:
    """Basis of the relations sum_g x_g columns[g] = 0, as sparse dicts over indices."""
    ech = Echelon(field)
    for col in columns:
        ech.add(col)
    return list(ech.kernel)
