"""Sparse exact linear algebra over a :class:`~ainfty.scalars.Field`.

Conventions are deterministic: ``solve`` zeroes free variables, and
``quotient_basis`` returns the standard basis vectors that are not pivots of
the generator rref.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .scalars import QQ, Field


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: tuple  # ((row, col, value), ...) sorted, no zeros, no duplicates
    field: Field = QQ

    def __post_init__(self):
        seen = set()
        prev = None
        for r, c, v in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if not v:
                raise ValueError("stored zero entry")
            if (r, c) in seen:
                raise ValueError(f"duplicate entry ({r}, {c})")
            if prev is not None and (r, c) < prev:
                raise ValueError("entries not sorted")
            seen.add((r, c))
            prev = (r, c)

    @classmethod
    def from_dict(cls, rows, cols, data: dict, field: Field = QQ) -> "SparseMatrix":
        entries = tuple(sorted((r, c, field(v)) for (r, c), v in data.items() if v))
        return cls(rows, cols, entries, field)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ, cols=None) -> "SparseMatrix":
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        data = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls.from_dict(len(rows), ncols, data, field)

    @classmethod
    def identity(cls, n, field: Field = QQ) -> "SparseMatrix":
        return cls(n, n, tuple((i, i, field.one) for i in range(n)), field)

    @classmethod
    def zero(cls, rows, cols, field: Field = QQ) -> "SparseMatrix":
        return cls(rows, cols, (), field)

    def to_dict(self) -> dict:
        return {(r, c): v for r, c, v in self.entries}

    def row_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def to_dense(self) -> list[list]:
        out = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def matvec(self, x: Sequence) -> list:
        if len(x) != self.cols:
            raise ValueError("dimension mismatch in matvec")
        y = [self.field.zero] * self.rows
        for r, c, v in self.entries:
            if x[c]:
                y[r] += v * x[c]
        return y

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        by_row = other.row_dicts()
        out: dict = {}
        for r, k, v in self.entries:
            for c, w in by_row[k].items():
                out[(r, c)] = out.get((r, c), 0) + v * w
        return SparseMatrix.from_dict(self.rows, other.cols, out, self.field)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        out = self.to_dict()
        for r, c, v in other.entries:
            out[(r, c)] = out.get((r, c), 0) + v
        return SparseMatrix.from_dict(self.rows, self.cols, out, self.field)

    def scale(self, s) -> "SparseMatrix":
        return SparseMatrix.from_dict(self.rows, self.cols,
                                      {(r, c): v * s for r, c, v in self.entries}, self.field)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_dict(self.cols, self.rows,
                                      {(c, r): v for r, c, v in self.entries}, self.field)

    def is_zero(self) -> bool:
        return not self.entries


def _rref_rows(rows: list[dict], field: Field):
    """Gauss-Jordan on a list of sparse row dicts. Returns (rows, pivots)."""
    pivot_rows: dict[int, dict] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        for pc, prow in pivot_rows.items():
            a = row.get(pc)
            if a:
                for c, v in prow.items():
                    nv = row.get(c, 0) - a * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if not row:
            continue
        pc = min(row)
        inv = field.one / row[pc]
        row = {c: v * inv for c, v in row.items()}
        for oc, orow in pivot_rows.items():
            a = orow.get(pc)
            if a:
                for c, v in row.items():
                    nv = orow.get(c, 0) - a * v
                    if nv:
                        orow[c] = nv
                    else:
                        orow.pop(c, None)
        pivot_rows[pc] = row
    pivots = sorted(pivot_rows)
    return [pivot_rows[p] for p in pivots], pivots


def rref(m: SparseMatrix) -> tuple[SparseMatrix, list[int]]:
    rows, pivots = _rref_rows(m.row_dicts(), m.field)
    data = {(i, c): v for i, row in enumerate(rows) for c, v in row.items()}
    return SparseMatrix.from_dict(m.rows, m.cols, data, m.field), pivots


def rank(m: SparseMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: SparseMatrix) -> list[list]:
    """Basis of {x : m x = 0}, one vector per free column (in column order)."""
    rows, pivots = _rref_rows(m.row_dicts(), m.field)
    piv = set(pivots)
    out = []
    for free in range(m.cols):
        if free in piv:
            continue
        x = [m.field.zero] * m.cols
        x[free] = m.field.one
        for p, row in zip(pivots, rows):
            a = row.get(free)
            if a:
                x[p] = -a
        out.append(x)
    return out


def solve(m: SparseMatrix, b: Sequence):
    """One solution of ``m x = b`` with free variables set to zero, or None."""
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    aug = m.row_dicts()
    for i, v in enumerate(b):
        if v:
            aug[i][m.cols] = m.field(v)
    rows, pivots = _rref_rows(aug, m.field)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [m.field.zero] * m.cols
    for p, row in zip(pivots, rows):
        x[p] = row.get(m.cols, m.field.zero)
    return x


def quotient_basis(generators: Iterable[Sequence], ambient_dim: int, field: Field = QQ) -> list[list]:
    """Standard basis vectors whose cosets form a basis of ambient/span(generators)."""
    rows = []
    for g in generators:
        if len(g) != ambient_dim:
            raise ValueError("generator has wrong length")
        rows.append({i: field(v) for i, v in enumerate(g) if v})
    _, pivots = _rref_rows(rows, field)
    piv = set(pivots)
    out = []
    for i in range(ambient_dim):
        if i not in piv:
            e = [field.zero] * ambient_dim
            e[i] = field.one
            out.append(e)
    return out


class Span:
    """Incrementally built subspace of a space with hashable coordinates.

    Each inserted vector may carry a tag; ``reduce`` then reports how a vector
    decomposes over the tagged inserts, which is how cohomology classes and
    quotient coordinates are read off.
    """

    def __init__(self, field: Field = QQ, track: bool = False):
        self.field = field
        self.track = track
        self._rows: dict = {}  # pivot key -> (row, combo)
        self._order: dict = {}  # key -> sort position for pivot choice

    def __len__(self):
        return len(self._rows)

    def _key(self, k):
        pos = self._order.get(k)
        if pos is None:
            pos = self._order[k] = len(self._order)
        return pos

    def _reduce(self, vec: dict, combo: dict | None):
        vec = {k: v for k, v in vec.items() if v}
        heap = [(self._key(k), k) for k in vec if k in self._rows]
        heapq.heapify(heap)
        while heap:
            _, k = heapq.heappop(heap)
            a = vec.get(k)
            if not a:
                continue
            row, rcombo = self._rows[k]
            for c, v in row.items():
                nv = vec.get(c, 0) - a * v
                if nv:
                    if c not in vec and c in self._rows:
                        heapq.heappush(heap, (self._key(c), c))
                    vec[c] = nv
                else:
                    vec.pop(c, None)
            if combo is not None:
                for t, v in rcombo.items():
                    nv = combo.get(t, 0) - a * v
                    if nv:
                        combo[t] = nv
                    else:
                        combo.pop(t, None)
        return vec, combo

    def add(self, vec: dict, tag=None) -> bool:
        """Insert; returns True when the vector was independent of the span."""
        combo = {tag: self.field.one} if self.track else None
        vec, combo = self._reduce(dict(vec), combo)
        if not vec:
            return False
        piv = min(vec, key=self._key)
        inv = self.field.one / vec[piv]
        vec = {k: v * inv for k, v in vec.items()}
        if combo is not None:
            combo = {k: v * inv for k, v in combo.items()}
        self._rows[piv] = (vec, combo)
        return True

    def contains(self, vec: dict) -> bool:
        rem, _ = self._reduce(dict(vec), None)
        return not rem

    def reduce(self, vec: dict):
        """Return (remainder, combination) with vec = remainder + sum combo[t] * inserted[t]."""
        combo = {} if self.track else None
        rem, combo = self._reduce(dict(vec), combo)
        if combo is not None:
            combo = {t: -v for t, v in combo.items()}
        return rem, combo

    def pivots(self) -> set:
        return set(self._rows)


def subquotient_cohomology(space_by_degree: dict, differential, sub_by_degree: dict, field) -> dict:
    """Cohomology dims of F / S for a complex F with subcomplex S.

    ``space_by_degree`` maps degree to basis keys of F, ``differential`` sends a
    key to a sparse vector, ``sub_by_degree`` maps degree to spanning vectors of S.
    dim H^d = dim F^d - (dim(dF^d + S^{d+1}) - dim S^{d+1}) - dim(dF^{d-1} + S^d).
    """

    def span_dim(vectors):
        sp = Span(field)
        return sum(1 for v in vectors if sp.add(v))

    out = {}
    for d, keys in space_by_degree.items():
        s_d = sub_by_degree.get(d, [])
        s_next = sub_by_degree.get(d + 1, [])
        img = [differential(k) for k in keys]
        img_prev = [differential(k) for k in space_by_degree.get(d - 1, [])]
        dim = span_dim([{k: field.one} for k in keys] + list(s_d))
        dim_s_d = span_dim(s_d)
        h = (dim - dim_s_d) - (span_dim(img + list(s_next)) - span_dim(s_next)) \
            - (span_dim(img_prev + list(s_d)) - dim_s_d)
        if h:
            out[d] = h
    return out
