"""Graded vector spaces, graded quivers and Koszul-signed graded maps.

Sparse vectors throughout the package are plain dicts ``{basis_key: scalar}``
with no stored zeros.  The single Koszul rule lives in :func:`tensor_map`
(and its element-level twin :func:`koszul_sign`).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Hashable, Iterable

from .linalg import SparseMatrix
from .scalars import QQ, Field


# -- sparse vectors ---------------------------------------------------------

def add_into(acc: dict, vec: dict, coeff=1) -> dict:
    """acc += coeff * vec, dropping cancelled entries."""
    if not coeff:
        return acc
    for k, v in vec.items():
        nv = acc.get(k, 0) + coeff * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


def scaled(vec: dict, coeff) -> dict:
    if not coeff:
        return {}
    return {k: v * coeff for k, v in vec.items() if v * coeff}


def vsub(a: dict, b: dict) -> dict:
    return add_into(dict(a), b, -1)


def sign(exponent: int) -> int:
    return -1 if exponent & 1 else 1


def koszul_sign(map_degrees: Iterable[int], element_degrees: Iterable[int]) -> int:
    """Sign of applying f_1 (x) ... (x) f_k to x_1 (x) ... (x) x_k.

    Each f_i passes the elements x_1..x_{i-1} standing to its left.
    """
    total = 0
    passed = 0
    for fd, xd in zip(map_degrees, element_degrees):
        total += fd * passed
        passed += xd
    return sign(total)


def shift_sign(shifted_degrees) -> int:
    """Sign of (s^-1)^{(x)n} on sx_1 (x) ... (x) sx_n (written left to right)."""
    n = len(shifted_degrees)
    return sign(sum((n - 1 - q) * d for q, d in enumerate(shifted_degrees)))


# -- graded spaces ----------------------------------------------------------

@dataclass(frozen=True)
class GradedVectorSpace:
    basis: tuple  # ((label, degree), ...)

    def __post_init__(self):
        labels = [l for l, _ in self.basis]
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be unique")

    @classmethod
    def of(cls, items: Iterable) -> "GradedVectorSpace":
        return cls(tuple((l, int(d)) for l, d in items))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> list:
        return [l for l, _ in self.basis]

    def degree(self, label) -> int:
        return self._degrees[label]

    def index(self, label) -> int:
        return self._index[label]

    @property
    def _degrees(self):
        d = self.__dict__.get("_deg_cache")
        if d is None:
            d = dict(self.basis)
            object.__setattr__(self, "_deg_cache", d)
        return d

    @property
    def _index(self):
        d = self.__dict__.get("_idx_cache")
        if d is None:
            d = {l: i for i, (l, _) in enumerate(self.basis)}
            object.__setattr__(self, "_idx_cache", d)
        return d

    def degrees(self) -> list[int]:
        return [d for _, d in self.basis]

    def in_degree(self, deg: int) -> list:
        return [l for l, d in self.basis if d == deg]


def shift(v: GradedVectorSpace, n: int) -> GradedVectorSpace:
    """M[n]: every degree d becomes d - n (so sA = A[1] lowers degrees by one)."""
    return GradedVectorSpace(tuple((l, d - n) for l, d in v.basis))


def tensor_space(*spaces: GradedVectorSpace) -> GradedVectorSpace:
    """Tensor product; basis lexicographic with the leftmost factor slowest."""
    basis = [((), 0)]
    for sp in spaces:
        basis = [(lab + (l,), deg + d) for lab, deg in basis for l, d in sp.basis]
    return GradedVectorSpace(tuple(basis))


@dataclass(frozen=True)
class GradedQuiver:
    objects: tuple
    homs: dict = dc_field(default_factory=dict)  # (source, target) -> GradedVectorSpace

    def __post_init__(self):
        obs = set(self.objects)
        for (a, b) in self.homs:
            if a not in obs or b not in obs:
                raise ValueError(f"hom key ({a!r}, {b!r}) references an undeclared object")

    def hom(self, a, b) -> GradedVectorSpace:
        return self.homs.get((a, b), GradedVectorSpace(()))


@dataclass(frozen=True)
class GradedMap:
    source: GradedVectorSpace
    target: GradedVectorSpace
    degree: int
    matrix: SparseMatrix

    def __post_init__(self):
        m = self.matrix
        if (m.rows, m.cols) != (self.target.dim, self.source.dim):
            raise ValueError("matrix shape does not match source/target")
        td, sd = self.target.degrees(), self.source.degrees()
        for r, c, _ in m.entries:
            if td[r] != sd[c] + self.degree:
                raise ValueError(f"entry ({r}, {c}) breaks degree {self.degree}")

    @property
    def field(self) -> Field:
        return self.matrix.field

    @classmethod
    def identity(cls, v: GradedVectorSpace, field: Field = QQ) -> "GradedMap":
        return cls(v, v, 0, SparseMatrix.identity(v.dim, field))

    @classmethod
    def zero(cls, source, target, degree=0, field: Field = QQ) -> "GradedMap":
        return cls(source, target, degree, SparseMatrix.zero(target.dim, source.dim, field))

    @classmethod
    def from_images(cls, source, target, degree, images: dict, field: Field = QQ) -> "GradedMap":
        """images: source label -> {target label: scalar}."""
        data = {}
        for sl, vec in images.items():
            for tl, v in vec.items():
                data[(target.index(tl), source.index(sl))] = v
        return cls(source, target, degree,
                   SparseMatrix.from_dict(target.dim, source.dim, data, field))

    def __call__(self, vec: dict) -> dict:
        out: dict = {}
        cols = self._columns
        for l, v in vec.items():
            for tl, w in cols.get(self.source.index(l), ()):
                add_into(out, {tl: w}, v)
        return out

    @property
    def _columns(self):
        c = self.__dict__.get("_col_cache")
        if c is None:
            c = {}
            labels = self.target.labels
            for r, col, v in self.matrix.entries:
                c.setdefault(col, []).append((labels[r], v))
            object.__setattr__(self, "_col_cache", c)
        return c


def tensor_map(f: GradedMap, g: GradedMap) -> GradedMap:
    """(f (x) g)(x (x) y) = (-1)^{deg g * deg x} f(x) (x) g(y)."""
    field = f.field
    src = tensor_space(f.source, g.source)
    tgt = tensor_space(f.target, g.target)
    fcols = f.matrix.transpose().row_dicts()
    gcols = g.matrix.transpose().row_dicts()
    gdim = g.target.dim
    data = {}
    sdeg = f.source.degrees()
    for j in range(f.source.dim):
        s = -1 if (g.degree * sdeg[j]) & 1 else 1
        for l in range(g.source.dim):
            col = j * g.source.dim + l
            for r1, v1 in fcols[j].items():
                for r2, v2 in gcols[l].items():
                    data[(r1 * gdim + r2, col)] = s * v1 * v2
    return GradedMap(src, tgt, f.degree + g.degree,
                     SparseMatrix.from_dict(tgt.dim, src.dim, data, field))


class IncompatibleSpaces(ValueError):
    pass


def compose_graded(f: GradedMap, g: GradedMap) -> GradedMap:
    """f after g."""
    if f.source != g.target:
        raise IncompatibleSpaces("source of f differs from target of g")
    return GradedMap(g.source, f.target, f.degree + g.degree, f.matrix @ g.matrix)
