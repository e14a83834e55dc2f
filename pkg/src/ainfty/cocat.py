"""Tensor cocategories of bar words.

A bar word is a :class:`Word` ``(src, tgt, letters)`` whose letters are basis
morphisms ``(x_1, ..., x_n)`` of a category, composable in the same order as
``m_n`` arguments; each letter stands for the shifted element ``s x_q`` of
degree ``|x_q| - 1``.  An empty word is the unit of the augmented bar at an
object.  A key of :class:`TensorBar` is a tuple of words, one per source.
"""

from __future__ import annotations

import itertools
from collections import namedtuple
from typing import Iterable

from .category import EXACT, m_nat
from .graded import add_into, sign

Word = namedtuple("Word", "src tgt letters")


def word(letters: Iterable) -> Word:
    letters = tuple(letters)
    if not letters:
        raise ValueError("use empty_word(obj) for the empty word")
    return Word(letters[-1].src, letters[0].tgt, letters)


def empty_word(obj) -> Word:
    return Word(obj, obj, ())


def word_degree(a, w: Word) -> int:
    return sum(a.degree(x) - 1 for x in w.letters)


def split_word(w: Word, p: int) -> tuple[Word, Word]:
    """w = u | v with u the first p letters (applied last)."""
    letters = w.letters
    if p == 0:
        return empty_word(w.tgt), w
    if p == len(letters):
        return w, empty_word(w.src)
    return Word(letters[p - 1].src, w.tgt, letters[:p]), Word(w.src, letters[p].tgt, letters[p:])


def concat_words(words: list) -> Word:
    letters = tuple(l for w in words for l in w.letters)
    if not letters:
        return empty_word(words[-1].src)
    return Word(words[-1].src, words[0].tgt, letters)


def bar_differential_word(a, w: Word) -> dict:
    """D(w) on a single bar word: sum over inner blocks of b_k, with the sign of the letters skipped."""
    out: dict = {}
    letters = w.letters
    n = len(letters)
    prefix = 0
    bound = a.arity_bound
    for j in range(n):
        for k in range(1, n - j + 1):
            if k > bound:
                break
            val = m_nat(a, letters[j:j + k])
            if val:
                s = sign(prefix)
                for y, c in val.items():
                    add_into(out, {Word(w.src, w.tgt, letters[:j] + (y,) + letters[j + k:]): s * c})
        prefix += a.degree(letters[j]) - 1
    return out


class TensorBar:
    """Reduced tensor product of (augmented) bar cocategories of the sources.

    With ``augmented=False`` and a single source this is the bar construction
    B(A) itself (no empty words).  With ``augmented=True`` the cocategory is
    red(aug B(A_1) x ... x aug B(A_n)): keys are tuples of words, not all empty,
    unless ``include_units`` is set (the full augmented tensor).
    ``weight_bound`` limits enumeration; operations on given keys ignore it.
    """

    def __init__(self, sources: list, weight_bound: int | None = None,
                 augmented: bool = True, include_units: bool = False):
        self.sources = list(sources)
        if not self.sources:
            raise ValueError("need at least one source")
        if not augmented and len(self.sources) != 1:
            raise ValueError("non-augmented tensor bar only for a single source")
        self.field = self.sources[0].field
        self.weight_bound = weight_bound
        self.augmented = augmented
        self.include_units = include_units
        self.objects = tuple(itertools.product(*[a.objects for a in self.sources]))

    @property
    def n(self) -> int:
        return len(self.sources)

    def __repr__(self):
        return f"TensorBar({[a.name for a in self.sources]}, W={self.weight_bound})"

    # -- keys ---------------------------------------------------------------
    def src(self, key) -> tuple:
        return tuple(w.src for w in key)

    def tgt(self, key) -> tuple:
        return tuple(w.tgt for w in key)

    def degree(self, key) -> int:
        return sum(word_degree(a, w) for a, w in zip(self.sources, key))

    def weight(self, key) -> int:
        return sum(len(w.letters) for w in key)

    def is_unit(self, key) -> bool:
        return all(not w.letters for w in key)

    def unit(self, obj: tuple):
        return tuple(empty_word(x) for x in obj)

    def _words(self, a, x, y, max_len):
        """All bar words x -> y in a of length <= max_len (empty included when x == y)."""
        out = []
        if x == y:
            out.append(empty_word(x))
        by_tgt: dict = {}
        for f in a.all_basis():
            by_tgt.setdefault(f.tgt, []).append(f)

        def grow(prefix, cur_src):
            if prefix and cur_src == x:
                out.append(Word(x, y, tuple(prefix)))
            if len(prefix) == max_len:
                return
            for f in by_tgt.get(cur_src, ()):
                prefix.append(f)
                grow(prefix, f.src)
                prefix.pop()

        grow([], y)
        return out

    def basis(self, x: tuple, y: tuple, weight_bound: int | None = None) -> list:
        W = self.weight_bound if weight_bound is None else weight_bound
        if W is None:
            raise ValueError("enumeration needs a weight bound")
        per_slot = [self._words(a, xi, yi, W) for a, xi, yi in zip(self.sources, x, y)]
        out = []
        for combo in itertools.product(*per_slot):
            wt = sum(len(w.letters) for w in combo)
            if wt > W:
                continue
            if wt == 0 and not (self.augmented and self.include_units):
                continue
            out.append(tuple(combo))
        out.sort(key=lambda k: (self.weight(k), repr(k)))
        return out

    def all_basis(self, weight_bound: int | None = None) -> list:
        return [k for x in self.objects for y in self.objects
                for k in self.basis(x, y, weight_bound)]

    # -- structure maps -------------------------------------------------------
    def d(self, key) -> dict:
        out: dict = {}
        prefix = 0
        for i, (a, w) in enumerate(zip(self.sources, key)):
            s = sign(prefix)
            for w2, c in bar_differential_word(a, w).items():
                add_into(out, {key[:i] + (w2,) + key[i + 1:]: s * c})
            prefix += word_degree(a, w)
        return out

    def d_vec(self, vec: dict) -> dict:
        out: dict = {}
        for k, c in vec.items():
            add_into(out, self.d(k), c)
        return out

    def delta(self, key, r: int = 2, reduced: bool = True) -> dict:
        """Iterated comultiplication into r tensor factors: {(k_1, ..., k_r): sign}.

        Each slot word is cut into r consecutive pieces; piece j of every slot
        forms factor k_j.  The sign is the Koszul sign of regrouping the pieces.
        With ``reduced`` no factor may be a unit.
        """
        out: dict = {}
        slot_cuts = []
        for w in key:
            n = len(w.letters)
            slot_cuts.append(list(itertools.combinations_with_replacement(range(n + 1), r - 1)))
        for cuts in itertools.product(*slot_cuts):
            pieces = []  # pieces[i][j]
            for w, cut in zip(key, cuts):
                bounds = (0,) + cut + (len(w.letters),)
                row = []
                rest = w
                consumed = 0
                for j in range(r):
                    u, rest = split_word(rest, bounds[j + 1] - consumed)
                    consumed = bounds[j + 1]
                    row.append(u)
                pieces.append(row)
            factors = tuple(tuple(pieces[i][j] for i in range(len(key))) for j in range(r))
            if reduced and any(self.is_unit(f) for f in factors):
                continue
            # Koszul sign of moving from slot-major to factor-major order
            degs = [[word_degree(a, p) for p in row] for a, row in zip(self.sources, pieces)]
            exp = 0
            for i1 in range(len(key)):
                for j1 in range(r):
                    for i2 in range(i1 + 1, len(key)):
                        for j2 in range(j1):
                            exp += degs[i1][j1] * degs[i2][j2]
            add_into(out, {factors: sign(exp)})
        return out

    def delta_all(self, key, reduced: bool = True) -> Iterable:
        """Yield (factors, sign) for every r >= 1 of the reduced iterated comultiplication."""
        top = max(self.weight(key), 1)
        for r in range(1, top + 1):
            for factors, s in self.delta(key, r, reduced).items():
                yield factors, s
