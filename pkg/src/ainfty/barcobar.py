"""Bar and cobar constructions, twisting cochains and the unit/counit maps."""

from __future__ import annotations

import itertools
from collections.abc import Iterable

from .category import (EXACT, TRUNCATED, AInftyCategory, HomCohomology, Mor, Report, m_nat,
                       multilinear, _vec_repr)
from .cocat import TensorBar, Word, empty_word, word
from .functor import AInftyFunctor, compositions, split_blocks
from .graded import GradedVectorSpace, add_into, scaled, shift_sign, sign
from .linalg import SparseMatrix, rank


# -- bar ----------------------------------------------------------------------

def bar(a, weight_bound: int) -> TensorBar:
    """B(a): words of shifted morphisms of length <= weight_bound."""
    return TensorBar([a], weight_bound, augmented=False)


def bar_certified_length(B: TensorBar) -> int:
    """Word length up to which d^2 = 0 is a complete statement.

    d never increases word length, so in exact mode every stored word is
    certified; in truncated mode merges of more than arity_bound letters are
    unknown, so only words no longer than the arity bound are.
    """
    W = B.weight_bound
    return min(W, min((a.arity_bound for a in B.sources if a.mode == TRUNCATED), default=W))


def check_bar_d2(B: TensorBar) -> Report:
    top = bar_certified_length(B)
    for key in B.all_basis(top):
        val = B.d_vec(B.d(key))
        if val:
            return Report(False, B.weight(key), f"words of length <= {top}",
                          {"n": B.weight(key), "kind": "d^2", "chain": repr(key),
                           "value": f"{len(val)} nonzero terms"})
    return Report(True, top, f"words of length <= {top}")


class Cofunctor:
    """Cofunctor C -> B(A) determined by its corestriction (nat form).

    ``values[c]`` is s^-1 pr_1 G(c), a vector in A.  The full cofunctor is the
    sum over the reduced iterated comultiplication of C.
    """

    def __init__(self, source, target, object_map, values: dict, name: str = ""):
        self.source, self.target = source, target
        self.object_map = dict(object_map)
        self.values = {k: v for k, v in values.items() if v}
        self.name = name

    def value(self, key) -> dict:
        return self.values.get(key, {})

    def apply(self, key) -> dict:
        """G(key) as a vector of target bar keys (1-tuples of words)."""
        out: dict = {}
        for factors, s in iter_delta(self.source, key):
            vals = [self.value(f) for f in factors]
            if not all(vals):
                continue
            for combo in itertools.product(*[list(v.items()) for v in vals]):
                coeff = s
                for _, c in combo:
                    coeff = coeff * c
                add_into(out, {(word([y for y, _ in combo]),): coeff})
        return out

    def table(self, weight_bound: int) -> dict:
        return {k: self.apply(k) for k in self.source.all_basis(weight_bound)}


def iter_delta(C, key):
    """Reduced iterated comultiplication of any cocategory, all r >= 1."""
    if isinstance(C, TensorBar):
        yield from C.delta_all(key)
        return
    yield (key,), 1
    # r >= 2 by recursion on the first factor split
    for (k1, k2), s in C.delta(key).items():
        for rest, s2 in iter_delta(C, k2):
            yield (k1,) + rest, s * s2


def bar_functor(f: AInftyFunctor, weight_bound: int) -> Cofunctor:
    """B(f): B(source) -> B(target), corestriction f_nat."""
    src = bar(f.source, weight_bound)
    vals = {k: f.nat(k[0].letters) for k in src.all_basis()}
    return Cofunctor(src, f.target, f.object_map, vals, name=f"B({f.name})")


def cofunctor_commutes(G: Cofunctor, weight_bound: int) -> Report:
    """G d_C = d_B G on every key of weight <= weight_bound."""
    tB = bar(G.target, weight_bound)
    for key in G.source.all_basis(weight_bound):
        lhs: dict = {}
        for k2, c in G.source.d(key).items():
            add_into(lhs, G.apply(k2), c)
        rhs = tB.d_vec(G.apply(key))
        diff = dict(lhs)
        add_into(diff, rhs, -1)
        if diff:
            return Report(False, G.source.weight(key), f"weight <= {weight_bound}",
                          {"n": G.source.weight(key), "kind": "cofunctor", "chain": repr(key)})
    return Report(True, weight_bound, f"weight <= {weight_bound}")


# -- finite cocategories ------------------------------------------------------

class FiniteCocategory:
    """A dg cocategory given by explicit tables.

    ``basis`` lists (key, src, tgt, degree, weight); ``delta`` maps a key to
    its reduced comultiplication {(k1, k2): coeff}; ``d`` to its differential.
    """

    def __init__(self, objects, basis: Iterable, delta: dict, d: dict, field, name: str = ""):
        self.objects = tuple(objects)
        self.field = field
        self.name = name
        self._info = {}
        for key, s, t, deg, wt in basis:
            self._info[key] = (s, t, deg, wt)
        self._delta = {k: v for k, v in delta.items() if v}
        self._d = {k: v for k, v in d.items() if v}
        self.weight_bound = max((i[3] for i in self._info.values()), default=0)

    def src(self, key):
        return self._info[key][0]

    def tgt(self, key):
        return self._info[key][1]

    def degree(self, key) -> int:
        return self._info[key][2]

    def weight(self, key) -> int:
        return self._info[key][3]

    def is_unit(self, key) -> bool:
        return False

    def basis(self, x, y, weight_bound=None):
        W = self.weight_bound if weight_bound is None else weight_bound
        return [k for k, (s, t, _, w) in self._info.items() if s == x and t == y and w <= W]

    def all_basis(self, weight_bound=None):
        return [k for x in self.objects for y in self.objects for k in self.basis(x, y, weight_bound)]

    def d(self, key) -> dict:
        return dict(self._d.get(key, {}))

    def d_vec(self, vec):
        out: dict = {}
        for k, c in vec.items():
            add_into(out, self.d(k), c)
        return out

    def delta(self, key, r: int = 2, reduced: bool = True) -> dict:
        if r != 2 or not reduced:
            raise ValueError("finite cocategories store only the reduced binary comultiplication")
        return dict(self._delta.get(key, {}))


# -- cobar --------------------------------------------------------------------

class CobarCategory:
    """coB(C): words of desuspended letters [c], concatenation product.

    Morphisms are Mor(x, y, letters) with ``letters`` a tuple of C-keys in
    composition order.  The category is dg and exact; ``weight_bound`` only
    limits which morphisms are enumerated.
    """

    arity_bound = 2
    mode = EXACT

    def __init__(self, C, weight_bound: int, name: str = "", augmented: bool = False):
        self.C = C
        self.augmented = augmented
        self.field = C.field
        self.objects = C.objects
        self.weight_bound = weight_bound
        self.name = name or "coB"
        self._basis_cache: dict = {}
        self._m1_cache: dict = {}
        self._weight_cache: dict = {}
        self.augmentation = None

    def __repr__(self):
        return f"CobarCategory(W={self.weight_bound})"

    def unit(self, x) -> Mor:
        return Mor(x, x, ())

    def make(self, letters: tuple) -> Mor:
        letters = tuple(letters)
        return Mor(self.C.src(letters[-1]), self.C.tgt(letters[0]), letters)

    def degree(self, x: Mor) -> int:
        return sum(self.C.degree(c) + 1 for c in x.label)

    def weight(self, x: Mor) -> int:
        w = self._weight_cache.get(x.label)
        if w is None:
            w = self._weight_cache[x.label] = sum(self.C.weight(c) for c in x.label)
        return w

    def letter_degree(self, c) -> int:
        return self.C.degree(c) + 1

    def basis(self, x, y, weight_bound: int | None = None) -> list:
        W = self.weight_bound if weight_bound is None else weight_bound
        key = (x, y, W)
        if key not in self._basis_cache:
            self._basis_cache[key] = [m for m in self._words_from(x, W) if m.tgt == y]
        return self._basis_cache[key]

    def _words_from(self, x, W):
        letters_by_src: dict = {}
        for c in self.C.all_basis(W):
            letters_by_src.setdefault(self.C.src(c), []).append((self.C.weight(c), c, self.C.tgt(c)))
        for v in letters_by_src.values():
            v.sort(key=lambda t: t[0])
        out = [self.unit(x)] if self.augmented else []

        def grow(rev, cur, wt):
            if rev:
                out.append(self.make(tuple(reversed(rev))))
            for w, c, tgt in letters_by_src.get(cur, ()):
                if wt + w > W:
                    break
                rev.append(c)
                grow(rev, tgt, wt + w)
                rev.pop()

        grow([], x, 0)
        out.sort(key=lambda m: (self.weight(m), repr(m.label)))
        return out

    def all_basis(self, weight_bound: int | None = None) -> list:
        return [m for x in self.objects for y in self.objects for m in self.basis(x, y, weight_bound)]

    def hom(self, x, y):
        return GradedVectorSpace(tuple((m.label, self.degree(m)) for m in self.basis(x, y)))

    def chains(self, n: int, weight_bound: int | None = None):
        W = self.weight_bound if weight_bound is None else weight_bound
        by_tgt: dict = {}
        for m in self.all_basis(W):
            by_tgt.setdefault(m.tgt, []).append(m)

        def extend(prefix, wt):
            if len(prefix) == n:
                yield tuple(prefix)
                return
            for m in by_tgt.get(prefix[-1].src, ()):
                w = self.weight(m)
                if wt + w <= W:
                    prefix.append(m)
                    yield from extend(prefix, wt + w)
                    prefix.pop()

        for m in self.all_basis(W):
            yield from extend([m], self.weight(m))

    def letter_m1(self, c) -> dict:
        """m1[c] = -[d c] - sum (-1)^{|c'|} [c'][c''] as {letters tuple: coeff}."""
        out: dict = {}
        for c2, v in self.C.d(c).items():
            add_into(out, {(c2,): -v})
        for (c1, c2), v in self.C.delta(c, 2, True).items():
            add_into(out, {(c1, c2): -sign(self.C.degree(c1)) * v})
        return out

    def m(self, k: int, args: tuple) -> dict:
        if k == 1:
            x = args[0]
            if x not in self._m1_cache:
                self._m1_cache[x] = self._m1(x)
            return self._m1_cache[x]
        if k == 2:
            f, g = args
            if not f.label:
                return {g: self.field.one}
            if not g.label:
                return {f: self.field.one}
            return {self.make(f.label + g.label): self.field.one}
        return {}

    def _m1(self, x: Mor) -> dict:
        out: dict = {}
        letters = x.label
        prefix = 0
        for p, c in enumerate(letters):
            s = sign(prefix)
            for repl, v in self.letter_m1(c).items():
                add_into(out, {self.make(letters[:p] + repl + letters[p + 1:]): s * v})
            prefix += self.letter_degree(c)
        return out

    def m_vec(self, k: int, vectors: list) -> dict:
        return multilinear(lambda a: self.m(k, a), vectors)

    def is_dg(self) -> bool:
        return True

    def certified_label(self, n: int) -> str:
        return f"up to arity {n}, weight <= {self.weight_bound}"

    def weight_cohomology(self, x, y, w: int) -> HomCohomology:
        """Cohomology of the weight-w summand (a subcomplex when d_C and Delta preserve weight)."""
        return HomCohomology(_WeightSlice(self, w), x, y)

    def weight_cohomology_dims(self, x, y, w: int) -> dict:
        """Dimensions only: dim - rank(d out) - rank(d in), degree by degree."""
        by_deg: dict = {}
        for m in self.basis(x, y, w):
            if self.weight(m) == w:
                by_deg.setdefault(self.degree(m), []).append(m)
        ranks = {}
        for d, ms in by_deg.items():
            imgs = [self.m(1, (m,)) for m in ms]
            keys = {k: i for i, k in enumerate({k for img in imgs for k in img})}
            mat = SparseMatrix.from_dict(len(keys), len(ms), {(keys[k], j): v for j, img in enumerate(imgs)
                                                               for k, v in img.items()}, self.field)
            ranks[d] = rank(mat) if keys else 0
        out = {}
        for d, ms in by_deg.items():
            h = len(ms) - ranks[d] - ranks.get(d - 1, 0)
            if h:
                out[d] = h
        return out


class _WeightSlice:
    def __init__(self, cat, w):
        self.cat, self.w = cat, w
        self.field = cat.field

    def basis(self, x, y):
        return [m for m in self.cat.basis(x, y, self.w) if self.cat.weight(m) == self.w]

    def degree(self, m):
        return self.cat.degree(m)

    def m_vec(self, k, vecs):
        return self.cat.m_vec(k, vecs)


def cobar(C, weight_bound: int | None = None) -> CobarCategory:
    W = weight_bound if weight_bound is not None else C.weight_bound
    return CobarCategory(C, W)


# -- the three faces of a morphism C -> B(A) ----------------------------------

class TwistingCochain:
    """Degree-1 quiver map tau: C -> A (dg), stored as {C-key: vector in A}."""

    def __init__(self, source, target, object_map, values: dict, name: str = ""):
        self.source, self.target = source, target
        self.object_map = dict(object_map)
        self.values = {k: v for k, v in values.items() if v}
        self.name = name

    def value(self, key) -> dict:
        return self.values.get(key, {})

    def defect(self, key) -> dict:
        """m1 tau + tau d + m2 (tau x tau) Delta, Koszul sign included."""
        A = self.target
        out = A.m_vec(1, [self.value(key)]) if self.value(key) else {}
        for k2, c in self.source.d(key).items():
            add_into(out, self.value(k2), c)
        for (c1, c2), v in self.source.delta(key, 2, True).items():
            t1, t2 = self.value(c1), self.value(c2)
            if t1 and t2:
                add_into(out, A.m_vec(2, [t1, t2]), sign(self.source.degree(c1)) * v)
        return out

    def check(self, weight_bound: int) -> Report:
        for key in self.source.all_basis(weight_bound):
            if self.defect(key):
                return Report(False, self.source.weight(key), f"weight <= {weight_bound}",
                              {"n": self.source.weight(key), "kind": "twisting", "chain": repr(key)})
        return Report(True, weight_bound, f"weight <= {weight_bound}")


class CobarFunctor:
    """Strict dg functor coB(C) -> A, given on letters and extended multiplicatively.

    Values on words are computed on demand; ``table`` materializes all words
    up to the source weight bound.
    """

    def __init__(self, source: CobarCategory, target, object_map, table: dict | None = None,
                 name: str = "", letters: dict | None = None):
        self.source, self.target = source, target
        self.object_map = dict(object_map)
        self.letters = letters
        self._cache = {k: v for k, v in (table or {}).items() if v}
        self._complete = letters is None
        self.name = name

    @classmethod
    def from_letters(cls, source: CobarCategory, target, object_map, letter_values: dict,
                     name: str = ""):
        return cls(source, target, object_map, name=name, letters=dict(letter_values))

    @property
    def table(self) -> dict:
        if not self._complete:
            for m in self.source.all_basis():
                self(m)
            self._complete = True
        return {k: v for k, v in self._cache.items() if v}

    def __call__(self, m: Mor) -> dict:
        if m in self._cache:
            return self._cache[m]
        if self.source.weight(m) > self.source.weight_bound:
            raise KeyError(f"{m} beyond the tabulated weight")
        if self.letters is None:
            return {}
        val = _multiply_letters(self.target, [self.letters.get(c, {}) for c in m.label])
        self._cache[m] = val
        return val

    def F(self, args) -> dict:
        return self(args[0]) if len(args) == 1 else {}

    def check(self) -> Report:
        S = self.source
        for m in S.all_basis():
            lhs: dict = {}
            for m2, c in S.m(1, (m,)).items():
                add_into(lhs, self(m2), c)
            rhs = self.target.m_vec(1, [self(m)]) if self(m) else {}
            add_into(lhs, rhs, -1)
            if lhs:
                return Report(False, S.weight(m), f"weight <= {S.weight_bound}",
                              {"n": S.weight(m), "kind": "chain map", "chain": repr(m.label)})
            if len(m.label) >= 2:
                head = S.make(m.label[:1])
                tail = S.make(m.label[1:])
                if self(m) != self.target.m_vec(2, [self(head), self(tail)]):
                    return Report(False, S.weight(m), f"weight <= {S.weight_bound}",
                                  {"n": S.weight(m), "kind": "multiplicativity", "chain": repr(m.label)})
        return Report(True, S.weight_bound, f"weight <= {S.weight_bound}")

    def as_functor(self) -> AInftyFunctor:
        return AInftyFunctor(self.source, self.target, self.object_map,
                             rule=self.F, arity_bound=1, mode=EXACT, name=self.name)


def _multiply_letters(A, vals: list) -> dict:
    if not all(vals):
        return {}
    acc = vals[-1]
    for v in reversed(vals[:-1]):
        acc = A.m_vec(2, [v, acc])
        if not acc:
            return {}
    return acc


class InvalidMorphism(ValueError):
    def __init__(self, report: Report):
        super().__init__("; ".join(report.lines()))
        self.report = report


def adjunction_transpose(x, to: str, weight_bound: int | None = None):
    """Convert between a dg cofunctor C -> B(A), a twisting cochain C -> A and a
    dg functor coB(C) -> A.  ``to`` is 'cofunctor', 'twisting' or 'cobar'.
    The input is validated on the weight-truncated region first."""
    if isinstance(x, Cofunctor):
        W = weight_bound or x.source.weight_bound
        rep = cofunctor_commutes(x, W)
        C, A, om = x.source, x.target, x.object_map
        tau = {k: x.value(k) for k in C.all_basis(W)}
    elif isinstance(x, TwistingCochain):
        W = weight_bound or x.source.weight_bound
        rep = x.check(W)
        C, A, om = x.source, x.target, x.object_map
        tau = {k: x.value(k) for k in C.all_basis(W)}
    elif isinstance(x, CobarFunctor):
        W = weight_bound or x.source.weight_bound
        rep = x.check()
        C, A, om = x.source.C, x.target, x.object_map
        tau = {k: x(x.source.make((k,))) for k in C.all_basis(W)}
    else:
        raise TypeError(f"cannot transpose {type(x).__name__}")
    if not rep.ok:
        raise InvalidMorphism(rep)
    if to == "cofunctor":
        return Cofunctor(C, A, om, tau)
    if to == "twisting":
        return TwistingCochain(C, A, om, tau)
    if to == "cobar":
        return CobarFunctor.from_letters(CobarCategory(C, W), A, om, tau)
    raise ValueError(f"unknown target kind {to!r}")


def universal_twisting(a, weight_bound: int) -> TwistingCochain:
    """tau_A: B(A) -> A, projection to length one then desuspension."""
    B = bar(a, weight_bound)
    one = a.field.one
    vals = {k: {k[0].letters[0]: one} for k in B.all_basis() if len(k[0].letters) == 1}
    return TwistingCochain(B, a, {(x,): x for x in a.objects},
                           vals, name="tau")


# -- U^infinity and the unit / counit ----------------------------------------

class Rectification:
    def __init__(self, a, U: CobarCategory, nu: AInftyFunctor):
        self.source = a
        self.U = U
        self.nu = nu


def rectify(a, weight_bound: int) -> Rectification:
    """U^inf(a) = coB(B(a)) truncated at weight_bound, and nu_inf: a -> U^inf(a)."""
    B = bar(a, weight_bound)
    U = CobarCategory(B, weight_bound, name=f"U({a.name})")

    def rule(args):
        letter = (Word(args[-1].src, args[0].tgt, tuple(args)),)
        return {U.make((letter,)): shift_sign([a.degree(x) - 1 for x in args]) * a.field.one}

    nu = AInftyFunctor(a, U, {x: (x,) for x in a.objects}, rule=rule,
                       arity_bound=weight_bound, mode=TRUNCATED, name="nu")
    return Rectification(a, U, nu)


def counit(b, U: CobarCategory) -> CobarFunctor:
    """eta_B: coB(B(b)) -> b for dg b, the transpose of the universal twisting cochain."""
    one = b.field.one
    vals = {}
    for k in U.C.all_basis(U.weight_bound):
        if len(k[0].letters) == 1:
            vals[k] = {k[0].letters[0]: one}
    return CobarFunctor.from_letters(U, b, {(x,): x for x in b.objects}, vals, name="eta")


def triangle_identity(b, weight_bound: int) -> Report:
    """eta[b] o nu_inf[b] = id_b on chains of length <= weight_bound."""
    R = rectify(b, weight_bound)
    eta = counit(b, R.U)
    for n in range(1, weight_bound + 1):
        for args in b.chains(n):
            val: dict = {}
            for y, c in R.nu.F(args).items():
                add_into(val, eta(y), c)
            want = {args[0]: b.field.one} if n == 1 else {}
            if val != want:
                return Report(False, n, f"up to arity {weight_bound}",
                              {"n": n, "kind": "triangle", "chain": repr(args)})
    return Report(True, weight_bound, f"up to arity {weight_bound}")


def per_weight_cohomology(U: CobarCategory, x, y, weights: Iterable[int]) -> dict:
    return {w: U.weight_cohomology_dims(x, y, w) for w in weights}


def nu_bc(C, weight_bound: int) -> Cofunctor:
    """C -> B(coB(C)), transpose of the universal twisting cochain c -> [c]."""
    U = CobarCategory(C, weight_bound)
    one = C.field.one
    vals = {c: {U.make((c,)): one} for c in C.all_basis(weight_bound)}
    return Cofunctor(C, U, {x: x for x in C.objects}, vals, name="nu_bc")


def homotopy_rectify_functor(f: AInftyFunctor) -> CobarFunctor:
    """F' = eta[A] o U^inf(f) o coB(nu_bc[C]) for f: coB(C) -> A with A dg.

    On a letter, F'[c] = sum over the iterated comultiplication of c of
    f_nat([c_1], ..., [c_r]); F' is then extended multiplicatively.
    """
    S = f.source
    if not isinstance(S, CobarCategory):
        raise TypeError("source must be a cobar category")
    C = S.C
    vals = {}
    for c in C.all_basis(S.weight_bound):
        out: dict = {}
        for factors, s in iter_delta(C, c):
            add_into(out, f.nat(tuple(S.make((ci,)) for ci in factors)), s)
        vals[c] = out
    return CobarFunctor.from_letters(S, f.target, f.object_map, vals, name="F'")


def cobar_nu_bc_then_eta_is_identity(C, weight_bound: int) -> bool:
    """eta[coB C] o coB(nu_bc[C]) = id on letters, hence on all words."""
    S = CobarCategory(C, weight_bound)
    G = nu_bc(C, weight_bound)
    for c in C.all_basis(weight_bound):
        img: dict = {}
        for k, v in G.apply(c).items():
            if len(k[0].letters) == 1:
                add_into(img, {k[0].letters[0]: v})
        if img != {S.make((c,)): C.field.one}:
            return False
    return True


# -- gauge transforms: random genuinely A-infinity categories ----------------

def gauge_transform(a: AInftyCategory, g_nat: dict, arity: int) -> tuple[AInftyCategory, AInftyFunctor]:
    """Transport the structure of ``a`` along a cofunctor automorphism G of B(a).

    ``g_nat`` gives G~_k (k >= 2, nat form) on chains; G~_1 = id.  Returns the
    category a' with B(a') = G^-1 B(a) G (tabulated up to ``arity``, truncated
    mode) and the A-infinity isomorphism a' -> a with components G.
    """
    one = a.field.one

    def G(args):
        if len(args) == 1:
            return {args[0]: one}
        return g_nat.get(tuple(args), {})

    H_cache: dict = {}

    def H(args):
        args = tuple(args)
        if len(args) == 1:
            return {args[0]: one}
        if args not in H_cache:
            out: dict = {}
            for sizes in compositions(len(args)):
                if len(sizes) == len(args):
                    continue
                vals = [G(bl) for bl in split_blocks(args, sizes)]
                if all(vals):
                    add_into(out, multilinear(H, vals), -1)
            H_cache[args] = out
        return H_cache[args]

    B = bar(a, arity)
    mult: dict = {}
    for n in range(1, arity + 1):
        table = {}
        for args in a.chains(n):
            # pr_1 G^-1 D G (word): expand G(word), apply D, then H's corestriction
            gw: dict = {}
            for sizes in compositions(n):
                vals = [G(bl) for bl in split_blocks(args, sizes)]
                if all(vals):
                    for combo in itertools.product(*[list(v.items()) for v in vals]):
                        coeff = one
                        for _, c in combo:
                            coeff = coeff * c
                        add_into(gw, {(word([y for y, _ in combo]),): coeff})
            dgw = B.d_vec(gw)
            out: dict = {}
            for k, c in dgw.items():
                add_into(out, H(k[0].letters), c)
            if out:
                # nat -> classical: m = -(-1)^eps m_nat
                table[args] = scaled(out, -shift_sign([a.degree(x) - 1 for x in args]))
        if table:
            mult[n] = table
    a2 = a.with_mult(mult, arity_bound=arity, mode=TRUNCATED, name=f"gauge({a.name})")

    def rule(args):
        val = G(args)
        return scaled(val, shift_sign([a.degree(x) - 1 for x in args])) if val else val

    iso = AInftyFunctor(a2, a, {x: x for x in a.objects}, rule=rule,
                        arity_bound=arity, mode=TRUNCATED, name="G")
    return a2, iso
