"""A-infinity functors and multifunctors.

Functor components are stored in the classical form ``F^n(x_1, ..., x_n)``
(degree ``1 - n``).  The bar form used for composition and multifunctors is
``F_nat(x) = (-1)^eps F^n(x)`` where ``eps`` is the shift sign of the letters,
so that ``F~ = s F_nat`` acts on shifted words with degree zero.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable

from .category import (EXACT, TRUNCATED, Mor, Report, _chain_repr, _linear_system, _vec_repr,
                       cohomology, detect_strict_units, m_nat, multilinear)
from .cocat import TensorBar, Word, bar_differential_word, empty_word
from .graded import add_into, scaled, shift_sign, sign
from .linalg import SparseMatrix, rank


def compositions(n: int):
    """Ordered compositions of n, as tuples of block sizes read left to right."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def split_blocks(args, sizes):
    out, p = [], 0
    for t in sizes:
        out.append(args[p:p + t])
        p += t
    return out


def partition_sign(degs, sizes) -> int:
    """Sign of the term m_r(F^{t_1} x ... x F^{t_r}) on inputs with degrees degs."""
    exp, left, left_deg = 0, 0, 0
    for t in sizes:
        exp += (1 - t) * (left + left_deg)
        left += t
        left_deg += sum(degs[left - t:left])
    return sign(exp)


class AInftyFunctor:
    def __init__(self, source, target, object_map: dict, components: dict | None = None,
                 arity_bound: int = 1, mode: str = EXACT, rule: Callable | None = None,
                 name: str = ""):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        missing = [x for x in source.objects if x not in self.object_map]
        if missing:
            raise ValueError(f"object map missing {missing}")
        field = target.field
        self.components = {}
        for k, table in (components or {}).items():
            clean = {}
            for args, vec in table.items():
                args = tuple(Mor(*x) for x in args)
                vec = {Mor(*o): field(v) for o, v in vec.items() if v}
                if vec:
                    clean[args] = vec
            if clean:
                self.components[int(k)] = clean
        self.arity_bound = arity_bound
        self.mode = mode
        self.rule = rule
        self.name = name
        self.field = field

    def __repr__(self):
        return f"AInftyFunctor({self.name or '?'}: {self.source.name} -> {self.target.name})"

    def F(self, args: tuple) -> dict:
        k = len(args)
        if self.mode == EXACT and k > self.arity_bound:
            return {}
        if self.rule is not None:
            return self.rule(args)
        return self.components.get(k, {}).get(args, {})

    def F_vec(self, vectors: list) -> dict:
        return multilinear(self.F, vectors)

    def nat(self, args: tuple) -> dict:
        val = self.F(args)
        if not val:
            return {}
        return scaled(val, shift_sign([self.source.degree(x) - 1 for x in args]))

    def nat_vec(self, vectors: list) -> dict:
        return multilinear(self.nat, vectors)

    def tabulate(self, n_max: int) -> "AInftyFunctor":
        """Materialize rule-based components up to arity n_max."""
        comps = {}
        for n in range(1, n_max + 1):
            table = {}
            for args in self.source.chains(n):
                v = self.F(args)
                if v:
                    table[args] = v
            if table:
                comps[n] = table
        return AInftyFunctor(self.source, self.target, self.object_map, comps,
                             n_max, self.mode, None, self.name)

    def certified_label(self, n: int) -> str:
        if self.mode == EXACT and self.source.mode == EXACT and self.target.mode == EXACT:
            top = self.arity_bound + max(self.source.arity_bound, 1) - 1
            if n >= top and n >= self.arity_bound * max(self.target.arity_bound, 1):
                return "exact: certifies all n"
        return f"up to arity {n}"


def identity_functor(a) -> AInftyFunctor:
    one = a.field.one
    return AInftyFunctor(a, a, {x: x for x in a.objects},
                         rule=lambda args: {args[0]: one} if len(args) == 1 else {},
                         arity_bound=1, name="id")


def strict_functor(source, target, object_map: dict, linear: dict, name: str = "") -> AInftyFunctor:
    """Functor with only F^1, given on basis morphisms as {Mor: vector}."""
    comps = {1: {(x,): v for x, v in linear.items()}}
    return AInftyFunctor(source, target, object_map, comps, 1, EXACT, name=name)


def functor_degree_violations(f: AInftyFunctor):
    for k, table in sorted(f.components.items()):
        for args, vec in table.items():
            want_src, want_tgt = f.object_map[args[-1].src], f.object_map[args[0].tgt]
            want = sum(f.source.degree(x) for x in args) + 1 - k
            for y in vec:
                if (y.src, y.tgt) != (want_src, want_tgt):
                    yield k, args, f"output {y} has wrong endpoints"
                elif f.target.degree(y) != want:
                    yield k, args, f"F^{k} output degree {f.target.degree(y)}, expected {want}"


def funrel_value(f: AInftyFunctor, args: tuple) -> dict:
    """LHS - RHS of the functor relation on one chain, with the classical signs."""
    a, b = f.source, f.target
    n = len(args)
    degs = [a.degree(x) for x in args]
    out: dict = {}
    prefix = 0
    for j in range(n):
        for k in range(1, n - j + 1):
            if a.mode == EXACT and k > a.arity_bound:
                break
            inner = a.m(k, args[j:j + k])
            if not inner:
                continue
            s = sign(j * k + n - j - k + (2 - k) * prefix)
            for y, c in inner.items():
                add_into(out, f.F(args[:j] + (y,) + args[j + k:]), s * c)
        prefix += degs[j]
    for sizes in compositions(n):
        r = len(sizes)
        if b.mode == EXACT and r > b.arity_bound:
            continue
        blocks = split_blocks(args, sizes)
        vals = [f.F(bl) for bl in blocks]
        if not all(vals):
            continue
        add_into(out, b.m_vec(r, vals), -partition_sign(degs, sizes))
    return out


def funrel_value_bar(f: AInftyFunctor, args: tuple) -> dict:
    """Same relation in bar form: F~ d = pr_1 d B(F) on the word args, nat-scaled."""
    a, b = f.source, f.target
    w = Word(args[-1].src, args[0].tgt, args)
    out: dict = {}
    for w2, c in bar_differential_word(a, w).items():
        add_into(out, f.nat(w2.letters), c)
    for sizes in compositions(len(args)):
        blocks = split_blocks(args, sizes)
        vals = [f.nat(bl) for bl in blocks]
        if not all(vals):
            continue
        add_into(out, multilinear(lambda ys: m_nat(b, ys), vals), -1)
    return out


def check_funrel(f: AInftyFunctor, n_max: int, route: str = "direct") -> Report:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    for k, args, msg in functor_degree_violations(f):
        return Report(False, 0, f.certified_label(0),
                      {"n": k, "kind": "degree", "chain": _chain_repr(args), "message": msg})
    value = funrel_value if route == "direct" else funrel_value_bar
    for n in range(1, n_max + 1):
        for args in f.source.chains(n):
            val = value(f, args)
            if val:
                return Report(False, n, f.certified_label(n),
                              {"n": n, "kind": "relation", "chain": _chain_repr(args),
                               "value": _vec_repr(val, f.field)})
    return Report(True, n_max, f.certified_label(n_max))


# -- composition --------------------------------------------------------------

def _compose_arity(f, g) -> int:
    return f.arity_bound * g.arity_bound


def compose(f: AInftyFunctor, g: AInftyFunctor, route: str = "bar") -> AInftyFunctor:
    """g o f, evaluated lazily (and memoized) up to the arity where it can be nonzero."""
    if f.target is not g.source and f.target != g.source:
        raise ValueError("functors not composable")
    mode = EXACT if f.mode == g.mode == EXACT else TRUNCATED
    if mode == EXACT:
        top = _compose_arity(f, g)
    else:
        # an exact functor is known at every arity, a truncated one only up to its bound
        top = min(h.arity_bound for h in (f, g) if h.mode != EXACT)
    obj = {x: g.object_map[f.object_map[x]] for x in f.source.objects}
    raw = _compose_rule_bar(f, g) if route == "bar" else _compose_rule_direct(f, g)
    cache: dict = {}

    def rule(args):
        if args not in cache:
            cache[args] = raw(args)
        return cache[args]
    return AInftyFunctor(f.source, g.target, obj, arity_bound=top, mode=mode, rule=rule,
                         name=f"{g.name}o{f.name}" if f.name and g.name else "")


def _compose_rule_direct(f, g):
    def rule(args):
        degs = [f.source.degree(x) for x in args]
        out: dict = {}
        for sizes in compositions(len(args)):
            vals = [f.F(bl) for bl in split_blocks(args, sizes)]
            if all(vals):
                add_into(out, g.F_vec(vals), partition_sign(degs, sizes))
        return out
    return rule


def _compose_rule_bar(f, g):
    def rule(args):
        out: dict = {}
        for sizes in compositions(len(args)):
            vals = [f.nat(bl) for bl in split_blocks(args, sizes)]
            if all(vals):
                add_into(out, g.nat_vec(vals))
        return scaled(out, shift_sign([f.source.degree(x) - 1 for x in args])) if out else out
    return rule


def functors_equal(f: AInftyFunctor, g: AInftyFunctor, n_max: int) -> bool:
    if f.object_map != g.object_map:
        return False
    return all(f.F(args) == g.F(args) for n in range(1, n_max + 1) for args in f.source.chains(n))


# -- cohomology ---------------------------------------------------------------

class HFunctor:
    """H(F): per hom pair, the matrix of F^1 on cohomology classes."""

    def __init__(self, f: AInftyFunctor, hs=None, ht=None):
        self.functor = f
        self.hs = hs or cohomology(f.source)
        self.ht = ht or cohomology(f.target)
        self.maps = {}
        for (x, y), hom in self.hs.homs.items():
            tgt = self.ht.hom(f.object_map[x], f.object_map[y])
            self.maps[(x, y)] = [tgt.coords(f.F_vec([rep])) for rep in hom.reps]

    def apply(self, x, y, coords: dict) -> dict:
        out: dict = {}
        for i, c in coords.items():
            add_into(out, self.maps[(x, y)][i], c)
        return out

    def is_iso_on(self, x, y) -> bool:
        src = self.hs.hom(x, y)
        tgt = self.ht.hom(self.functor.object_map[x], self.functor.object_map[y])
        if src.dims() != tgt.dims():
            return False
        if src.dim == 0:
            return True
        mat = SparseMatrix.from_dict(tgt.dim, src.dim,
                                     {(r, c): v for c, col in enumerate(self.maps[(x, y)])
                                      for r, v in col.items()}, self.functor.field)
        return rank(mat) == src.dim

    def matrix(self, x, y) -> list:
        tgt = self.ht.hom(self.functor.object_map[x], self.functor.object_map[y])
        return [[col.get(r, 0) for col in self.maps[(x, y)]] for r in range(tgt.dim)]


def h_functor(f: AInftyFunctor) -> HFunctor:
    return HFunctor(f)


def is_quasi_isomorphism(f: AInftyFunctor) -> bool:
    om = f.object_map
    if len(set(om.values())) != len(om) or set(om.values()) != set(f.target.objects):
        return False
    hf = HFunctor(f)
    return all(hf.is_iso_on(x, y) for x in f.source.objects for y in f.source.objects)


def _find_iso(hc, x, y, rng, witness: bool = False):
    """Search H^0(x, y) for an invertible class (needs H unital)."""
    units = hc.units()
    if units is None:
        return False
    if x == y and not witness:
        return True
    hxy, hyx = hc.hom(x, y), hc.hom(y, x)
    deg0 = [i for i, d in enumerate(hxy.degrees) if d == 0]
    back = [i for i, d in enumerate(hyx.degrees) if d == 0]
    if not deg0 or not back:
        return False
    candidates = [{i: 1} for i in deg0]
    candidates += [{i: 1, j: 1} for i, j in itertools.combinations(deg0, 2)]
    candidates += [{i: rng.randint(1, 10**6) for i in deg0} for _ in range(4)]
    for u in candidates:
        # solve v with v u = id_x and u v = id_y
        imgs = []
        for j in back:
            imgs.append((hc.compose_vec(x, y, x, {j: 1}, u), hc.compose_vec(y, x, y, u, {j: 1})))
        eqs = [([im[0] for im in imgs], units[x]), ([im[1] for im in imgs], units[y])]
        sol = _linear_system(back, eqs, hc.field)
        if sol is not None:
            if not witness:
                return True
            rep_u: dict = {}
            for i, c in u.items():
                add_into(rep_u, hxy.reps[i], c)
            rep_v: dict = {}
            for j, c in zip(back, sol):
                if c:
                    add_into(rep_v, hyx.reps[j], c)
            return rep_u, rep_v
    return False


def is_quasi_equivalence(f: AInftyFunctor, seed: int = 0) -> bool:
    hf = HFunctor(f)
    if not all(hf.is_iso_on(x, y) for x in f.source.objects for y in f.source.objects):
        return False
    images = set(f.object_map.values())
    rng = random.Random(seed)
    for y in f.target.objects:
        if y in images:
            continue
        if not any(_find_iso(hf.ht, fx, y, rng) for fx in images):
            return False
    return True


# -- unitality ----------------------------------------------------------------

def is_strictly_unital_functor(f: AInftyFunctor, n_max: int | None = None) -> bool:
    us, ut = detect_strict_units(f.source), detect_strict_units(f.target)
    if us is None or ut is None:
        return False
    for x in f.source.objects:
        if f.F_vec([us[x]]) != ut[f.object_map[x]]:
            return False
    top = f.arity_bound if n_max is None else n_max
    for n in range(2, top + 1):
        for rest in f.source.chains(n - 1):
            for pos in range(n):
                obj = rest[pos - 1].src if pos > 0 else rest[0].tgt
                if pos < len(rest) and rest[pos].tgt != obj:
                    continue
                vecs = [{y: f.field.one} for y in rest]
                vecs.insert(pos, us[obj])
                if f.F_vec(vecs):
                    return False
    return True


def is_cohomologically_unital_functor(f: AInftyFunctor) -> bool:
    hf = HFunctor(f)
    us, ut = hf.hs.units(), hf.ht.units()
    if us is None or ut is None:
        return False
    return all(hf.apply(x, x, us[x]) == ut[f.object_map[x]] for x in f.source.objects)


# -- multifunctors ------------------------------------------------------------

class Multifunctor:
    """Cofunctor-level map out of red(aug B(A_1) x ... x aug B(A_n)).

    ``components`` (or ``rule``) send keys (tuples of words) to target vectors
    in nat form: the value of ``s^-1 M~`` on the key.  ``object_map`` sends
    object tuples to target objects.
    """

    def __init__(self, sources: list, target, object_map, components: dict | None = None,
                 rule: Callable | None = None, weight_bound: int = 1, mode: str = EXACT,
                 name: str = ""):
        self.sources = list(sources)
        self.target = target
        self._object_map = object_map
        self.components = {k: v for k, v in (components or {}).items() if v}
        self.rule = rule
        self.weight_bound = weight_bound
        self.mode = mode
        self.name = name
        self.field = target.field
        self.tensor = TensorBar(self.sources, weight_bound, augmented=True)

    def obj(self, objs: tuple):
        if callable(self._object_map):
            return self._object_map(tuple(objs))
        return self._object_map[tuple(objs)]

    def __call__(self, key) -> dict:
        if self.tensor.is_unit(key):
            return {}
        if self.mode == EXACT and self.tensor.weight(key) > self.weight_bound:
            return {}
        if self.rule is not None:
            return self.rule(key)
        return self.components.get(key, {})

    def value_vec(self, vec: dict) -> dict:
        out: dict = {}
        for k, c in vec.items():
            add_into(out, self(k), c)
        return out

    def cofunctor(self, key) -> dict:
        """B(M)(key): target bar words {Word: coeff} (empty word for units)."""
        if self.tensor.is_unit(key):
            return {empty_word(self.obj(self.tensor.src(key))): self.field.one}
        out: dict = {}
        for factors, s in self.tensor.delta_all(key):
            vals = [self(f) for f in factors]
            if not all(vals):
                continue
            for combo in itertools.product(*[list(v.items()) for v in vals]):
                coeff = s
                for _, c in combo:
                    coeff = coeff * c
                letters = tuple(y for y, _ in combo)
                add_into(out, {Word(letters[-1].src, letters[0].tgt, letters): coeff})
        return out

    def tabulate(self, weight_bound: int | None = None) -> "Multifunctor":
        W = self.weight_bound if weight_bound is None else weight_bound
        comps = {k: self(k) for k in self.tensor.all_basis(W)}
        return Multifunctor(self.sources, self.target, self._object_map, comps, None, W,
                            self.mode, self.name)


def multirel_value(M: Multifunctor, key) -> dict:
    """M~ d(key) - pr_1 d B(M)(key), in nat form."""
    out: dict = {}
    for k2, c in M.tensor.d(key).items():
        add_into(out, M(k2), c)
    for factors, s in M.tensor.delta_all(key):
        vals = [M(f) for f in factors]
        if all(vals):
            add_into(out, multilinear(lambda ys: m_nat(M.target, ys), vals), -s)
    return out


def check_multirel(M: Multifunctor, weight: int) -> Report:
    for key in M.tensor.all_basis(weight):
        val = multirel_value(M, key)
        if val:
            return Report(False, M.tensor.weight(key), f"up to weight {weight}",
                          {"n": M.tensor.weight(key), "kind": "relation", "chain": repr(key),
                           "value": _vec_repr(val, M.field)})
    return Report(True, weight, f"up to weight {weight}")


def functor_to_multifunctor(f: AInftyFunctor) -> Multifunctor:
    return Multifunctor([f.source], f.target, lambda objs: f.object_map[objs[0]],
                        rule=lambda key: f.nat(key[0].letters),
                        weight_bound=f.arity_bound, mode=f.mode, name=f.name)


def restrict_multifunctor(M: Multifunctor, slot: int, fixed: list) -> AInftyFunctor:
    """Fix the objects of every source except ``slot``; ``fixed`` lists them in source order
    (the entry at ``slot`` is ignored)."""
    fixed = list(fixed)
    for i, (a, x) in enumerate(zip(M.sources, fixed)):
        if i != slot and x not in a.objects:
            raise ValueError(f"object {x!r} not in source {i}")
    a = M.sources[slot]

    def objs_at(x):
        return tuple(x if i == slot else fixed[i] for i in range(len(M.sources)))

    def rule(args):
        key = tuple(Word(args[-1].src, args[0].tgt, args) if i == slot else empty_word(fixed[i])
                    for i in range(len(M.sources)))
        val = M(key)
        return scaled(val, shift_sign([a.degree(x) - 1 for x in args])) if val else val

    return AInftyFunctor(a, M.target, {x: M.obj(objs_at(x)) for x in a.objects},
                         rule=rule, arity_bound=M.weight_bound, mode=M.mode,
                         name=f"{M.name}|{slot}")


def compose_functor_after_multi(M: Multifunctor, g: AInftyFunctor) -> Multifunctor:
    """g o M as a multifunctor: sum over the reduced iterated comultiplication."""
    mode = EXACT if M.mode == g.mode == EXACT else TRUNCATED
    W = M.weight_bound * g.arity_bound if mode == EXACT else M.weight_bound

    def rule(key):
        out: dict = {}
        for factors, s in M.tensor.delta_all(key):
            vals = [M(f) for f in factors]
            if all(vals):
                add_into(out, g.nat_vec(vals), s)
        return out

    return Multifunctor(M.sources, g.target, lambda objs: g.object_map[M.obj(objs)],
                        rule=rule, weight_bound=W, mode=mode,
                        name=f"{g.name}o{M.name}" if g.name and M.name else "")


def is_cohomologically_unital_multifunctor(M: Multifunctor) -> bool:
    for slot in range(len(M.sources)):
        others = [a.objects for i, a in enumerate(M.sources) if i != slot]
        for combo in itertools.product(*others):
            fixed = list(combo)
            fixed.insert(slot, None)
            if not is_cohomologically_unital_functor(restrict_multifunctor(M, slot, fixed)):
                return False
    return True
