"""Prenatural transformations and the dg category of functors into a dg target.

A prenatural transformation of degree d between (multi)functors F1, F2 sends
each key ``c`` of the augmented tensor of bars of the sources (units
included) to an element of the target of degree ``|c| + d``, where ``|c|`` is
the shifted degree.  Its coderivation is

    D_theta(c) = sum (-1)^{(d-1)|u|} B(F2)(u) | s theta(v) | B(F1)(x)

over the full threefold comultiplication c -> u (x) v (x) x.  The differential
is ``m1(theta) = s^-1 pr_1 [d, D_theta]`` and composition is
``m2(t2, t1)(c) = sum (-1)^{d1 |u|} m2(t2(u), t1(v))`` over c -> u (x) v.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable

from .category import EXACT, AInftyCategory, Mor, Report, _linear_system, cohomology, m_nat, multilinear
from .cocat import TensorBar, Word, bar_differential_word, concat_words, empty_word
from .functor import AInftyFunctor, Multifunctor, _find_iso, functor_to_multifunctor
from .graded import GradedVectorSpace, add_into, scaled, sign


def as_multi(f) -> Multifunctor:
    return f if isinstance(f, Multifunctor) else functor_to_multifunctor(f)


class Prenat:
    def __init__(self, F1, F2, degree: int, values: dict | None = None,
                 rule: Callable | None = None, name: str = ""):
        self.F1, self.F2 = as_multi(F1), as_multi(F2)
        if [a.name for a in self.F1.sources] != [a.name for a in self.F2.sources] \
                or len(self.F1.sources) != len(self.F2.sources):
            raise ValueError("functors must share their sources")
        self.degree = degree
        self.values = {k: v for k, v in (values or {}).items() if v}
        self.rule = rule
        self.name = name
        self.target = self.F1.target
        self.field = self.target.field
        self.tensor = TensorBar(self.F1.sources, None, augmented=True, include_units=True)
        self._cache: dict = {}

    def __call__(self, key) -> dict:
        if self.rule is None:
            return self.values.get(key, {})
        if key not in self._cache:
            self._cache[key] = self.rule(key)
        return self._cache[key]

    def restricted(self, weight: int) -> dict:
        T = self.tensor
        return {k: self(k) for k in T.all_basis(weight) if self(k)}

    def degree_violations(self, weight: int):
        T = self.tensor
        for k in T.all_basis(weight):
            for y in self(k):
                if self.target.degree(y) != T.degree(k) + self.degree:
                    yield k, y
                if (y.src, y.tgt) != (self.F1.obj(T.src(k)), self.F2.obj(T.tgt(k))):
                    yield k, y


def _concat(parts):
    """Concatenate bar words, dropping empties; parts is a list of Words."""
    return concat_words(list(parts))


def coderivation(theta: Prenat, key) -> dict:
    """D_theta(key) as a vector of target bar words (Word objects, possibly empty)."""
    T = theta.tensor
    out: dict = {}
    for (u, v, x), s in T.delta(key, 3, reduced=False).items():
        tv = theta(v)
        if not tv:
            continue
        bu = theta.F2.cofunctor(u) if not T.is_unit(u) else {empty_word(theta.F2.obj(T.src(u))): theta.field.one}
        bx = theta.F1.cofunctor(x) if not T.is_unit(x) else {empty_word(theta.F1.obj(T.src(x))): theta.field.one}
        ks = s * sign((theta.degree - 1) * T.degree(u))
        for wu, cu in bu.items():
            for y, cy in tv.items():
                for wx, cx in bx.items():
                    w = _concat([wu, Word(y.src, y.tgt, (y,)), wx])
                    add_into(out, {w: ks * cu * cy * cx})
    return out


def nat_to_coder(theta: Prenat) -> Callable:
    return lambda key: coderivation(theta, key)


def coder_to_nat(D: Callable, F1, F2, degree: int) -> Prenat:
    """Corestriction: theta(c) = s^-1 of the one-letter part of D(c)."""
    def rule(key):
        out: dict = {}
        for w, c in D(key).items():
            if len(w.letters) == 1:
                add_into(out, {w.letters[0]: c})
        return out
    return Prenat(F1, F2, degree, rule=rule)


def m1(theta: Prenat) -> Prenat:
    B = theta.target
    d = theta.degree

    def rule(key):
        out: dict = {}
        for w, c in coderivation(theta, key).items():
            if w.letters:
                add_into(out, m_nat(B, w.letters), c)
        s = -sign(d - 1)
        for k2, c in theta.tensor.d(key).items():
            add_into(out, theta(k2), s * c)
        return out

    return Prenat(theta.F1, theta.F2, d + 1, rule=rule, name=f"m1({theta.name})")


def m2(t2: Prenat, t1: Prenat) -> Prenat:
    """Composition t2 o t1 for t1: F1 -> F2, t2: F2 -> F3 (dg target)."""
    B = t1.target

    def rule(key):
        out: dict = {}
        for (u, v), s in t1.tensor.delta(key, 2, reduced=False).items():
            a, b = t2(u), t1(v)
            if a and b:
                add_into(out, B.m_vec(2, [a, b]), s * sign(t1.degree * t1.tensor.degree(u)))
        return out

    return Prenat(t1.F1, t2.F2, t1.degree + t2.degree, rule=rule)


def identity_nat(F, unit_assignment) -> Prenat:
    """id_F: the strict unit on empty words, zero elsewhere."""
    M = as_multi(F)

    def rule(key):
        T = TensorBar(M.sources, None, True, True)
        if T.is_unit(key):
            return dict(unit_assignment[M.obj(T.src(key))])
        return {}

    return Prenat(M, M, 0, rule=rule, name="id")


def transport_defect(theta: Prenat, key) -> dict:
    """D_{m1 theta}(key) - (d D_theta - (-1)^{|D|} D_theta d)(key); zero when the
    differential transported from coderivations is m1."""
    B = theta.target
    lhs = coderivation(m1(theta), key)
    rhs: dict = {}
    for w, c in coderivation(theta, key).items():
        add_into(rhs, bar_differential_word(B, w), c)
    s = sign(theta.degree - 1)
    for k2, c in theta.tensor.d(key).items():
        add_into(rhs, coderivation(theta, k2), -s * c)
    add_into(lhs, rhs, -1)
    return lhs


def check_transport(theta: Prenat, weight: int) -> Report:
    m1t = m1(theta)
    for key in theta.tensor.all_basis(weight):
        # reuse one m1 instance so its cache is shared
        B = theta.target
        lhs = coderivation(m1t, key)
        rhs: dict = {}
        for w, c in coderivation(theta, key).items():
            add_into(rhs, bar_differential_word(B, w), c)
        s = sign(theta.degree - 1)
        for k2, c in theta.tensor.d(key).items():
            add_into(rhs, coderivation(theta, k2), -s * c)
        add_into(lhs, rhs, -1)
        if lhs:
            return Report(False, theta.tensor.weight(key), f"weight <= {weight}",
                          {"n": theta.tensor.weight(key), "kind": "transport", "chain": repr(key)})
    return Report(True, weight, f"weight <= {weight}")


def random_prenat(rng: random.Random, F1, F2, degree: int, weight: int,
                  density: float = 0.5, coeffs=(-2, -1, 1, 2)) -> Prenat:
    M1, M2 = as_multi(F1), as_multi(F2)
    B = M1.target
    T = TensorBar(M1.sources, weight, True, True)
    vals = {}
    for k in T.all_basis():
        cands = [y for y in B.basis(M1.obj(T.src(k)), M2.obj(T.tgt(k)))
                 if B.degree(y) == T.degree(k) + degree]
        v = {y: B.field(rng.choice(coeffs)) for y in cands if rng.random() < density}
        if v:
            vals[k] = v
    return Prenat(M1, M2, degree, vals)


# -- materialized functor category --------------------------------------------

class FunCategory(AInftyCategory):
    """Fun(A_1..A_n, B) on a finite list of functors, prenats truncated at a weight.

    The truncation is a quotient by the dg ideal of prenats vanishing in weight
    <= L, so this is an honest dg category.  Basis morphisms i -> j are labelled
    (key, b) for a source key and a target basis element b.
    """

    def __init__(self, functors: list, weight: int, name: str = "Fun"):
        ms = [as_multi(f) for f in functors]
        self.functors = ms
        self.L = weight
        B = ms[0].target
        if not B.is_dg():
            raise ValueError("functor categories are materialized only for dg targets")
        T = TensorBar(ms[0].sources, weight, True, True)
        self.tensor = T
        objects = list(range(len(ms)))
        keys = T.all_basis()
        homs = {}
        for i, Fi in enumerate(ms):
            for j, Fj in enumerate(ms):
                basis = []
                for k in keys:
                    for b in B.basis(Fi.obj(T.src(k)), Fj.obj(T.tgt(k))):
                        basis.append(((k, b), B.degree(b) - T.degree(k)))
                if basis:
                    homs[(i, j)] = GradedVectorSpace(tuple(basis))
        super().__init__(objects, homs, {}, 2, EXACT, B.field, name=name)
        self.mult = {1: self._m1_table(), 2: self._m2_table()}
        self.mult = {k: v for k, v in self.mult.items() if v}

    def prenat(self, i, j, vec: dict) -> Prenat:
        """Prenat from a vector of basis morphisms i -> j."""
        vals: dict = {}
        deg = None
        for x, c in vec.items():
            (k, b) = x.label
            deg = self.degree(x)
            add_into(vals.setdefault(k, {}), {b: c})
        return Prenat(self.functors[i], self.functors[j], deg if deg is not None else 0, vals)

    def from_prenat(self, i, j, theta: Prenat) -> dict:
        out = {}
        for k in self.tensor.all_basis():
            for b, c in theta(k).items():
                out[Mor(i, j, (k, b))] = c
        return out

    def _m1_table(self):
        table: dict = {}
        T, B = self.tensor, self.functors[0].target
        for (i, j), sp in self.homs.items():
            for lab, deg in sp.basis:
                k, b = lab
                theta = Prenat(self.functors[i], self.functors[j], deg, {k: {b: B.field.one}})
                mt = m1(theta)
                out = {}
                for k2 in T.all_basis():
                    if T.weight(k2) < T.weight(k):
                        continue
                    for y, c in mt(k2).items():
                        out[Mor(i, j, (k2, y))] = c
                if out:
                    table[(Mor(i, j, lab),)] = out
        return table

    def _m2_table(self):
        table: dict = {}
        T, B = self.tensor, self.functors[0].target
        for key in T.all_basis():
            for (u, v), s in T.delta(key, 2, reduced=False).items():
                for i, j, l in itertools.product(self.objects, repeat=3):
                    Fi, Fj, Fl = self.functors[i], self.functors[j], self.functors[l]
                    for b1 in B.basis(Fi.obj(T.src(v)), Fj.obj(T.tgt(v))):
                        d1 = B.degree(b1) - T.degree(v)
                        for b2 in B.basis(Fj.obj(T.src(u)), Fl.obj(T.tgt(u))):
                            prod = B.m(2, (b2, b1))
                            if not prod:
                                continue
                            sg = s * sign(d1 * T.degree(u))
                            entry = table.setdefault((Mor(j, l, (u, b2)), Mor(i, j, (v, b1))), {})
                            for y, c in prod.items():
                                add_into(entry, {Mor(i, l, (key, y)): sg * c})
        return {k: v for k, v in table.items() if v}


def fun_dg_category(functors: list, weight: int) -> FunCategory:
    return FunCategory(functors, weight)


# -- homotopy and weak equivalence --------------------------------------------

def homotopic(f1, f2, theta: Prenat, weight: int) -> bool:
    """theta(1_A) = 0 on empty words and F2 = F1 + m1(theta) in nat form, up to weight."""
    M1, M2 = as_multi(f1), as_multi(f2)
    if len(M1.sources) != 1:
        raise ValueError("homotopy is defined for unary functors")
    a = M1.sources[0]
    for x in a.objects:
        if M1.obj((x,)) != M2.obj((x,)):
            raise ValueError("object maps differ")
        if theta((empty_word(x),)):
            return False
    mt = m1(Prenat(M1, M2, theta.degree, rule=theta))
    T = TensorBar([a], weight, True, False)
    for k in T.all_basis():
        diff = dict(M2(k))
        add_into(diff, M1(k), -1)
        add_into(diff, mt(k), -1)
        if diff:
            return False
    return True


def homotopy_target(f1: AInftyFunctor, theta_values: dict, weight: int) -> AInftyFunctor:
    """The functor F2 with F2 = F1 + m1(theta), solved arity by arity.

    D_theta uses B(F2) only on strictly shorter words (theta vanishes on empty
    words), so the equation determines F2 recursively.
    """
    M1 = as_multi(f1)
    a = f1.source
    cache: dict = {}

    def f2_nat(key):
        if key in cache:
            return cache[key]
        return M1(key)

    M2 = Multifunctor([a], f1.target, lambda objs: f1.object_map[objs[0]],
                      rule=lambda key: f2_nat(key), weight_bound=weight)
    theta = Prenat(M1, M2, 0, theta_values)
    T = TensorBar([a], weight, True, False)
    for key in sorted(T.all_basis(), key=T.weight):
        val = dict(M1(key))
        add_into(val, m1(theta)(key))
        cache[key] = val
    comps: dict = {}
    from .graded import shift_sign
    for key, val in cache.items():
        args = key[0].letters
        if val:
            comps.setdefault(len(args), {})[args] = scaled(val, shift_sign([a.degree(x) - 1 for x in args]))
    return AInftyFunctor(a, f1.target, f1.object_map, comps, weight,
                         "truncated" if f1.mode != EXACT or weight < 2 * max(f1.arity_bound, 1) else f1.mode,
                         name="F2")


def weakly_equivalent(f1, f2, weight: int, seed: int = 0):
    """Search for mutually inverse H^0 classes in the truncated Fun category.

    Returns (True, (u, v)) with u: f1 -> f2 and v: f2 -> f1 as Prenats, or
    (False, None).  Verdicts hold for the truncation at ``weight``.
    """
    fc = FunCategory([f1, f2], weight)
    hc = cohomology(fc)
    w = _find_iso(hc, 0, 1, random.Random(seed), witness=True)
    if not w:
        return False, None
    u, v = w
    return True, (fc.prenat(0, 1, u), fc.prenat(1, 0, v))


def invertible_class(fc: FunCategory, i, j, vec: dict):
    """Given a cocycle i -> j, solve for an inverse class; returns its representative or None."""
    hc = cohomology(fc)
    units = hc.units()
    if units is None:
        return None
    u = hc.hom(i, j).coords(vec)
    back = [k for k, d in enumerate(hc.hom(j, i).degrees) if d == 0]
    eqs = [([hc.compose_vec(i, j, i, {k: 1}, u) for k in back], units[i]),
           ([hc.compose_vec(j, i, j, u, {k: 1}) for k in back], units[j])]
    sol = _linear_system(back, eqs, fc.field)
    if sol is None:
        return None
    rep: dict = {}
    hom = hc.hom(j, i)
    for k, c in zip(back, sol):
        if c:
            add_into(rep, hom.reps[k], c)
    return rep


# -- pullback and whiskering --------------------------------------------------

def pullback_prenat(M, theta: Prenat) -> Prenat:
    """(M^* theta)(c) = theta(B(M)(c)); a prenat between G1 o M and G2 o M."""
    from .functor import compose_functor_after_multi
    M = as_multi(M)

    def rule(key):
        T = TensorBar(M.sources, None, True, True)
        if T.is_unit(key):
            words = {empty_word(M.obj(T.src(key))): theta.field.one}
        else:
            words = M.cofunctor(key)
        out: dict = {}
        for w, c in words.items():
            add_into(out, theta((w,)), c)
        return out

    G1 = _unary(theta.F1)
    G2 = _unary(theta.F2)
    return Prenat(compose_functor_after_multi(M, G1), compose_functor_after_multi(M, G2),
                  theta.degree, rule=rule)


def _unary(M: Multifunctor) -> AInftyFunctor:
    a = M.sources[0]
    from .graded import shift_sign

    def rule(args):
        val = M((Word(args[-1].src, args[0].tgt, args),))
        return scaled(val, shift_sign([a.degree(x) - 1 for x in args])) if val else val

    return AInftyFunctor(a, M.target, {x: M.obj((x,)) for x in a.objects}, rule=rule,
                         arity_bound=M.weight_bound, mode=M.mode, name=M.name)


def pullback_functor(M, functors: list) -> tuple:
    """Objects and morphism map of M^*: Fun(A, B) -> Fun(A_1..A_n, B)."""
    from .functor import compose_functor_after_multi
    M = as_multi(M)
    objs = [compose_functor_after_multi(M, g) for g in functors]
    return objs, (lambda theta: pullback_prenat(M, theta))


def whisker_left(g: AInftyFunctor, theta: Prenat) -> Prenat:
    """g o theta: (g o theta)(c) = s^-1 pr_1 B(g)(D_theta(c)), between g o F1 and g o F2."""
    from .functor import compose_functor_after_multi

    def rule(key):
        out: dict = {}
        for w, c in coderivation(theta, key).items():
            if w.letters:
                add_into(out, g.nat(w.letters), c)
        return out

    return Prenat(compose_functor_after_multi(theta.F1, g), compose_functor_after_multi(theta.F2, g),
                  theta.degree, rule=rule)
