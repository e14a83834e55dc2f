"""The non-equalizer example and the finite ingredients of the internal Hom comparison."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .barcobar import CobarCategory, CobarFunctor, Cofunctor, adjunction_transpose
from .category import (EXACT, TRUNCATED, AInftyCategory, Mor, Report, augment, detect_strict_units,
                       m_nat, multilinear, reduce, tensor_dg, unit_axiom_violations)
from .cocat import TensorBar, Word, empty_word
from .fun import FunCategory, Prenat, check_transport, identity_nat, invertible_class, m1, whisker_left
from .functor import (AInftyFunctor, HFunctor, Multifunctor, check_funrel, check_multirel, compose,
                      compose_functor_after_multi, functors_equal, is_cohomologically_unital_multifunctor,
                      is_strictly_unital_functor, multirel_value, restrict_multifunctor, strict_functor)
from .graded import add_into, scaled, shift_sign
from .linalg import Span, SparseMatrix, solve
from .zoo import PT, dual, dual0, dual2, _algebra, unital_products


# -- the non-equalizer example -------------------------------------------------

@dataclass
class CounterexampleBundle:
    A: AInftyCategory
    A_prime: AInftyCategory
    A0: AInftyCategory
    F1: AInftyFunctor
    F2: AInftyFunctor
    J1: AInftyFunctor
    J2: AInftyFunctor

    def checks(self, n_max: int = 8) -> dict:
        out = {f"check_funrel({f.name})": check_funrel(f, n_max).ok
               for f in (self.F1, self.F2, self.J1, self.J2)}
        out["F2 strictly unital"] = is_strictly_unital_functor(self.F2)
        for J in (self.J1, self.J2):
            out[f"F1o{J.name} = F2o{J.name}"] = functors_equal(compose(J, self.F1), compose(J, self.F2), n_max)
        return out


def _mor(l):
    return Mor(PT, PT, l)


def build_counterexample() -> CounterexampleBundle:
    A, Ap, A0 = dual2(), dual(-1, "e"), dual0()
    one = {_mor("1"): 1}
    F1 = AInftyFunctor(A, Ap, {PT: PT}, {1: {(_mor("1"),): one}}, 1, EXACT, name="F1")
    F2 = AInftyFunctor(A, Ap, {PT: PT}, {1: {(_mor("1"),): one},
                                         2: {(_mor("e1"), _mor("e2")): {_mor("e"): 1}}},
                       2, EXACT, name="F2")
    J = [AInftyFunctor(A0, A, {PT: PT}, {1: {(_mor("1"),): one, (_mor("e0"),): {_mor(f"e{i}"): 1}}},
                       1, EXACT, name=f"J{i}") for i in (1, 2)]
    return CounterexampleBundle(A, Ap, A0, F1, F2, J[0], J[1])


class PreconditionError(ValueError):
    pass


def _surjective_linear(g: AInftyFunctor) -> bool:
    for (x, y), sp in g.target.homs.items():
        span = Span(g.field)
        for b in g.source.all_basis():
            if g.object_map[b.src] == x and g.object_map[b.tgt] == y:
                span.add(g.F((b,)))
        if not all(span.contains({t: g.field.one}) for t in g.target.basis(x, y)):
            return False
    return True


def equalizer_obstruction(g: AInftyFunctor, bundle: CounterexampleBundle | None = None,
                          n_max: int = 4) -> Report:
    """(F1 o g)^2 - (F2 o g)^2; nonzero certifies that g cannot equalize F1 and F2."""
    bundle = bundle or build_counterexample()
    if g.target != bundle.A:
        raise PreconditionError("g must target K[e1,e2]")
    if not _surjective_linear(g):
        raise PreconditionError("g^1 is not surjective")
    if not check_funrel(g, n_max).ok:
        raise PreconditionError("g is not an A-infinity functor")
    h1, h2 = compose(g, bundle.F1), compose(g, bundle.F2)
    for args in g.source.chains(2):
        d = dict(h1.F(args))
        add_into(d, h2.F(args), -1)
        if d:
            return Report(True, 2, "arity 2",
                          {"n": 2, "kind": "obstruction", "chain": repr(tuple(x.label for x in args)),
                           "difference": {str(k.label): str(v) for k, v in d.items()}})
    return Report(False, 2, "arity 2", {"kind": "no obstruction", "message": "(F1 o g)^2 = (F2 o g)^2"})


def surjective_cover() -> AInftyFunctor:
    """K[a, b, c] with zero products onto K[e1, e2]: a -> e1, b -> e2, c -> e1 + e2."""
    B = _algebra([("1", 0), ("a", 0), ("b", 0), ("c", 0)], unital_products(["a", "b", "c"]), name="K[a,b,c]")
    A = dual2()
    lin = {_mor("1"): {_mor("1"): 1}, _mor("a"): {_mor("e1"): 1}, _mor("b"): {_mor("e2"): 1},
           _mor("c"): {_mor("e1"): 1, _mor("e2"): 1}}
    return strict_functor(B, A, {PT: PT}, lin, name="g")


# -- the reduced augmented tensor --------------------------------------------

@dataclass
class TensorUnitData:
    a1: AInftyCategory
    a2: AInftyCategory
    tensor: AInftyCategory  # a1 (x) a2
    R: AInftyCategory  # red(aug a1 (x) aug a2)
    I: AInftyFunctor
    P: AInftyFunctor
    e: dict  # object -> unit vector of R
    units1: dict
    units2: dict
    one1: dict  # object -> formal unit Mor label in aug a1
    one2: dict
    checks: dict = dc_field(default_factory=dict)

    def tensor_mor(self, f_label, g_label, x, y):
        return Mor(x, y, (f_label, g_label))


def _pair_vec(u: dict, v: dict, x, y) -> dict:
    """u (x) v as a vector of tensor basis morphisms (labels are pairs)."""
    out: dict = {}
    for f, a in u.items():
        for g, b in v.items():
            add_into(out, {Mor((f.src, g.src), (f.tgt, g.tgt), (f.label, g.label)): a * b})
    return out


def build_tensor_unit(a1: AInftyCategory, a2: AInftyCategory) -> TensorUnitData:
    u1, u2 = detect_strict_units(a1), detect_strict_units(a2)
    if u1 is None or u2 is None:
        raise ValueError("inputs must be strictly unital")
    if not (a1.is_dg() and a2.is_dg()):
        raise ValueError("inputs must be dg")
    b1, b2 = augment(a1), augment(a2)
    big = tensor_dg(b1, b2)
    one1 = {x: next(iter(v)) for x, v in b1.augmentation.items()}
    one2 = {x: next(iter(v)) for x, v in b2.augmentation.items()}
    aug = {}
    for (x1, x2) in big.objects:
        o1, o2 = one1[x1], one2[x2]
        aug[(x1, x2)] = {Mor((x1, x2), (x1, x2), (o1.label, o2.label)): big.field.one}
    R = reduce(big.with_mult(big.mult, augmentation=aug))
    R.name = "red(aug x aug)"
    T = tensor_dg(a1, a2)
    one = a1.field.one
    e = {}
    for (x1, x2) in R.objects:
        o1, o2 = {one1[x1]: one}, {one2[x2]: one}
        vec = _pair_vec(u1[x1], o2, x1, x2)
        add_into(vec, _pair_vec(u1[x1], u2[x2], x1, x2), -1)
        add_into(vec, _pair_vec(o1, u2[x2], x1, x2))
        e[(x1, x2)] = vec
    I = strict_functor(T, R, {x: x for x in T.objects},
                       {m: {m: one} for m in T.all_basis()}, name="I")
    lin = {}
    unit_labels1 = {o.label for o in one1.values()}
    unit_labels2 = {o.label for o in one2.values()}
    for m in R.all_basis():
        (x1, x2), (y1, y2) = m.src, m.tgt
        f, g = m.label
        left = u1[x1] if f in unit_labels1 and x1 == y1 and one1[x1].label == f else {Mor(x1, y1, f): one}
        right = u2[x2] if g in unit_labels2 and x2 == y2 and one2[x2].label == g else {Mor(x2, y2, g): one}
        lin[m] = _pair_vec(left, right, x1, x2)
    P = strict_functor(R, T, {x: x for x in R.objects}, lin, name="P")
    data = TensorUnitData(a1, a2, T, R, I, P, e, u1.units, u2.units, one1, one2)
    data.checks = verify_tensor_unit(data)
    return data


def verify_tensor_unit(d: TensorUnitData, n_max: int = 3) -> dict:
    R = d.R
    out = {}
    out["e strict unit"] = all(not unit_axiom_violations(R, x, d.e[x]) for x in R.objects)
    out["m2(e,e) = e"] = all(R.m_vec(2, [d.e[x], d.e[x]]) == d.e[x] for x in R.objects)
    out["P o I = id"] = functors_equal(compose(d.I, d.P), _identity_on(d.tensor), n_max)
    out["P unital"] = is_strictly_unital_functor(d.P)
    id_id = {x: _pair_vec(d.units1[x[0]], d.units2[x[1]], *x) for x in R.objects}
    out["P(e) = id(x)id"] = all(d.P.F_vec([d.e[x]]) == id_id[x] for x in R.objects)
    return out


def _identity_on(a):
    from .functor import identity_functor
    return identity_functor(a)


# -- the bifunctor N ------------------------------------------------------------

class InconsistentSystem(ValueError):
    pass


def solve_bifunctor_N(d: TensorUnitData, arity_bound: int) -> Multifunctor:
    """Solve for N: (a1, a2) -> R with unary parts f -> f(x)1 and 1(x)g.

    Mixed components are unknowns; the multifunctor relation at each weight is
    linear in the unknowns of that weight, given lower weights.  Free variables
    are set to zero.
    """
    a1, a2, R = d.a1, d.a2, d.R
    one = R.field.one
    values: dict = {}
    T = TensorBar([a1, a2], arity_bound, augmented=True)

    def unary(key):
        w1, w2 = key
        if len(w1.letters) == 1 and not w2.letters:
            f = w1.letters[0]
            return {Mor((f.src, w2.src), (f.tgt, w2.src), (f.label, d.one2[w2.src].label)): one}
        if len(w2.letters) == 1 and not w1.letters:
            g = w2.letters[0]
            return {Mor((w1.src, g.src), (w1.src, g.tgt), (d.one1[w1.src].label, g.label)): one}
        return {}

    def rule(key):
        if key in values:
            return values[key]
        return unary(key)

    N = Multifunctor([a1, a2], R, lambda objs: tuple(objs), rule=rule,
                     weight_bound=arity_bound, mode=TRUNCATED, name="N")
    for n in range(2, arity_bound + 1):
        keys = [k for k in T.all_basis() if T.weight(k) == n]
        mixed = [k for k in keys if k[0].letters and k[1].letters]
        unknowns = []
        for k in mixed:
            for y in R.basis(T.src(k), T.tgt(k)):
                if R.degree(y) == T.degree(k) + 1:
                    unknowns.append((k, y))
        col = {u: i for i, u in enumerate(unknowns)}
        rows: dict = {}
        rhs: dict = {}
        for key in keys:
            known = multirel_value(N, key)
            for z, c in known.items():
                rhs[(key, z)] = -c
            # linear part: M(d key) restricted to weight-n keys, minus m_nat_1(M(key))
            for k2, c in T.d(key).items():
                if T.weight(k2) != n:
                    continue
                for (kk, y), i in ((u, col[u]) for u in unknowns if u[0] == k2):
                    add_into(rows.setdefault((key, y), {}), {i: c})
            for (kk, y) in (u for u in unknowns if u[0] == key):
                i = col[(kk, y)]
                for z, c in m_nat(R, (y,)).items():
                    add_into(rows.setdefault((key, z), {}), {i: -c})
        rkeys = sorted(set(rows) | set(rhs), key=repr)
        if not unknowns:
            if any(rhs.values()):
                raise InconsistentSystem(f"no unknowns but nonzero defect at weight {n}")
            continue
        mat = SparseMatrix.from_dict(len(rkeys), len(unknowns),
                                     {(r, c): v for r, k in enumerate(rkeys)
                                      for c, v in rows.get(k, {}).items() if v}, R.field)
        sol = solve(mat, [rhs.get(k, R.field.zero) for k in rkeys])
        if sol is None:
            raise InconsistentSystem(f"bifunctor equations inconsistent at weight {n}")
        for (k, y), v in zip(unknowns, sol):
            if v:
                values.setdefault(k, {})[y] = v
    return N


def p_after_n(d: TensorUnitData, N: Multifunctor) -> Multifunctor:
    return compose_functor_after_multi(N, d.P)


def restriction_matches(d: TensorUnitData, M: Multifunctor, slot: int, n_max: int) -> bool:
    """Restrictions of P o N are f -> f (x) id and g -> id (x) g."""
    others = d.a2.objects if slot == 0 else d.a1.objects
    src = d.a1 if slot == 0 else d.a2
    one = src.field.one
    for z in others:
        fixed = [None, z] if slot == 0 else [z, None]
        F = restrict_multifunctor(M, slot, fixed)
        for n in range(1, n_max + 1):
            for args in src.chains(n):
                if n == 1:
                    f = args[0]
                    if slot == 0:
                        want = _pair_vec({f: one}, d.units2[z], f.src, z)
                    else:
                        want = _pair_vec(d.units1[z], {f: one}, z, f.src)
                else:
                    want = {}
                if F.F(args) != want:
                    return False
    return True


# -- rectified multifunctors ----------------------------------------------------

@dataclass
class RectifiedMultifunctor:
    M: Multifunctor
    C: TensorBar
    cobar: CobarCategory
    hat: CobarFunctor
    checks: dict


def rectify_multifunctor(M: Multifunctor, weight: int) -> RectifiedMultifunctor:
    """M^ on coB(red(aug B(A_1) x ... x aug B(A_n))) with M = M^ o nu_inf."""
    C = TensorBar(M.sources, weight, augmented=True)
    S = CobarCategory(C, weight)
    letters = {c: M(c) for c in C.all_basis()}
    hat = CobarFunctor.from_letters(S, M.target, {x: M.obj(x) for x in C.objects}, letters, name="M^")
    checks = {"M^ dg functor": hat.check().ok}
    # M^ o nu_inf = M: nu sends c to the letter [c], M^ is strict
    checks["M = M^ o nu"] = all(hat(S.make((c,))) == M(c) for c in C.all_basis())
    # uniqueness: the transpose of the cofunctor B(M) gives the same functor
    other = adjunction_transpose(Cofunctor(C, M.target, hat.object_map, letters), "cobar", weight)
    checks["unique"] = other.table == hat.table
    return RectifiedMultifunctor(M, C, S, hat, checks)


# -- the map Psi ----------------------------------------------------------------

@dataclass
class PsiReport:
    ok: bool
    checks: dict
    witness: Prenat | None = None

    def lines(self):
        return [f"{'PASS' if v else 'FAIL'} {k}" for k, v in self.checks.items()]


def psi_roundtrip(d: TensorUnitData, f: AInftyFunctor, N: Multifunctor, weight: int = 1,
                  n_max: int = 3) -> PsiReport:
    """Injectivity mechanism f = f o P o I and the witness F' ~= F' o I o P for F' = f o P."""
    checks = {}
    checks["f = f o P o I"] = functors_equal(compose(compose(d.I, d.P), f), f, n_max)
    Fp = compose(d.P, f)
    FPN = compose_functor_after_multi(N, Fp)
    checks["F' o N cohomologically unital"] = is_cohomologically_unital_multifunctor(FPN)
    # H(F') sends id(x)1, 1(x)id and id(x)id to the identity class
    hf = HFunctor(Fp)
    units_t = hf.ht.units()
    ok = units_t is not None
    one = d.R.field.one
    for x in d.R.objects if ok else ():
        x1, x2 = x
        o1, o2 = {d.one1[x1]: one}, {d.one2[x2]: one}
        for name, vec in (("id(x)1", _pair_vec(d.units1[x1], o2, x1, x2)),
                          ("1(x)id", _pair_vec(o1, d.units2[x2], x1, x2)),
                          ("id(x)id", _pair_vec(d.units1[x1], d.units2[x2], x1, x2))):
            cls = hf.hs.hom(x, x).coords(vec)
            ok &= hf.apply(x, x, cls) == units_t[Fp.object_map[x]]
    checks["H(F') preserves unit classes"] = ok
    # T: id_R -> I o P with T(empty word at x) = id (x) id, and T~ = F' o T
    IP = compose(d.P, d.I)
    from .functor import identity_functor
    idR = identity_functor(d.R)

    def t_rule(key):
        w = key[0]
        if not w.letters:
            x1, x2 = w.src
            return _pair_vec(d.units1[x1], d.units2[x2], x1, x2)
        return {}

    T = Prenat(idR, IP, 0, rule=t_rule, name="T")
    checks["T closed"] = not any(m1(T)(k) for k in T.tensor.all_basis(weight + 1))
    Tt = whisker_left(Fp, T)
    checks["T~ closed"] = not any(m1(Tt)(k) for k in Tt.tensor.all_basis(weight + 1))
    FIP = compose(IP, Fp)
    fc = FunCategory([Fp, FIP], weight)
    vec = fc.from_prenat(0, 1, Tt)
    checks["T~ invertible in H0"] = (not fc.m_vec(1, [vec])) and invertible_class(fc, 0, 1, vec) is not None
    return PsiReport(all(checks.values()), checks, Tt)
