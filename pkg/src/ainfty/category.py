"""A-infinity categories as finite sparse data, and what can be computed from them.

Morphism basis elements are :class:`Mor` triples ``(src, tgt, label)``.  An
argument tuple for ``m_k`` lists composable morphisms in composition order
written left to right: ``(f_k, ..., f_1)`` with ``f_1`` applied first, so
``args[p].src == args[p + 1].tgt``.
"""

from __future__ import annotations

import itertools
from collections import namedtuple
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable

from .graded import GradedVectorSpace, add_into, scaled, shift_sign, sign
from .linalg import Span, SparseMatrix, kernel_basis, solve
from .scalars import QQ, Field

Mor = namedtuple("Mor", "src tgt label")

EXACT = "exact"
TRUNCATED = "truncated"


def multilinear(fn: Callable[[tuple], dict], vectors: list) -> dict:
    """Extend ``fn`` (defined on basis tuples) multilinearly to vectors."""
    out: dict = {}
    for combo in itertools.product(*[list(v.items()) for v in vectors]):
        coeff = 1
        keys = []
        for k, c in combo:
            coeff = coeff * c
            keys.append(k)
        if coeff:
            add_into(out, fn(tuple(keys)), coeff)
    return out


def composable(args) -> bool:
    return all(args[p].src == args[p + 1].tgt for p in range(len(args) - 1))


@dataclass
class Report:
    """Outcome of a relation check.  ``ok`` False carries the first failure."""

    ok: bool
    checked: int
    certified: str
    failure: dict | None = None

    def __bool__(self):
        return self.ok

    def lines(self) -> list[str]:
        head = "PASS" if self.ok else "FAIL"
        out = [f"{head} checked up to n={self.checked} ({self.certified})"]
        if self.failure:
            for k in sorted(self.failure):
                out.append(f"  {k}: {self.failure[k]}")
        return out


class AInftyCategory:
    """Finite A-infinity category with sparse multiplication tables.

    ``mult[k]`` maps argument tuples of basis morphisms to sparse output
    vectors ``{Mor: scalar}``; missing entries are zero.  In ``exact`` mode the
    tables are asserted to vanish for ``k > arity_bound``; in ``truncated``
    mode nothing is claimed there and verdicts are watermarked accordingly.
    """

    def __init__(self, objects: Iterable, homs: dict, mult: dict | None = None,
                 arity_bound: int = 2, mode: str = EXACT, field: Field = QQ,
                 augmentation: dict | None = None, name: str = ""):
        self.objects = tuple(objects)
        obs = set(self.objects)
        self.homs = {}
        for (a, b), sp in homs.items():
            if a not in obs or b not in obs:
                raise ValueError(f"hom ({a!r}, {b!r}) references undeclared object")
            if not isinstance(sp, GradedVectorSpace):
                sp = GradedVectorSpace.of(sp)
            if sp.dim:
                self.homs[(a, b)] = sp
        self.mult = {}
        for k, table in (mult or {}).items():
            clean = {}
            for args, vec in table.items():
                args = tuple(Mor(*x) for x in args)
                vec = {Mor(*o): field(v) for o, v in vec.items() if v}
                if vec:
                    clean[args] = vec
            if clean:
                self.mult[int(k)] = clean
        if mode not in (EXACT, TRUNCATED):
            raise ValueError(f"mode must be {EXACT!r} or {TRUNCATED!r}")
        self.arity_bound = arity_bound
        self.mode = mode
        self.field = field
        self.augmentation = augmentation
        self.name = name
        self._degree = {}
        for (a, b), sp in self.homs.items():
            for l, d in sp.basis:
                self._degree[Mor(a, b, l)] = d

    def __repr__(self):
        return f"AInftyCategory({self.name or '?'}, objects={list(self.objects)})"

    def __eq__(self, other):
        return (isinstance(other, AInftyCategory) and self.objects == other.objects
                and self.homs == other.homs and self.mult == other.mult
                and self.arity_bound == other.arity_bound and self.mode == other.mode
                and self.field == other.field and self.augmentation == other.augmentation)

    __hash__ = object.__hash__

    # -- basis access -------------------------------------------------------
    def hom(self, a, b) -> GradedVectorSpace:
        return self.homs.get((a, b), GradedVectorSpace(()))

    def basis(self, a, b) -> list:
        sp = self.homs.get((a, b))
        return [] if sp is None else [Mor(a, b, l) for l in sp.labels]

    def all_basis(self) -> list:
        return [Mor(a, b, l) for (a, b), sp in self.homs.items() for l in sp.labels]

    def degree(self, x: Mor) -> int:
        return self._degree[x]

    def is_dg(self) -> bool:
        return all(k <= 2 for k in self.mult) and (self.mode == EXACT or self.arity_bound <= 2)

    def m(self, k: int, args: tuple) -> dict:
        return self.mult.get(k, {}).get(args, {})

    def m_vec(self, k: int, vectors: list) -> dict:
        return multilinear(lambda a: self.m(k, a), vectors)

    def chains(self, n: int):
        """All composable n-tuples of basis morphisms (composition order)."""
        by_tgt: dict = {}
        for x in self.all_basis():
            by_tgt.setdefault(x.tgt, []).append(x)

        def extend(prefix):
            if len(prefix) == n:
                yield tuple(prefix)
                return
            for x in by_tgt.get(prefix[-1].src, ()):
                prefix.append(x)
                yield from extend(prefix)
                prefix.pop()

        for x in self.all_basis():
            yield from extend([x])

    def with_mult(self, mult: dict, **kw) -> "AInftyCategory":
        opts = dict(objects=self.objects, homs=self.homs, mult=mult,
                    arity_bound=self.arity_bound, mode=self.mode, field=self.field,
                    augmentation=self.augmentation, name=self.name)
        opts.update(kw)
        return AInftyCategory(**opts)

    def certified_label(self, n_checked: int) -> str:
        if self.mode == EXACT and n_checked >= 2 * self.arity_bound - 1:
            return "exact: certifies all n"
        return f"up to arity {n_checked}"


# -- relation checking ------------------------------------------------------

def degree_violations(a: AInftyCategory):
    """Yield (k, args, message) for table entries breaking degree/typing rules."""
    for k in sorted(a.mult):
        if a.mode == EXACT and k > a.arity_bound:
            for args in sorted(a.mult[k], key=repr):
                yield k, args, f"m_{k} nonzero beyond exact arity bound {a.arity_bound}"
                break
        for args, vec in sorted(a.mult[k].items(), key=lambda kv: repr(kv[0])):
            if len(args) != k or not composable(args):
                yield k, args, "arguments not composable"
                continue
            want = sum(a.degree(x) for x in args) + 2 - k
            for out in vec:
                if out not in a._degree:
                    yield k, args, f"output {out} not a basis morphism"
                elif (out.src, out.tgt) != (args[-1].src, args[0].tgt):
                    yield k, args, f"output {out} has wrong endpoints"
                elif a.degree(out) != want:
                    yield k, args, f"m_{k} has degree {a.degree(out) - want + 2 - k}, expected {2 - k}"


def catrel_value(a, args: tuple) -> dict:
    """Left side of the A-infinity relation evaluated on one basis chain."""
    n = len(args)
    degs = [a.degree(x) for x in args]
    out: dict = {}
    prefix = 0
    for j in range(n):
        for k in range(1, n - j + 1):
            outer = n - k + 1
            if (a.mode == EXACT and (k > a.arity_bound or outer > a.arity_bound)):
                continue
            inner = a.m(k, args[j:j + k])
            if not inner:
                continue
            s = sign(j * k + n - j - k + (2 - k) * prefix)
            for y, c in inner.items():
                add_into(out, a.m(outer, args[:j] + (y,) + args[j + k:]), s * c)
        prefix += degs[j]
    return out


def check_catrel(a, n_max: int, jobs: int = 1) -> Report:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if isinstance(a, AInftyCategory):
        for k, args, msg in degree_violations(a):
            return Report(False, 0, a.certified_label(0),
                          {"n": k, "kind": "degree", "chain": _chain_repr(args), "message": msg})
    ns = range(1, n_max + 1)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_first_catrel_failure, [a] * len(ns), ns))
    else:
        results = [_first_catrel_failure(a, n) for n in ns]
    for n, fail in zip(ns, results):
        if fail is not None:
            return Report(False, n, a.certified_label(n), fail)
    return Report(True, n_max, a.certified_label(n_max))


def _first_catrel_failure(a, n):
    for args in a.chains(n):
        val = catrel_value(a, args)
        if val:
            return {"n": n, "kind": "relation", "chain": _chain_repr(args),
                    "degree": sum(a.degree(x) for x in args) + 3 - n,
                    "value": _vec_repr(val, a.field)}
    return None


def _chain_repr(args) -> str:
    if not args:
        return "()"
    objs = [args[-1].src] + [x.tgt for x in reversed(args)]
    return " -> ".join(map(str, objs)) + " : (" + ", ".join(str(x.label) for x in args) + ")"


def _vec_repr(vec: dict, field: Field) -> str:
    return " + ".join(f"{field.format(v)}*{k.label if isinstance(k, Mor) else k}"
                      for k, v in sorted(vec.items(), key=lambda kv: repr(kv[0])))


# -- strict units -----------------------------------------------------------

@dataclass
class UnitAssignment:
    units: dict  # object -> vector in A(X, X)

    def __getitem__(self, x):
        return self.units[x]


def _linear_system(unknowns: list, equations: list, field: Field):
    """Solve sum_i c_i * eq_vectors[i] == rhs for each equation block.

    ``equations`` is a list of (per-unknown images, rhs) pairs with vectors as
    dicts; rows are indexed by (equation index, output key).
    """
    rows: dict = {}
    rhs: dict = {}
    for e, (images, target) in enumerate(equations):
        for i, img in enumerate(images):
            for key, v in img.items():
                rows.setdefault((e, key), {})[i] = v
        for key, v in target.items():
            rows.setdefault((e, key), {})
            rhs[(e, key)] = v
    keys = sorted(rows, key=repr)
    mat = SparseMatrix.from_dict(len(keys), len(unknowns),
                                 {(r, c): v for r, k in enumerate(keys) for c, v in rows[k].items()},
                                 field)
    b = [rhs.get(k, field.zero) for k in keys]
    return solve(mat, b)


def unit_axiom_violations(a: AInftyCategory, x, u: dict, max_arity: int | None = None) -> list[str]:
    """Check the strict unit axioms for the vector u in A(x, x) verbatim."""
    bad = []
    if any(a.degree(b) != 0 for b in u):
        bad.append("unit not of degree 0")
    if a.m_vec(1, [u]):
        bad.append("m1(id) != 0")
    for f in a.all_basis():
        if f.tgt == x and a.m_vec(2, [u, {f: a.field.one}]) != {f: a.field.one}:
            bad.append(f"m2(id, {f.label}) != {f.label}")
        if f.src == x and a.m_vec(2, [{f: a.field.one}, u]) != {f: a.field.one}:
            bad.append(f"m2({f.label}, id) != {f.label}")
    top = a.arity_bound if max_arity is None else max_arity
    for i in range(3, top + 1):
        for rest in _chains_through(a, x, i - 1):
            for pos in range(i):
                if not _slot_fits(rest, pos, x):
                    continue
                vecs = [{y: a.field.one} for y in rest]
                vecs.insert(pos, u)
                if a.m_vec(i, vecs):
                    bad.append(f"m{i} with id in slot {pos} nonzero")
                    break
    return bad


def _slot_fits(rest, pos, x) -> bool:
    if pos > 0 and rest[pos - 1].src != x:
        return False
    if pos < len(rest) and rest[pos].tgt != x:
        return False
    return True


def _chains_through(a, x, length):
    """Chains of the given length that can host an identity of x somewhere."""
    if length == 0:
        yield ()
        return
    for ch in a.chains(length):
        if any(_slot_fits(ch, p, x) for p in range(length + 1)):
            yield ch


def detect_strict_units(a: AInftyCategory):
    """Solve for strict units on every object; None if some object has none."""
    units = {}
    for x in a.objects:
        cand = [b for b in a.basis(x, x) if a.degree(b) == 0]
        if not cand:
            return None
        one = a.field.one
        eqs = [([a.m_vec(1, [{c: one}]) for c in cand], {})]
        for f in a.all_basis():
            fv = {f: one}
            if f.tgt == x:
                eqs.append(([a.m_vec(2, [{c: one}, fv]) for c in cand], fv))
            if f.src == x:
                eqs.append(([a.m_vec(2, [fv, {c: one}]) for c in cand], fv))
        for i in range(3, a.arity_bound + 1):
            for rest in _chains_through(a, x, i - 1):
                for pos in range(i):
                    if not _slot_fits(rest, pos, x):
                        continue
                    imgs = []
                    for c in cand:
                        vecs = [{y: one} for y in rest]
                        vecs.insert(pos, {c: one})
                        imgs.append(a.m_vec(i, vecs))
                    eqs.append((imgs, {}))
        sol = _linear_system(cand, eqs, a.field)
        if sol is None:
            return None
        u = {c: v for c, v in zip(cand, sol) if v}
        if unit_axiom_violations(a, x, u):
            return None
        units[x] = u
    return UnitAssignment(units)


# -- cohomology -------------------------------------------------------------

class HomCohomology:
    """H(A(X, Y)) with cocycle representatives and class coordinates."""

    def __init__(self, a, x, y):
        self.source, self.target = x, y
        basis = list(a.basis(x, y))
        by_deg: dict = {}
        for b in basis:
            by_deg.setdefault(a.degree(b), []).append(b)
        self.reps: list[dict] = []
        self.degrees: list[int] = []
        self.span = Span(a.field, track=True)
        self._build(a, by_deg)

    def _build(self, a, by_deg):
        field = a.field
        one = field.one
        for b_list in by_deg.values():
            for b in b_list:
                img = a.m_vec(1, [{b: one}])
                if img:
                    self.span.add(img, tag=None)
        for d in sorted(by_deg):
            src = by_deg[d]
            images = [a.m_vec(1, [{b: one}]) for b in src]
            tgt_keys = sorted({k for img in images for k in img}, key=repr)
            index = {k: i for i, k in enumerate(tgt_keys)}
            mat = SparseMatrix.from_dict(len(tgt_keys), len(src),
                                         {(index[k], j): v for j, img in enumerate(images)
                                          for k, v in img.items()}, field)
            for z in kernel_basis(mat):
                vec = {src[j]: v for j, v in enumerate(z) if v}
                tag = len(self.reps)
                if self.span.add(vec, tag=("class", tag)):
                    self.reps.append(vec)
                    self.degrees.append(d)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def dims(self) -> dict:
        out: dict = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return out

    def coords(self, z: dict) -> dict:
        """Class coordinates of a cocycle: {class index: scalar}."""
        rem, combo = self.span.reduce(z)
        if rem:
            raise ValueError("vector is not a cocycle of this hom complex")
        return {t[1]: v for t, v in combo.items() if t is not None and v}

    def is_exact(self, z: dict) -> bool:
        rem, combo = self.span.reduce(z)
        return not rem and not any(v for t, v in combo.items() if t is not None)


class CohomologyCategory:
    def __init__(self, a):
        self.category = a
        self.field = a.field
        self.objects = a.objects
        self.homs = {}
        for x in a.objects:
            for y in a.objects:
                self.homs[(x, y)] = HomCohomology(a, x, y)
        self._comp_cache: dict = {}

    def hom(self, x, y) -> HomCohomology:
        return self.homs[(x, y)]

    def compose(self, g: tuple, f: tuple) -> dict:
        """[g] o [f] for classes given as (x, y, index) triples; result coords in H(x_f, y_g)."""
        key = (g, f)
        if key not in self._comp_cache:
            (yg_src, yg_tgt, gi), (xf_src, xf_tgt, fi) = g, f
            if yg_src != xf_tgt:
                raise ValueError("classes not composable")
            gv = self.homs[(yg_src, yg_tgt)].reps[gi]
            fv = self.homs[(xf_src, xf_tgt)].reps[fi]
            prod = self.category.m_vec(2, [gv, fv])
            self._comp_cache[key] = self.homs[(xf_src, yg_tgt)].coords(prod)
        return self._comp_cache[key]

    def compose_vec(self, x, y, z, gc: dict, fc: dict) -> dict:
        """Composition of class-coordinate vectors gc in H(y,z), fc in H(x,y)."""
        out: dict = {}
        for gi, gv in gc.items():
            for fi, fv in fc.items():
                add_into(out, self.compose((y, z, gi), (x, y, fi)), gv * fv)
        return out

    def is_associative(self) -> bool:
        obs = self.objects
        for w, x, y, z in itertools.product(obs, repeat=4):
            for h in range(self.homs[(y, z)].dim):
                for g in range(self.homs[(x, y)].dim):
                    for f in range(self.homs[(w, x)].dim):
                        left = self.compose_vec(w, x, z, self.compose((y, z, h), (x, y, g)), {f: 1})
                        right = self.compose_vec(w, y, z, {h: 1}, self.compose((x, y, g), (w, x, f)))
                        if left != right:
                            return False
        return True

    def units(self):
        """Identity class per object, or None if H is not unital."""
        out = {}
        for x in self.objects:
            hxx = self.homs[(x, x)]
            cand = [i for i, d in enumerate(hxx.degrees) if d == 0]
            eqs = []
            for y in self.objects:
                for fi in range(self.homs[(y, x)].dim):
                    eqs.append(([self.compose((x, x, c), (y, x, fi)) for c in cand], {fi: 1}))
                for gi in range(self.homs[(x, y)].dim):
                    eqs.append(([self.compose((x, y, gi), (x, x, c)) for c in cand], {gi: 1}))
            if not cand:
                if any(rhs for _, rhs in eqs):
                    return None
                out[x] = {}
                continue
            sol = _linear_system(cand, eqs, self.field)
            if sol is None:
                return None
            out[x] = {c: v for c, v in zip(cand, sol) if v}
        return out


def cohomology(a) -> CohomologyCategory:
    return CohomologyCategory(a)


def is_cohomologically_unital(a) -> bool:
    return cohomology(a).units() is not None


# -- augmentation and reduction ---------------------------------------------

def _fresh_label(sp: GradedVectorSpace, base="1") -> str:
    label = base
    taken = set(sp.labels)
    while label in taken:
        label += "'"
    return label


def augment(a: AInftyCategory) -> AInftyCategory:
    """Adjoin a formal strict unit 1_X to every A(X, X)."""
    homs = dict(a.homs)
    units = {}
    for x in a.objects:
        sp = a.hom(x, x)
        lab = _fresh_label(sp)
        homs[(x, x)] = GradedVectorSpace(sp.basis + ((lab, 0),))
        units[x] = Mor(x, x, lab)
    one = a.field.one
    mult = {k: dict(t) for k, t in a.mult.items()}
    m2 = mult.setdefault(2, {})
    for x, u in units.items():
        m2[(u, u)] = {u: one}
    for f in a.all_basis():
        m2[(units[f.tgt], f)] = {f: one}
        m2[(f, units[f.src])] = {f: one}
    aug = {x: {u: one} for x, u in units.items()}
    return AInftyCategory(a.objects, homs, mult, max(a.arity_bound, 2), a.mode, a.field,
                          augmentation=aug, name=f"aug({a.name})" if a.name else "")


class NotAugmented(ValueError):
    pass


def reduce(a: AInftyCategory) -> AInftyCategory:
    """Restrict to the kernel of the augmentation."""
    if not a.augmentation:
        raise NotAugmented("reduce needs an augmented category")
    field = a.field
    # kernel basis: b - eps(b)/eps(p) p for b != p, labelled by b
    drop = {}
    kernel_vec = {}
    for x in a.objects:
        eps = a.augmentation[x]
        p = next(b for b in a.basis(x, x) if eps.get(b))
        drop[x] = p
        for b in a.basis(x, x):
            if b != p:
                v = {b: field.one}
                if eps.get(b):
                    v[p] = -eps[b] / eps[p]
                kernel_vec[b] = v
    homs = {}
    for (s, t), sp in a.homs.items():
        if s == t:
            sp = GradedVectorSpace(tuple((l, d) for l, d in sp.basis if Mor(s, t, l) != drop[s]))
        homs[(s, t)] = sp
    red = AInftyCategory(a.objects, homs, {}, a.arity_bound, a.mode, field)
    mult = {}
    for k in range(1, a.arity_bound + 1):
        table = {}
        for args in red.chains(k):
            vecs = [kernel_vec.get(x, {x: field.one}) for x in args]
            val = a.m_vec(k, vecs)
            out = {}
            for y, c in val.items():
                if y == drop.get(y.src) and y.src == y.tgt:
                    continue
                out[y] = c
            if out:
                table[args] = out
        if table:
            mult[k] = table
    return AInftyCategory(a.objects, homs, mult, a.arity_bound, a.mode, field,
                          name=f"red({a.name})" if a.name else "")


def trivial_category(objects: Iterable, field: Field = QQ) -> AInftyCategory:
    """k_O: one identity per object, zero otherwise."""
    objects = tuple(objects)
    homs = {(x, x): GradedVectorSpace.of([("id", 0)]) for x in objects}
    m2 = {(Mor(x, x, "id"), Mor(x, x, "id")): {Mor(x, x, "id"): field.one} for x in objects}
    return AInftyCategory(objects, homs, {2: m2}, 2, EXACT, field, name="k_O")


class NotDg(ValueError):
    pass


def tensor_dg(a1: AInftyCategory, a2: AInftyCategory) -> AInftyCategory:
    """Tensor product of dg categories with the Koszul sign rule."""
    if not (a1.is_dg() and a2.is_dg()):
        raise NotDg("the tensor product is only defined for dg categories")
    if a1.field != a2.field:
        raise ValueError("field mismatch")
    field = a1.field
    objects = tuple(itertools.product(a1.objects, a2.objects))
    homs = {}
    for (x1, x2) in objects:
        for (y1, y2) in objects:
            s1, s2 = a1.hom(x1, y1), a2.hom(x2, y2)
            basis = tuple(((l1, l2), d1 + d2) for l1, d1 in s1.basis for l2, d2 in s2.basis)
            if basis:
                homs[((x1, x2), (y1, y2))] = GradedVectorSpace(basis)

    def pair(f, g):
        return Mor((f.src, g.src), (f.tgt, g.tgt), (f.label, g.label))

    m1, m2 = {}, {}
    for f in a1.all_basis():
        for g in a2.all_basis():
            out = {}
            for y, c in a1.m(1, (f,)).items():
                add_into(out, {pair(y, g): c})
            s = sign(a1.degree(f))
            for y, c in a2.m(1, (g,)).items():
                add_into(out, {pair(f, y): s * c})
            if out:
                m1[(pair(f, g),)] = out
    for (f, f2), vf in a1.mult.get(2, {}).items():
        for (g, g2), vg in a2.mult.get(2, {}).items():
            s = sign(a2.degree(g) * a1.degree(f2))
            out = {}
            for y1, c1 in vf.items():
                for y2, c2 in vg.items():
                    add_into(out, {pair(y1, y2): s * c1 * c2})
            if out:
                m2[(pair(f, g), pair(f2, g2))] = out
    name = f"{a1.name}(x){a2.name}" if a1.name and a2.name else ""
    return AInftyCategory(objects, homs, {1: m1, 2: m2}, 2, EXACT, field, name=name)


def shifted_degree(a, x) -> int:
    return a.degree(x) - 1


def m_nat(a, args: tuple) -> dict:
    """s^-1 b_k(sx_1, ..., sx_k) with b_k = -s m_k (s^-1)^{(x)k}."""
    k = len(args)
    if a.mode == EXACT and k > a.arity_bound:
        return {}
    val = a.m(k, args)
    if not val:
        return {}
    return scaled(val, -shift_sign([a.degree(x) - 1 for x in args]))
