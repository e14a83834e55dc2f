"""Unital strictification: U(A) = aug U^inf(A) / I_A, computed within a weight bound."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .barcobar import CobarCategory, bar, rectify
from .category import EXACT, Report, augment, detect_strict_units, multilinear, reduce
from .cocat import Word
from .graded import add_into
from .linalg import Span, subquotient_cohomology


@dataclass
class Strictification:
    """The quotient F^W / I_W of the augmented U^inf(A), with membership tests."""

    source: object
    U: CobarCategory
    units: dict
    weight_bound: int
    ideal: dict  # (x, y) -> Span of I_W(x, y)
    ideal_vectors: dict  # (x, y) -> list of spanning vectors
    stabilized: bool
    report: Report | None = None
    unit_checks: dict = dc_field(default_factory=dict)

    def in_ideal(self, x, y, vec: dict) -> bool:
        return self.ideal[(x, y)].contains(vec) if vec else True

    def nu(self, args) -> dict:
        """Classical-form value of nu_A(args) in aug U^inf(A) (before the quotient)."""
        R = self._rect
        return R.nu.F(args)

    def quotient_dims(self, x, y) -> dict:
        U = self.U
        x, y = (x,), (y,)
        by_deg: dict = {}
        for m in U.basis(x, y):
            by_deg.setdefault(U.degree(m), []).append(m)
        span = self.ideal[(x, y)]
        sub: dict = {}
        for v in self.ideal_vectors[(x, y)]:
            d = U.degree(next(iter(v)))
            sub.setdefault(d, []).append(v)
        return {d: len(ks) - sum(1 for _ in _indep(sub.get(d, []), U.field)) for d, ks in by_deg.items()}

    def cohomology_dims(self, x, y) -> dict:
        """H of the truncated quotient complex F^W(x, y) / I_W(x, y)."""
        U = self.U
        return _quotient_cohomology(U, (x,), (y,), self.weight_bound, self.ideal_vectors[((x,), (y,))], [])


def _indep(vectors, field):
    sp = Span(field)
    for v in vectors:
        if sp.add(v):
            yield v


def _by_degree(U, vectors):
    out: dict = {}
    for v in vectors:
        if v:
            out.setdefault(U.degree(next(iter(v))), []).append(v)
    return out


def _quotient_cohomology(U, x, y, W, ideal_vectors, extra_sub):
    keys: dict = {}
    for m in U.basis(x, y, W):
        keys.setdefault(U.degree(m), []).append(m)
    sub = _by_degree(U, list(ideal_vectors) + list(extra_sub))
    return subquotient_cohomology(keys, lambda m: U.m(1, (m,)), sub, U.field)


def _generators(a, U, units, W):
    """Elements whose vanishing makes nu_A strictly unital, as vectors in aug U."""
    one = a.field.one
    gens: dict = {}
    R_letter = lambda args: {U.make(((Word(args[-1].src, args[0].tgt, tuple(args)),),)): one}
    for x, u in units.items():
        g = multilinear(lambda args: R_letter(args), [u])
        add_into(g, {U.unit((x,)): -one})
        gens.setdefault(((x,), (x,)), []).append(g)
    # letters of bar words of length >= 2 with an identity in some slot
    for n in range(2, W + 1):
        for rest in a.chains(n - 1):
            for pos in range(n):
                obj = rest[pos - 1].src if pos > 0 else rest[0].tgt
                if pos < len(rest) and rest[pos].tgt != obj:
                    continue
                vecs = [{y: one} for y in rest]
                vecs.insert(pos, units[obj])
                v = multilinear(R_letter, vecs)
                if v:
                    m = next(iter(v))
                    gens.setdefault((m.src, m.tgt), []).append(v)
    # the case n >= 2 with all other slots empty cannot occur; identities alone in
    # longer words: id composed with id
    for n in range(2, W + 1):
        for x, u in units.items():
            v = multilinear(R_letter, [u] * n)
            if v:
                gens.setdefault(((x,), (x,)), []).append(v)
    return gens


def strictify_unital(a, weight_bound: int, max_rounds: int = 50) -> Strictification:
    """Compute I_W, the part of the ideal of aug U^inf(a) visible in weight <= W.

    The ideal is generated by [s id_X] - 1_X and by the letters nu^n(..., id, ...)
    for n >= 2; it is closed under products with all words and under m1, by a
    span iteration that stops when nothing new appears (or after max_rounds).
    """
    units_assign = detect_strict_units(a)
    if units_assign is None:
        raise ValueError("strictify_unital needs a strictly unital category")
    units = units_assign.units
    W = weight_bound
    U = CobarCategory(bar(a, W), W, name=f"augU({a.name})", augmented=True)
    gens = _generators(a, U, units, W)
    pairs = [(x, y) for x in U.objects for y in U.objects]
    spans = {p: Span(a.field) for p in pairs}
    vecs: dict = {p: [] for p in pairs}
    words = {p: U.basis(*p) for p in pairs}

    def weight_of(v):
        return max(U.weight(m) for m in v)

    def push(v):
        if not v or weight_of(v) > W:
            return False
        m = next(iter(v))
        p = (m.src, m.tgt)
        if spans[p].add(v):
            vecs[p].append(v)
            return True
        return False

    frontier = []
    for p, gl in gens.items():
        for g in gl:
            if push(g):
                frontier.append(g)
    rounds = 0
    while frontier and rounds < max_rounds:
        rounds += 1
        new = []
        for v in frontier:
            m0 = next(iter(v))
            wv = weight_of(v)
            cand = [U.m_vec(1, [v])]
            for z in U.objects:
                for u in words[(m0.tgt, z)]:
                    if U.weight(u) + wv <= W and u.label:
                        cand.append(U.m_vec(2, [{u: U.field.one}, v]))
                for u in words[(z, m0.src)]:
                    if U.weight(u) + wv <= W and u.label:
                        cand.append(U.m_vec(2, [v, {u: U.field.one}]))
            for c in cand:
                if push(c):
                    new.append(c)
        frontier = new
    stabilized = not frontier
    res = Strictification(a, U, units, W, spans, vecs, stabilized)
    res._rect = rectify(a, W)
    res.unit_checks = verify_strict_unitality(res)
    ok = stabilized and all(res.unit_checks.values())
    label = f"weight <= {W}" if stabilized else f"certified only below weight {W} (ideal not stable)"
    res.report = Report(ok, W, label, None if ok else {"kind": "strictify", "checks": res.unit_checks})
    return res


def verify_strict_unitality(s: Strictification) -> dict:
    """Re-check, in the quotient, the three unit axioms for nu_A and for 1_X."""
    a, U, W = s.source, s.U, s.weight_bound
    one = a.field.one
    out = {}
    nu = s._rect.nu
    # nu^1(id_X) = 1_X modulo the ideal
    ok = True
    for x, u in s.units.items():
        v = multilinear(nu.F, [u])
        add_into(v, {U.unit((x,)): -one})
        ok &= s.in_ideal((x,), (x,), v)
    out["nu1(id) = 1"] = ok
    # nu^n(..., id, ...) = 0 modulo the ideal
    ok = True
    for n in range(2, W + 1):
        for rest in a.chains(n - 1):
            for pos in range(n):
                obj = rest[pos - 1].src if pos > 0 else rest[0].tgt
                if pos < len(rest) and rest[pos].tgt != obj:
                    continue
                vecs = [{y: one} for y in rest]
                vecs.insert(pos, s.units[obj])
                v = multilinear(nu.F, vecs)
                if v:
                    m = next(iter(v))
                    ok &= s.in_ideal(m.src, m.tgt, v)
    out["nu^n(..id..) = 0"] = ok
    # 1_X is a strict unit of the quotient: m1(1) = 0 and m2(1, f) = f on all words
    ok = True
    for x in a.objects:
        one_x = U.unit((x,))
        ok &= not U.m(1, (one_x,))
        for m in U.all_basis():
            if m.tgt == x:
                ok &= U.m(2, (one_x, m)) == {m: one}
            if m.src == x:
                ok &= U.m(2, (m, one_x)) == {m: one}
    out["1 strict unit"] = ok
    # the ideal is a subcomplex
    ok = True
    for p, vl in s.ideal_vectors.items():
        for v in vl:
            dv = U.m_vec(1, [v])
            if dv and max(U.weight(m) for m in dv) <= W:
                ok &= s.in_ideal(*p, dv)
    out["ideal closed under m1"] = ok
    return out


def gr_comparison(s: Strictification) -> Report:
    """Compare gr U(A) with aug U^inf(red A), per (pair, degree, weight).

    F^n is spanned by words of weight <= n; gr_n = F^n / (F^{n-1} + I_n).  Its
    dimension and cohomology are compared with the weight-n part of the
    augmented cobar-of-bar of the reduction.  Valid when the reduced part of A
    has no higher operations, which is checked first.
    """
    a, U, W = s.source, s.U, s.weight_bound
    red_a = reduce(a if a.augmentation else _augment_by_units(a, s.units))
    if any(k >= 2 and t for k, t in red_a.mult.items()):
        return Report(False, 0, f"weight <= {W}", {"kind": "gr", "message": "reduced part has m_{>=2} != 0"})
    Ur = CobarCategory(bar(red_a, W), W, augmented=True)
    for x in a.objects:
        for y in a.objects:
            x1, y1 = (x,), (y,)
            for n in range(0, W + 1):
                ideal_n = [v for v in s.ideal_vectors[(x1, y1)] if max(U.weight(m) for m in v) <= n]
                lower = [{m: a.field.one} for m in U.basis(x1, y1, n - 1)] if n > 0 else []
                sub = ideal_n + lower
                keys: dict = {}
                for m in U.basis(x1, y1, n):
                    keys.setdefault(U.degree(m), []).append(m)
                subd = _by_degree(U, sub)
                dims_gr = {}
                for d, ks in keys.items():
                    k = len(ks) - sum(1 for _ in _indep(subd.get(d, []), a.field))
                    if k:
                        dims_gr[d] = k
                rd: dict = {}
                rx, ry = (x,), (y,)
                for m in Ur.basis(rx, ry, n):
                    if Ur.weight(m) == n:
                        rd[Ur.degree(m)] = rd.get(Ur.degree(m), 0) + 1
                if dims_gr != rd:
                    return Report(False, n, f"weight <= {W}",
                                  {"kind": "gr dims", "pair": (x, y), "weight": n,
                                   "gr": dims_gr, "aug U(red)": rd})
                h_gr = subquotient_cohomology(keys, lambda m: U.m(1, (m,)), subd, a.field)
                slice_keys: dict = {}
                for m in Ur.basis(rx, ry, n):
                    if Ur.weight(m) == n:
                        slice_keys.setdefault(Ur.degree(m), []).append(m)
                h_red = subquotient_cohomology(slice_keys, lambda m: {k: v for k, v in Ur.m(1, (m,)).items()
                                                                     if Ur.weight(k) == n}, {}, a.field)
                if h_gr != h_red:
                    return Report(False, n, f"weight <= {W}",
                                  {"kind": "gr cohomology", "pair": (x, y), "weight": n,
                                   "gr": h_gr, "aug U(red)": h_red})
    return Report(True, W, f"weight <= {W}")


def _augment_by_units(a, units):
    """Treat a strictly unital category as augmented by its detected units, when
    the units are basis elements."""
    aug = {}
    for x, u in units.items():
        if len(u) != 1 or next(iter(u.values())) != a.field.one:
            raise ValueError("gr comparison needs units that are basis elements")
        aug[x] = dict(u)
    return a.with_mult(a.mult, augmentation=aug)
