"""Small example categories and random generators used by tests and scripts."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .category import EXACT, AInftyCategory, Mor
from .graded import GradedVectorSpace
from .linalg import SparseMatrix, kernel_basis
from .scalars import QQ, Field

PT = "*"


def _algebra(basis, products, field=QQ, name="", m1=None):
    """One-object dg algebra from a basis [(label, deg)] and products {(a, b): {c: v}}."""
    sp = GradedVectorSpace.of(basis)
    mor = lambda l: Mor(PT, PT, l)
    m2 = {(mor(a), mor(b)): {mor(c): field(v) for c, v in out.items()}
          for (a, b), out in products.items()}
    mult = {2: m2}
    if m1:
        mult[1] = {(mor(a),): {mor(c): field(v) for c, v in out.items()} for a, out in m1.items()}
    aug = {PT: {mor("1"): field.one}} if "1" in sp.labels else None
    return AInftyCategory([PT], {(PT, PT): sp}, mult, 2, EXACT, field, augmentation=aug, name=name)


def unital_products(labels, extra=None):
    prods = {("1", "1"): {"1": 1}}
    for l in labels:
        prods[("1", l)] = {l: 1}
        prods[(l, "1")] = {l: 1}
    prods.update(extra or {})
    return prods


def ground(field: Field = QQ) -> AInftyCategory:
    """K as a one-object category."""
    return _algebra([("1", 0)], unital_products([]), field, "K")


def dual2(field: Field = QQ) -> AInftyCategory:
    """K[e1, e2] with all products of generators zero, everything in degree 0."""
    return _algebra([("1", 0), ("e1", 0), ("e2", 0)], unital_products(["e1", "e2"]), field, "K[e1,e2]")


def dual(degree: int = -1, label: str = "e", field: Field = QQ) -> AInftyCategory:
    """K[e] with e^2 = 0 and e in the given degree."""
    name = f"K[{label}]"
    return _algebra([("1", 0), (label, degree)], unital_products([label]), field, name)


def dual0(field: Field = QQ) -> AInftyCategory:
    return dual(0, "e0", field)


def interval(field: Field = QQ) -> AInftyCategory:
    """Two objects 0 -> 1 with one arrow f of degree 0 (path algebra of A2)."""
    one = field.one
    homs = {(0, 0): GradedVectorSpace.of([("id", 0)]), (1, 1): GradedVectorSpace.of([("id", 0)]),
            (0, 1): GradedVectorSpace.of([("f", 0)])}
    i0, i1, f = Mor(0, 0, "id"), Mor(1, 1, "id"), Mor(0, 1, "f")
    m2 = {(i0, i0): {i0: one}, (i1, i1): {i1: one}, (i1, f): {f: one}, (f, i0): {f: one}}
    return AInftyCategory([0, 1], homs, {2: m2}, 2, EXACT, field, name="A2")


def cone(field: Field = QQ) -> AInftyCategory:
    """Two objects, hom(0, 1) the acyclic complex g -> h (deg -1 -> 0), strict identities."""
    one = field.one
    homs = {(0, 0): GradedVectorSpace.of([("id", 0)]), (1, 1): GradedVectorSpace.of([("id", 0)]),
            (0, 1): GradedVectorSpace.of([("g", -1), ("h", 0)])}
    i0, i1 = Mor(0, 0, "id"), Mor(1, 1, "id")
    g, h = Mor(0, 1, "g"), Mor(0, 1, "h")
    m2 = {(i0, i0): {i0: one}, (i1, i1): {i1: one}}
    for x in (g, h):
        m2[(i1, x)] = {x: one}
        m2[(x, i0)] = {x: one}
    return AInftyCategory([0, 1], homs, {1: {(g,): {h: one}}, 2: m2}, 2, EXACT, field, name="cone")


# -- random generators --------------------------------------------------------

@dataclass(frozen=True)
class RandomDgConfig:
    """Shape of random dg categories: layered homs with m2(L1, L1) in L2."""

    max_objects: int = 2
    max_layer1: int = 2
    max_layer2: int = 1
    degrees: tuple = (-1, 0, 1)
    coeffs: tuple = (-2, -1, 1, 2)
    unital: bool = False


def _random_differential(rng, labels_by_deg, coeffs, field):
    """Pair up basis elements in adjacent degrees: d(b) = c * b'. Squares to zero."""
    d = {}
    used = set()
    degs = sorted(labels_by_deg)
    for deg in degs:
        for b in labels_by_deg[deg]:
            if b in used or rng.random() < 0.4:
                continue
            targets = [c for c in labels_by_deg.get(deg + 1, []) if c not in used]
            if targets:
                c = rng.choice(targets)
                used.update({b, c})
                d[b] = {c: field(rng.choice(coeffs))}
    return d


def random_complex(rng: random.Random, dim: int = 3, degrees=(-1, 0, 1),
                   coeffs=(-2, -1, 1, 2), field: Field = QQ) -> AInftyCategory:
    """One-object category with only m1 (a complex): the m_{>=2} = 0 stratum."""
    basis = [(f"x{i}", rng.choice(degrees)) for i in range(dim)]
    by_deg: dict = {}
    for l, d in basis:
        by_deg.setdefault(d, []).append(Mor(PT, PT, l))
    m1 = _random_differential(rng, by_deg, coeffs, field)
    return AInftyCategory([PT], {(PT, PT): GradedVectorSpace.of(basis)},
                          {1: {(b,): v for b, v in m1.items()}}, 1, EXACT, field, name="complex")


def random_dg(rng: random.Random, cfg: RandomDgConfig = RandomDgConfig(),
              field: Field = QQ) -> AInftyCategory:
    """Random (non-unital unless cfg.unital) dg category with nilpotent composition.

    Each hom splits into layers L1, L2; m1 preserves layers, m2 sends L1 x L1
    to L2 and vanishes otherwise, so associativity is automatic and the
    Leibniz rule is a linear condition on m2 solved exactly.
    """
    objects = list(range(rng.randint(1, cfg.max_objects)))
    homs, layer = {}, {}
    for a in objects:
        for b in objects:
            basis = []
            for lay, top in ((1, cfg.max_layer1), (2, cfg.max_layer2)):
                for i in range(rng.randint(0, top)):
                    lab = f"{'uv'[lay - 1]}{i}"
                    basis.append((lab, rng.choice(cfg.degrees)))
                    layer[Mor(a, b, lab)] = lay
            if basis:
                homs[(a, b)] = GradedVectorSpace.of(basis)
    base = AInftyCategory(objects, homs, {}, 2, EXACT, field)
    by_deg: dict = {}
    for x in base.all_basis():
        by_deg.setdefault((x.src, x.tgt, layer[x], base.degree(x)), []).append(x)
    m1 = {}
    for (a, b, lay) in {(k[0], k[1], k[2]) for k in by_deg}:
        sub = {k[3]: v for k, v in by_deg.items() if k[:3] == (a, b, lay)}
        m1.update(_random_differential(rng, sub, cfg.coeffs, field))
    m1_table = {(x,): v for x, v in m1.items()}
    # unknown m2 entries: (f, g) in L1 x L1 composable -> degree-matching L2 basis elements
    unknowns = []
    for f in base.all_basis():
        for g in base.all_basis():
            if layer[f] != 1 or layer[g] != 1 or f.src != g.tgt:
                continue
            for y in base.basis(g.src, f.tgt):
                if layer[y] == 2 and base.degree(y) == base.degree(f) + base.degree(g):
                    unknowns.append((f, g, y))
    m2 = {}
    if unknowns:
        m2 = _random_leibniz_m2(rng, base, m1, unknowns, cfg.coeffs, field)
    cat = base.with_mult({1: m1_table, 2: m2}, name="random-dg")
    if cfg.unital:
        from .category import augment
        cat = augment(cat)
    return cat


def _random_leibniz_m2(rng, base, m1, unknowns, coeffs, field):
    """Random element of the solution space of the Leibniz rule for m2."""
    idx = {u: i for i, u in enumerate(unknowns)}
    rows: dict = {}

    def d(x):
        return m1.get(x, {})

    def deg(x):
        return base.degree(x)

    def m2_terms(f, g):
        return [(i, y) for (ff, gg, y), i in idx.items() if ff == f and gg == g]

    # equation: d m2(f,g) - m2(d f, g) - (-1)^{|f|} m2(f, d g) = 0 for all composable f, g
    for f in base.all_basis():
        for g in base.all_basis():
            if f.src != g.tgt:
                continue
            for i, y in m2_terms(f, g):
                for z, c in d(y).items():
                    rows.setdefault((f, g, z), {})
                    rows[(f, g, z)][i] = rows[(f, g, z)].get(i, 0) + c
            for f2, c in d(f).items():
                for i, y in m2_terms(f2, g):
                    rows.setdefault((f, g, y), {})
                    rows[(f, g, y)][i] = rows[(f, g, y)].get(i, 0) - c
            s = -1 if deg(f) % 2 else 1
            for g2, c in d(g).items():
                for i, y in m2_terms(f, g2):
                    rows.setdefault((f, g, y), {})
                    rows[(f, g, y)][i] = rows[(f, g, y)].get(i, 0) - s * c
    keys = sorted(rows, key=repr)
    mat = SparseMatrix.from_dict(len(keys), len(unknowns),
                                 {(r, c): v for r, k in enumerate(keys) for c, v in rows[k].items() if v},
                                 field)
    sol = [field.zero] * len(unknowns)
    for vec in kernel_basis(mat):
        c = field(rng.choice(coeffs + (0,)))
        sol = [s + c * v for s, v in zip(sol, vec)]
    m2: dict = {}
    for (f, g, y), v in zip(unknowns, sol):
        if v:
            m2.setdefault((f, g), {})[y] = v
    return m2


def random_gauge(rng: random.Random, a: AInftyCategory, max_arity: int = 3,
                 density: float = 0.5, coeffs=(-1, 1, 2)) -> dict:
    """Random nat-form components G~_k (2 <= k <= max_arity) of degree 0 on shifted words."""
    g = {}
    for k in range(2, max_arity + 1):
        for args in a.chains(k):
            want = sum(a.degree(x) - 1 for x in args) + 1
            vec = {y: a.field(rng.choice(coeffs)) for y in a.basis(args[-1].src, args[0].tgt)
                   if a.degree(y) == want and rng.random() < density}
            if vec:
                g[args] = vec
    return g


def random_ainfty(rng: random.Random, arity: int = 4, cfg: RandomDgConfig | None = None,
                  field: Field = QQ):
    """Random A-infinity category (truncated at ``arity``) obtained by gauge-transforming
    a random dg category; returns (category, isomorphism to the dg category)."""
    from .barcobar import gauge_transform
    cfg = cfg or RandomDgConfig(degrees=(-1, 0, 1))
    a = random_dg(rng, cfg, field)
    return gauge_transform(a, random_gauge(rng, a, min(arity, 3)), arity)
