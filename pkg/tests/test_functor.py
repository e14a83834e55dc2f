import random

import pytest
from hypothesis import given, strategies as st

from ainfty import AInftyCategory, Mor, check_catrel
from ainfty.category import EXACT
from ainfty.functor import (AInftyFunctor, HFunctor, Multifunctor, check_funrel, check_multirel, compose,
                            functor_to_multifunctor, functors_equal, funrel_value, funrel_value_bar,
                            identity_functor, is_cohomologically_unital_functor, is_quasi_equivalence,
                            is_quasi_isomorphism, is_strictly_unital_functor, restrict_multifunctor,
                            strict_functor)
from ainfty.graded import add_into, shift_sign
from ainfty.internal_hom import build_counterexample
from ainfty.zoo import PT, RandomDgConfig, cone, dual, dual2, ground, interval, random_ainfty, random_dg

CFG = RandomDgConfig(max_objects=2, max_layer1=2, max_layer2=1)


def random_components(rng, a, b, om, n_max, density=0.6):
    """Arbitrary components of the right degrees; no relation is imposed."""
    comps = {}
    for n in range(1, n_max + 1):
        table = {}
        for args in a.chains(n):
            want = sum(a.degree(x) for x in args) + 1 - n
            outs = [y for y in b.basis(om[args[-1].src], om[args[0].tgt]) if b.degree(y) == want]
            vec = {y: rng.choice((-2, -1, 1, 3)) for y in outs if rng.random() < density}
            if vec:
                table[args] = vec
        comps[n] = table
    return comps


def random_functor(rng, a, b, n_max=3):
    om = {x: rng.choice(b.objects) for x in a.objects}
    return AInftyFunctor(a, b, om, random_components(rng, a, b, om, n_max), n_max, EXACT)


def ainfty_pair(seed):
    rng = random.Random(seed)
    a, _ = random_ainfty(rng, 3, CFG)
    b, _ = random_ainfty(rng, 3, CFG)
    return rng, a, b


@given(st.integers(0, 10_000))
def test_direct_relation_is_bar_relation_up_to_shift_sign(seed):
    """Oracle: the classical relation equals -(shift sign) times the bar-side defect on every chain."""
    rng, a, b = ainfty_pair(seed)
    f = random_functor(rng, a, b)
    for n in range(1, 4):
        for args in a.chains(n):
            s = shift_sign([a.degree(x) - 1 for x in args])
            bar = {y: -s * c for y, c in funrel_value_bar(f, args).items()}
            assert funrel_value(f, args) == bar


@given(st.integers(0, 10_000))
def test_composition_routes_agree_on_arbitrary_components(seed):
    rng, a, b = ainfty_pair(seed)
    c = random_dg(rng, CFG)
    f, g = random_functor(rng, a, b), random_functor(rng, b, c)
    assert functors_equal(compose(f, g, "bar"), compose(f, g, "direct"), 3)


@given(st.integers(0, 10_000))
def test_composition_of_valid_functors_is_valid_and_associative(seed):
    _, g = random_ainfty(random.Random(seed), 3, CFG)
    # g relates a gauge transform to its dg original
    assert check_funrel(g, 3).ok
    f = identity_functor(g.source)
    h = identity_functor(g.target)
    gf = compose(f, g)
    assert check_funrel(gf, 3).ok
    assert functors_equal(compose(compose(f, g), h), compose(f, compose(g, h)), 3)
    assert functors_equal(gf, g, 3)


def test_gauge_functor_composed_with_a_strict_functor():
    for seed in range(8):
        _, g = random_ainfty(random.Random(seed), 3, CFG)
        t = g.target
        neg = strict_functor(t, t, {x: x for x in t.objects},
                             {x: {x: (-1) ** (t.degree(x) % 2)} for x in t.all_basis()})
        if check_funrel(neg, 3).ok:
            assert check_funrel(compose(g, neg), 3).ok


def test_counterexample_functors():
    b = build_counterexample()
    assert check_funrel(b.F1, 8).ok and check_funrel(b.F2, 8).ok
    assert is_strictly_unital_functor(b.F1) and is_strictly_unital_functor(b.F2)
    assert is_cohomologically_unital_functor(b.F2)


def _mutant(entries):
    b = build_counterexample()
    m = lambda l: Mor(PT, PT, l)
    return AInftyFunctor(b.A, b.A_prime, {PT: PT},
                         {1: {(m("1"),): {m("1"): 1}}, 2: {(m(x), m(y)): {m("e"): c} for x, y, c in entries}},
                         2, EXACT)


def test_flipped_mutant_passes_and_unit_mutant_fails():
    # F^2 supported on e_i (x) e_j is unconstrained since all those products vanish
    assert check_funrel(_mutant([("e2", "e1", -1)]), 5).ok
    rep = check_funrel(_mutant([("1", "e2", 1)]), 5)
    assert not rep.ok and rep.failure["n"] == 3


def test_h_of_f1_kills_epsilon_classes():
    b = build_counterexample()
    hf = HFunctor(b.F1)
    hom = hf.hs.hom(PT, PT)
    for i, rep in enumerate(hom.reps):
        if Mor(PT, PT, "1") not in rep:
            assert not hf.apply(PT, PT, {i: 1})


@given(st.integers(0, 10_000))
def test_h_is_functorial_and_respects_homotopic_perturbation(seed):
    rng = random.Random(seed)
    b, g = random_ainfty(rng, 3, CFG)
    f = identity_functor(g.source)
    hg, hf, hgf = HFunctor(g), HFunctor(f), HFunctor(compose(f, g))
    for (x, y) in hf.hs.homs:
        assert hgf.matrix(x, y) == hg.matrix(x, y)
    # add m1 h + h m1 to the linear part of a strict functor: same H(F)
    a = g.source
    h = {}
    for x in a.all_basis():
        outs = [y for y in a.basis(x.src, x.tgt) if a.degree(y) == a.degree(x) - 1]
        if outs and rng.random() < 0.5:
            h[x] = {rng.choice(outs): 1}
    one = a.field.one
    lin = {}
    for x in a.all_basis():
        v = {x: one}
        for y, c in h.get(x, {}).items():
            add_into(v, a.m(1, (y,)), c)
        for y, c in a.m(1, (x,)).items():
            add_into(v, h.get(y, {}), c)
        lin[x] = v
    pert = strict_functor(a, a, {o: o for o in a.objects}, lin)
    hp, hi = HFunctor(pert), HFunctor(identity_functor(a))
    for pair in hi.hs.homs:
        assert hp.matrix(*pair) == hi.matrix(*pair)


def _iso_pair():
    homs = {(0, 0): [("i0", 0)], (1, 1): [("i1", 0)], (0, 1): [("f", 0)], (1, 0): [("g", 0)]}
    m = Mor
    i0, i1, f, g = m(0, 0, "i0"), m(1, 1, "i1"), m(0, 1, "f"), m(1, 0, "g")
    table = {(i0, i0): {i0: 1}, (i1, i1): {i1: 1}, (f, i0): {f: 1}, (i1, f): {f: 1}, (g, i1): {g: 1},
             (i0, g): {g: 1}, (g, f): {i0: 1}, (f, g): {i1: 1}}
    return AInftyCategory([0, 1], homs, {2: table}, 2, name="iso")


def test_quasi_equivalence_without_quasi_isomorphism():
    k, iso = ground(), _iso_pair()
    assert check_catrel(iso, 4).ok
    inc = strict_functor(k, iso, {PT: 0}, {Mor(PT, PT, "1"): {Mor(0, 0, "i0"): 1}})
    assert check_funrel(inc, 3).ok
    assert not is_quasi_isomorphism(inc)
    assert is_quasi_equivalence(inc)
    assert is_quasi_isomorphism(identity_functor(iso)) and is_quasi_equivalence(identity_functor(iso))


def test_functor_to_zero_category_is_not_a_quasi_equivalence():
    z = AInftyCategory([PT], {}, {}, 2, name="0")
    f = AInftyFunctor(ground(), z, {PT: PT}, {}, 1)
    assert not is_quasi_isomorphism(f)
    assert not is_quasi_equivalence(f)


@pytest.mark.parametrize("make", [dual2, dual, interval, cone])
def test_strict_unitality_implies_cohomological(make):
    f = identity_functor(make())
    assert is_strictly_unital_functor(f)
    assert is_cohomologically_unital_functor(f)


def test_functor_as_multifunctor_restricts_back():
    b = build_counterexample()
    M = functor_to_multifunctor(b.F2)
    M.weight_bound = 4
    assert check_multirel(M.tabulate(4), 4).ok
    r = restrict_multifunctor(M, 0, [None])
    assert functors_equal(r, b.F2, 4)
