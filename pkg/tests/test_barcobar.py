import random

import pytest
from hypothesis import given, strategies as st

from ainfty import check_catrel, cohomology
from ainfty.barcobar import (InvalidMorphism, TwistingCochain,
                             adjunction_transpose, bar, bar_certified_length, bar_functor, check_bar_d2,
                             cobar, cobar_nu_bc_then_eta_is_identity, cofunctor_commutes, counit,
                             homotopy_rectify_functor, per_weight_cohomology, rectify, triangle_identity,
                             universal_twisting)
from ainfty.category import reduce
from ainfty.functor import check_funrel, compose, identity_functor
from ainfty.zoo import PT, RandomDgConfig, dual, dual2, interval, random_ainfty, random_complex, random_dg

CFG = RandomDgConfig(max_objects=2, max_layer1=2, max_layer2=1)


def perturb(rng, a):
    """Add 1 to a random degree-compatible m_2 or m_3 entry."""
    for _ in range(20):
        k = rng.choice([2, 3])
        chains = list(a.chains(k))
        if not chains:
            continue
        args = rng.choice(chains)
        deg = sum(a.degree(x) for x in args) + 2 - k
        outs = [y for y in a.basis(args[-1].src, args[0].tgt) if a.degree(y) == deg]
        if outs:
            mult = {j: {kk: dict(v) for kk, v in t.items()} for j, t in a.mult.items()}
            vec = mult.setdefault(k, {}).setdefault(args, {})
            y = rng.choice(outs)
            vec[y] = vec.get(y, 0) + 1
            return a.with_mult(mult)
    return None


@given(st.integers(0, 10_000))
def test_bar_d2_vanishes_exactly_when_the_relations_hold(seed):
    rng = random.Random(seed)
    a, _ = random_ainfty(rng, 3, CFG)
    B = bar(a, 3)
    assert bar_certified_length(B) == 3
    assert check_bar_d2(B).ok
    b = perturb(rng, a)
    if b is not None:
        assert check_bar_d2(bar(b, 3)).ok == check_catrel(b, 3).ok


def test_some_mutants_break_d2():
    broken = 0
    for seed in range(10):
        rng = random.Random(seed)
        b = perturb(rng, random_ainfty(rng, 3, CFG)[0])
        if b is not None and not check_catrel(b, 3).ok:
            assert not check_bar_d2(bar(b, 3)).ok
            broken += 1
    assert broken >= 3


def test_bar_of_zero_products_has_zero_differential():
    a = random_complex(random.Random(1)).with_mult({})
    B = bar(a, 3)
    assert all(not B.d(k) for k in B.all_basis(3))


@given(st.integers(0, 10_000))
def test_bar_functor_is_functorial(seed):
    _, g = random_ainfty(random.Random(seed), 3, CFG)
    W = 3
    Bg = bar_functor(g, W)
    assert cofunctor_commutes(Bg, W).ok
    Bid = bar_functor(identity_functor(g.source), W)
    assert all(Bid.apply(k) == {k: 1} for k in Bid.source.all_basis(W))
    h = identity_functor(g.target)
    lhs = bar_functor(compose(g, h), W)
    for k in Bg.source.all_basis(W):
        composed: dict = {}
        for k2, c in Bg.apply(k).items():
            for k3, d in bar_functor(h, W).apply(k2).items():
                composed[k3] = composed.get(k3, 0) + c * d
        assert lhs.apply(k) == {x: v for x, v in composed.items() if v}


@pytest.mark.parametrize("make", [dual, dual2, interval])
def test_cobar_of_bar_is_a_dg_category(make):
    U = cobar(bar(make(), 3), 3)
    assert check_catrel(U, 3).ok


def test_cobar_per_weight_cohomology_of_reduced_dual():
    U = rectify(reduce(dual()), 6).U
    dims = per_weight_cohomology(U, (PT,), (PT,), range(1, 7))
    assert dims[1] == {-1: 1}
    assert all(not dims[w] for w in range(2, 7))


@given(st.integers(0, 10_000))
def test_adjunction_round_trips(seed):
    rng = random.Random(seed)
    _, g = random_ainfty(rng, 3, CFG)
    W = 3
    G = bar_functor(g, W)
    tau = adjunction_transpose(G, "twisting", W)
    F = adjunction_transpose(tau, "cobar", W)
    G2 = adjunction_transpose(F, "cofunctor", W)
    assert G2.values == G.values
    assert adjunction_transpose(G2, "cobar", W).table == F.table
    tau2 = adjunction_transpose(adjunction_transpose(tau, "cofunctor", W), "twisting", W)
    assert tau2.values == tau.values


def test_invalid_cochain_is_rejected():
    tau = universal_twisting(interval(), 3)
    bad = TwistingCochain(tau.source, tau.target, tau.object_map,
                          {k: {y: 2 * c for y, c in v.items()} for k, v in tau.values.items()})
    assert tau.check(3).ok
    with pytest.raises(InvalidMorphism):
        adjunction_transpose(bad, "cobar", 3)


@given(st.integers(0, 10_000))
def test_triangle_identity_on_random_dg(seed):
    b = random_dg(random.Random(seed), CFG)
    assert triangle_identity(b, 4).ok


def test_nu_is_a_functor_and_eta_is_a_dg_functor():
    R = rectify(dual2(), 3)
    assert check_funrel(R.nu, 3).ok
    assert counit(dual2(), R.U).check().ok


def test_rectified_functor_and_cobar_counit():
    U = rectify(interval(), 3).U
    eta = counit(interval(), U)
    Fp = homotopy_rectify_functor(eta.as_functor())
    assert Fp.check().ok
    assert Fp.table == eta.table
    assert cobar_nu_bc_then_eta_is_identity(bar(interval(), 3), 3)


def test_nu_quasi_isomorphism_on_complexes_per_weight():
    for seed in range(3):
        a = random_complex(random.Random(seed))
        U = rectify(a, 4).U
        dims = per_weight_cohomology(U, (PT,), (PT,), range(1, 5))
        assert dims[1] == {d: n for d, n in cohomology(a).hom(PT, PT).dims().items() if n}
        assert all(not dims[w] for w in range(2, 5))
