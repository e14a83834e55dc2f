import random

from hypothesis import given, strategies as st

from ainfty import Mor, check_catrel
from ainfty.category import detect_strict_units
from ainfty.cocat import empty_word
from ainfty.fun import (FunCategory, Prenat, check_transport, homotopic, homotopy_target, identity_nat,
                        invertible_class, m1, m2, random_prenat, weakly_equivalent, whisker_left)
from ainfty.functor import check_funrel, compose, identity_functor, strict_functor
from ainfty.graded import add_into
from ainfty.zoo import PT, RandomDgConfig, cone, dual, interval, random_ainfty

CFG = RandomDgConfig(max_objects=2, max_layer1=2, max_layer2=1)


def _pair(seed):
    rng = random.Random(seed)
    _, g = random_ainfty(rng, 3, CFG)
    return rng, g


@given(st.integers(0, 10_000), st.sampled_from([-1, 0, 1]))
def test_differential_transport(seed, degree):
    rng, g = _pair(seed)
    theta = random_prenat(rng, g, g, degree, 3)
    assert check_transport(theta, 3).ok


@given(st.integers(0, 10_000))
def test_m1_squares_to_zero(seed):
    rng, g = _pair(seed)
    theta = random_prenat(rng, g, g, 0, 3)
    mm = m1(m1(theta))
    assert not any(mm(k) for k in theta.tensor.all_basis(3))


@given(st.integers(0, 10_000))
def test_m1_is_a_derivation_of_m2(seed):
    rng, g = _pair(seed)
    t2 = random_prenat(rng, g, g, rng.choice([-1, 0]), 2)
    t1 = random_prenat(rng, g, g, rng.choice([0, 1]), 2)
    lhs = m1(m2(t2, t1))
    a, b = m2(m1(t2), t1), m2(t2, m1(t1))
    s = -1 if t2.degree % 2 else 1
    for k in t1.tensor.all_basis(2):
        want = dict(a(k))
        add_into(want, b(k), s)
        assert lhs(k) == want


def test_fun_category_is_dg_and_unital():
    b = interval()
    f = identity_functor(b)
    fc = FunCategory([f, f], 2)
    assert check_catrel(fc, 3).ok
    units = detect_strict_units(b)
    idf = identity_nat(f, units.units)
    theta = random_prenat(random.Random(3), f, f, 0, 2)
    for k in theta.tensor.all_basis(2):
        assert m2(idf, theta)(k) == theta(k) == m2(theta, idf)(k)


@given(st.integers(0, 10_000))
def test_homotopy_target_is_a_homotopic_functor(seed):
    rng = random.Random(seed)
    a = cone()
    f1 = identity_functor(a)
    theta = random_prenat(rng, f1, f1, -1, 3)
    vals = {k: v for k, v in theta.restricted(3).items() if k[0].letters}
    f2 = homotopy_target(f1, vals, 3)
    assert check_funrel(f2, 3).ok
    assert homotopic(f1, f2, Prenat(f1, f2, -1, vals), 3)


def test_homotopic_functors_are_weakly_equivalent():
    a = cone()
    f1 = identity_functor(a)
    theta = random_prenat(random.Random(7), f1, f1, -1, 2)
    vals = {k: v for k, v in theta.restricted(2).items() if k[0].letters}
    f2 = homotopy_target(f1, vals, 2)
    ok, (u, v) = weakly_equivalent(f1, f2, 1)
    assert ok
    assert not any(m1(u)(k) for k in u.tensor.all_basis(1))


def test_theta_on_units_breaks_homotopy():
    a = dual()
    f = identity_functor(a)
    assert homotopic(f, f, Prenat(f, f, -1, {}), 2)
    bad = Prenat(f, f, -1, {(empty_word(PT),): {Mor(PT, PT, "e"): 1}})
    assert not homotopic(f, f, bad, 2)


def test_whiskering_an_identity_gives_an_identity():
    b = interval()
    f = identity_functor(b)
    units = detect_strict_units(b).units
    g = strict_functor(b, b, {x: x for x in b.objects}, {m: {m: 1} for m in b.all_basis()})
    w = whisker_left(g, identity_nat(f, units))
    fc = FunCategory([compose(f, g), compose(f, g)], 1)
    vec = fc.from_prenat(0, 1, w)
    assert not fc.m_vec(1, [vec])
    assert invertible_class(fc, 0, 1, vec) is not None


def test_zero_prenat_is_not_invertible():
    b = interval()
    f = identity_functor(b)
    fc = FunCategory([f, f], 1)
    assert invertible_class(fc, 0, 1, {}) is None
