import pytest

from ainfty import Mor
from ainfty.category import detect_strict_units
from ainfty.functor import (check_multirel, functors_equal, identity_functor, is_cohomologically_unital_functor,
                            is_strictly_unital_functor, strict_functor)
from ainfty.internal_hom import (PreconditionError, build_counterexample, build_tensor_unit,
                                 equalizer_obstruction, p_after_n, psi_roundtrip, rectify_multifunctor,
                                 restriction_matches, solve_bifunctor_N, surjective_cover)
from ainfty.zoo import PT, cone, dual, dual2, ground, interval

PAIRS = [(ground, ground), (interval, ground), (interval, cone)]


def test_counterexample_bundle():
    b = build_counterexample()
    assert all(b.checks(6).values())


def test_obstruction_for_surjective_covers():
    b = build_counterexample()
    for g in (surjective_cover(), identity_functor(b.A)):
        rep = equalizer_obstruction(g, b)
        assert rep.ok and rep.failure["kind"] == "obstruction"


def test_obstruction_requires_surjectivity():
    b = build_counterexample()
    with pytest.raises(PreconditionError):
        equalizer_obstruction(b.J1, b)


@pytest.mark.parametrize("m1,m2", PAIRS)
def test_tensor_unit(m1, m2):
    d = build_tensor_unit(m1(), m2())
    assert all(d.checks.values()), d.checks
    assert detect_strict_units(d.R) is not None


def test_inclusion_is_not_unital():
    # H(R) has unit e while the unit of A1 (x) A2 maps to id (x) id
    d = build_tensor_unit(ground(), ground())
    assert not is_strictly_unital_functor(d.I)
    assert not is_cohomologically_unital_functor(d.I)
    assert is_strictly_unital_functor(d.P)


@pytest.mark.parametrize("m1,m2", PAIRS)
def test_bifunctor_n(m1, m2):
    d = build_tensor_unit(m1(), m2())
    N = solve_bifunctor_N(d, 3)
    assert check_multirel(N, 3).ok
    PN = p_after_n(d, N)
    assert restriction_matches(d, PN, 0, 3) and restriction_matches(d, PN, 1, 3)


def test_n_is_deterministic():
    d = build_tensor_unit(interval(), cone())
    a, b = solve_bifunctor_N(d, 3), solve_bifunctor_N(d, 3)
    keys = a.tensor.all_basis(3)
    assert all(a(k) == b(k) for k in keys)


def test_rectified_multifunctor():
    d = build_tensor_unit(interval(), ground())
    r = rectify_multifunctor(solve_bifunctor_N(d, 3), 3)
    assert all(r.checks.values())


@pytest.mark.parametrize("m1,m2", PAIRS[:2])
def test_psi_roundtrip(m1, m2):
    d = build_tensor_unit(m1(), m2())
    N = solve_bifunctor_N(d, 3)
    rep = psi_roundtrip(d, identity_functor(d.tensor), N)
    assert rep.ok, rep.checks


def test_psi_detects_a_functor_that_kills_the_unit():
    d = build_tensor_unit(ground(), ground())
    N = solve_bifunctor_N(d, 2)
    zero = strict_functor(d.tensor, d.tensor, {x: x for x in d.tensor.objects}, {})
    rep = psi_roundtrip(d, zero, N)
    assert rep.checks["f = f o P o I"]
    assert not rep.checks["H(F') preserves unit classes"]
